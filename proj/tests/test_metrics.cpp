#include "markov_ml/bench.hpp"
#include "markov_ml/error.hpp"
#include "markov_ml/metrics.hpp"
#include "markov_ml/problems.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace markov_ml;
using namespace markov_ml::testing;

namespace {

Vector geometric(double ratio, std::size_t len, double start = 1.0) {
    Vector t{start};
    for (std::size_t k = 1; k < len; ++k)
        t.push_back(t.back() * ratio);
    return t;
}

std::size_t argmin_error(const std::vector<SmoothingPoint> &pts, std::size_t skip_top) {
    std::size_t best = skip_top;
    for (std::size_t i = skip_top; i < pts.size(); ++i)
        if (pts[i].error < pts[best].error)
            best = i;
    return best;
}

} // namespace

TEST_CASE("convergence stats") {
    SUBCASE("geometric 0.1") {
        const auto s = convergence_stats(geometric(0.1, 15));
        REQUIRE(s.it);
        CHECK(*s.it == 10);
        CHECK(s.gamma == doctest::Approx(0.1).epsilon(1e-12));
        CHECK_FALSE(s.diverged);
    }
    SUBCASE("0.999 over 50 cycles never reaches the target") {
        const auto s = convergence_stats(geometric(0.999, 51));
        CHECK_FALSE(s.it);
        CHECK(it_label(s.it, 50) == ">50");
        CHECK(s.gamma == doctest::Approx(0.999).epsilon(1e-12));
    }
    SUBCASE("one large drop then steady reduction") {
        Vector t{1.0, 1.5e-3};
        for (int k = 0; k < 6; ++k)
            t.push_back(t.back() * 0.05);
        const auto s = convergence_stats(t);
        REQUIRE(s.it);
        // 1.5e-3 * 0.05^k <= 1e-10 first at k = 6
        CHECK(*s.it == 7);
        CHECK(s.gamma == doctest::Approx(0.05).epsilon(1e-12));
        CHECK(it_label(s.it, 50) == "7");
    }
    SUBCASE("gamma uses the last min(3, it - 1) ratios") {
        const Vector t{1.0, 0.5, 0.1, 1e-3, 1e-4, 1e-11};
        const auto s = convergence_stats(t);
        REQUIRE(s.it);
        CHECK(*s.it == 5);
        CHECK(s.gamma == doctest::Approx(std::cbrt(0.01 * 0.1 * 1e-7)).epsilon(1e-12));
        const auto one = convergence_stats(Vector{1.0, 1e-12});
        CHECK(*one.it == 1);
        CHECK(one.gamma == doctest::Approx(1e-12));
        const auto two = convergence_stats(Vector{1.0, 1e-3, 1e-11});
        CHECK(*two.it == 2);
        CHECK(two.gamma == doctest::Approx(1e-8));
    }
    SUBCASE("scale invariant") {
        const Vector t{1.0, 0.3, 0.2, 0.05, 1e-4, 1e-9, 1e-11};
        const auto a = convergence_stats(t);
        for (double c : {1e-7, 3.0, 1e5}) {
            Vector u = t;
            for (auto &v : u)
                v *= c;
            const auto b = convergence_stats(u);
            CHECK(b.it == a.it);
            CHECK(b.gamma == doctest::Approx(a.gamma).epsilon(1e-12));
        }
    }
    SUBCASE("divergence flag") {
        CHECK(convergence_stats(geometric(1.1, 6)).diverged);
        CHECK_FALSE(convergence_stats(Vector{1.0, 2.0, 1.5}).diverged);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(convergence_stats(Vector{1.0}), InputError);
        CHECK_THROWS_AS(convergence_stats(Vector{0.0, 1.0}), InputError);
    }
}

TEST_CASE("gamma_eff and operator complexity") {
    CHECK(gamma_eff(4, 1.99) == doctest::Approx(0.05537).epsilon(1e-3));
    CHECK(gamma_eff(1, 1.0) == doctest::Approx(1e-10).epsilon(1e-12));
    CHECK(gamma_eff(3, 2.0) == doctest::Approx(std::pow(10.0, -10.0 / 6.0)).epsilon(1e-12));
    CHECK(gamma_eff(3, 2.0) == doctest::Approx(0.0215).epsilon(1e-2));
    for (std::size_t it = 1; it < 20; ++it)
        for (double c : {1.0, 1.3, 2.0, 3.5}) {
            CHECK(gamma_eff(it + 1, c) > gamma_eff(it, c));
            CHECK(gamma_eff(it, c + 0.1) > gamma_eff(it, c));
        }
    CHECK_THROWS_AS(gamma_eff(0, 1.0), InputError);

    const std::vector<Offset> one{100}, two{100, 50};
    CHECK(operator_complexity(one) == 1.0);
    CHECK(operator_complexity(two) == 1.5);
    CHECK_THROWS_AS(operator_complexity(std::vector<Offset>{}), InputError);
}

TEST_CASE("run report") {
    const auto &t = table_preset("table-uniform-chain");
    const auto spec = preset_problem(t, 1024);
    const auto cfg = preset_config(t, Method::DSSM, 1024);
    const RunReport r = run_experiment(spec, cfg);
    CHECK(r.converged);
    REQUIRE(r.it);
    CHECK(*r.it <= 8);
    CHECK(r.lev == 7);
    CHECK(r.c_op >= 1.9);
    CHECK(r.c_op <= 2.1);
    REQUIRE(r.gamma_eff);
    CHECK(std::abs(*r.gamma_eff - std::pow(std::pow(1e-10, 1.0 / static_cast<double>(*r.it)), 1.0 / r.c_op)) <=
          1e-12);
    CHECK(r.gamma > 0.0);
    CHECK(r.gamma <= 1.0);
    CHECK(r.d_used == 0.5);
    CHECK(r.spmv_count > 0);

    SUBCASE("JSON round trip") {
        const nlohmann::json j = r;
        const RunReport back = nlohmann::json::parse(j.dump()).get<RunReport>();
        CHECK(back == r);
        CHECK(j.at("it_label") == std::to_string(*r.it));
        RunReport failed = r;
        failed.it.reset();
        failed.gamma_eff.reset();
        failed.converged = false;
        const nlohmann::json jf = failed;
        CHECK(jf.at("it").is_null());
        CHECK(jf.at("it_label") == ">50");
        CHECK(nlohmann::json::parse(jf.dump()).get<RunReport>() == failed);
    }
    SUBCASE("problem spec JSON keeps every field") {
        ProblemSpec p = *problem_from_name("four-well");
        p.n = 512;
        p.seed = 77;
        p.mc_samples = 123;
        p.time_step = 3e-4;
        const nlohmann::json j = p;
        const ProblemSpec q = nlohmann::json::parse(j.dump()).get<ProblemSpec>();
        CHECK(q.kind == p.kind);
        CHECK(q.wells == 4);
        CHECK(q.seed == 77);
        CHECK(q.mc_samples == 123);
        CHECK(q.time_step == 3e-4);
        nlohmann::json bad = j;
        bad["name"] = "torus";
        CHECK_THROWS_AS(bad.get<ProblemSpec>(), ParseError);
    }
    SUBCASE("CSV row") {
        const std::string row = csv_row(r, false);
        std::vector<std::string> cells;
        std::stringstream ss(row);
        for (std::string c; std::getline(ss, c, ',');)
            cells.push_back(c);
        REQUIRE(cells.size() == 11);
        CHECK(std::string(kCsvHeader) == "problem,n,method,gamma_eff,gamma,it,c_op,lev,d,wall_ms,spmv");
        CHECK(cells[0] == "uniform-chain");
        CHECK(cells[1] == "1024");
        CHECK(cells[2] == "dssm");
        CHECK(cells[5] == std::to_string(*r.it));
        CHECK(cells[7] == "7");
        CHECK(cells[8] == "0.50");
        CHECK(cells[9] == "0.0");
        CHECK(csv_row(r, false) == csv_row(run_experiment(spec, cfg), false));
    }
}

TEST_CASE("table presets") {
    CHECK(table_presets().size() == 7);
    CHECK_THROWS_AS(table_preset("table-9"), InputError);
    const auto &two = table_preset("table-two-well");
    CHECK(two.sizes.front() == 512);
    CHECK(two.stretch.policy == StretchPolicy::MeanDiag);
    const auto c2 = preset_config(two, Method::DAM, 512);
    CHECK(c2.pre_steps == 3);
    CHECK(c2.agg_cfg.target_size == 2);
    const auto four = preset_config(table_preset("table-four-well"), Method::DSSM, 512);
    CHECK(four.pre_steps == 9);
    CHECK(four.agg_cfg.target_size == 3);
    const auto &del = table_preset("table-delaunay");
    CHECK(preset_config(del, Method::DSSM, 1024).pre_steps == 300);
    CHECK(preset_config(del, Method::DAM, 1024).pre_steps == 100);
    CHECK(preset_config(del, Method::DSSM, 1024).agg_cfg.theta == 0.25);
    CHECK(preset_config(del, Method::DSSM, 262144).agg_cfg.theta == 0.1);
    const auto lat = preset_problem(table_preset("table-lattice"), 32768);
    CHECK(lat.rows * lat.cols == 32768);
    CHECK(preset_config(table_preset("table-lattice"), Method::DSSM, 1024).agg_cfg.target_size == 4);
    const auto cx = preset_config(table_preset("table-complex-chain"), Method::DSSM, 1024);
    CHECK(cx.agg_cfg.target_size == 3);
    CHECK(choose_stretch_d(gen_complex_chain(64), cx.stretch) <= 0.49);
    CHECK_THROWS_AS(preset_config(two, Method::AM, 512), InputError);
}

TEST_CASE("smoothing diagnostic") {
    SUBCASE("start at the fixed point") {
        const auto pts = smoothing_diagnostic(gen_uniform_chain(32), SmootherKind::Power);
        CHECK(pts.size() == 32);
        CHECK(pts.front().lambda == doctest::Approx(1.0));
        CHECK(pts.front().error <= 1e-12);
    }
    // Near the best-damped lambda five steps push the error below round-off,
    // so neighbouring modes tie; locate the argmin up to 0.05 in lambda.
    SUBCASE("power: smallest |lambda| damped most") {
        for (const auto &b : {gen_uniform_chain(64), gen_path_walk(64), gen_path_walk(256)}) {
            const auto pts = smoothing_diagnostic(b, SmootherKind::Power);
            double smallest = 1.0;
            for (std::size_t i = 1; i < pts.size(); ++i)
                smallest = std::min(smallest, std::abs(pts[i].lambda));
            CHECK(std::abs(pts[argmin_error(pts, 1)].lambda) - smallest <= 0.05);
            CHECK(pts[1].error > 1e3 * pts[argmin_error(pts, 1)].error);
        }
    }
    SUBCASE("jacobi: most negative lambda damped most") {
        for (const auto &b : {gen_uniform_chain(64), gen_path_walk(64), gen_path_walk(256)}) {
            const auto pts = smoothing_diagnostic(b, SmootherKind::Jacobi, 0.5);
            CHECK(pts[argmin_error(pts, 1)].lambda - pts.back().lambda <= 0.05);
            CHECK(pts[1].error > 1e3 * pts[argmin_error(pts, 1)].error);
        }
    }
    SUBCASE("errors follow |lambda|^5 for power steps") {
        const auto b = gen_uniform_chain(16);
        const auto pts = smoothing_diagnostic(b, SmootherKind::Power);
        for (std::size_t i = 1; i < pts.size(); ++i)
            CHECK(pts[i].error == doctest::Approx(0.01 * std::pow(std::abs(pts[i].lambda), 5)).epsilon(0.02));
    }
    SUBCASE("csv") {
        std::ostringstream os;
        write_smoothing_csv({{1.0, 0.0}, {0.5, 0.25}}, "power", os);
        CHECK(os.str() == "smoother,lambda,error\npower,1,0\npower,0.5,0.25\n");
    }
    CHECK_THROWS_AS(smoothing_diagnostic(gen_uniform_chain(8), SmootherKind::Chebyshev), InputError);
}
