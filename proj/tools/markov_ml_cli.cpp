// markov-ml: generate test chains, run the multilevel eigensolvers, reproduce
// the benchmark tables and dump dense spectra.

#include "markov_ml/bench.hpp"
#include "markov_ml/dense_oracle.hpp"
#include "markov_ml/error.hpp"
#include "markov_ml/matrix_market.hpp"
#include "markov_ml/metrics.hpp"
#include "markov_ml/multilevel.hpp"
#include "markov_ml/problems.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

using namespace markov_ml;
using nlohmann::json;

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct ProblemOpts {
    std::string name;
    std::string matrix;
    Index n = 1024;
    double epsilon = 0.001;
    Index rows = 0;
    Index cols = 0;
    std::uint64_t seed = 1;
    std::int64_t mc_samples = 10000;
};

void add_problem_options(CLI::App *app, ProblemOpts &p) {
    app->add_option("--n", p.n, "Number of states")->check(CLI::PositiveNumber);
    app->add_option("--epsilon", p.epsilon, "Weak-link weight");
    app->add_option("--rows", p.rows, "Lattice rows");
    app->add_option("--cols", p.cols, "Lattice columns");
    app->add_option("--seed", p.seed, "Generator seed (Delaunay points, Monte Carlo)");
    app->add_option("--mc-samples", p.mc_samples, "Langevin samples per box (multi-well)");
}

ProblemSpec to_spec(const ProblemOpts &p) {
    auto spec = problem_from_name(p.name);
    if (!spec)
        throw InputError("cli: unknown problem '" + p.name +
                         "' (uniform-chain, weak-link, lattice2d, delaunay, double-well, four-well, complex-chain)");
    spec->n = p.n;
    spec->epsilon = p.epsilon;
    spec->seed = p.seed;
    spec->mc_samples = p.mc_samples;
    if (spec->kind == ProblemKind::Lattice2D) {
        if ((p.rows > 0) != (p.cols > 0))
            throw InputError("cli: give both --rows and --cols");
        if (p.rows > 0) {
            spec->rows = p.rows;
            spec->cols = p.cols;
            spec->n = p.rows * p.cols;
        } else {
            const auto [r, c] = lattice_shape_for(p.n);
            spec->rows = r;
            spec->cols = c;
        }
    }
    return *spec;
}

/// Matrix from --matrix or from the generator; the spec describes either.
std::pair<SparseMatrix, ProblemSpec> load_problem(const ProblemOpts &p) {
    if (!p.matrix.empty()) {
        if (!p.name.empty())
            throw InputError("cli: give either --problem or --matrix, not both");
        SparseMatrix b = read_matrix_market(std::filesystem::path(p.matrix));
        ProblemSpec spec;
        spec.n = b.rows();
        return {std::move(b), spec};
    }
    if (p.name.empty())
        throw InputError("cli: --problem or --matrix is required");
    ProblemSpec spec = to_spec(p);
    return {generate(spec), spec};
}

/// Row-level parallelism: MARKOV_ML_THREADS caps the hardware concurrency.
unsigned thread_cap() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("MARKOV_ML_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw InputError(std::string("cli: MARKOV_ML_THREADS must be a positive integer, got '") + env + "'");
        n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

/// Expands "--config FILE" (plain key=value lines, '#' comments) into
/// "--key value" arguments placed before the command line ones, so explicit
/// flags override the file.
std::vector<std::string> expand_config(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] != "--config" && args[i].rfind("--config=", 0) != 0)
            continue;
        std::string path;
        std::size_t drop = 1;
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw InputError("cli: --config needs a file");
            path = args[i + 1];
            drop = 2;
        } else {
            path = args[i].substr(9);
        }
        std::ifstream in(path);
        if (!in)
            throw InputError("cli: cannot open config file " + path);
        std::vector<std::string> extra;
        for (const auto &item : CLI::ConfigINI().from_config(in)) {
            if (!item.parents.empty())
                throw InputError("cli: config sections are not supported (" + item.fullname() + ")");
            extra.push_back("--" + item.name);
            for (const auto &v : item.inputs)
                if (v != "true" || item.inputs.size() != 1)
                    extra.push_back(v);
        }
        args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i + drop));
        // right after the subcommand name
        args.insert(args.begin() + 1, extra.begin(), extra.end());
        break;
    }
    return args;
}

std::string preset_alias(const std::string &name) {
    static const std::map<std::string, std::string> alias{
        {"table1", "table-uniform-chain"}, {"table2", "table-weak-link"}, {"table3", "table-lattice"},
        {"table4", "table-delaunay"},      {"table5", "table-two-well"},  {"table6", "table-four-well"},
        {"table7", "table-complex-chain"}};
    const auto it = alias.find(name);
    return it == alias.end() ? name : it->second;
}

SmootherKind smoother_from_name(const std::string &s) {
    if (s == "chebyshev")
        return SmootherKind::Chebyshev;
    if (s == "power")
        return SmootherKind::Power;
    if (s == "jacobi")
        return SmootherKind::Jacobi;
    if (s == "deflated-power")
        return SmootherKind::DeflatedPower;
    if (s == "deflated-jacobi")
        return SmootherKind::DeflatedJacobi;
    throw InputError("cli: unknown smoother '" + s + "'");
}

// generate ------------------------------------------------------------------

int cmd_generate(const ProblemOpts &p, std::string out) {
    const ProblemSpec spec = to_spec(p);
    const SparseMatrix b = generate(spec);
    if (out.empty())
        out = p.name + "-" + std::to_string(spec.n) + ".mtx";
    write_matrix_market(b, std::filesystem::path(out));
    const json side{{"problem", spec}, {"n", b.rows()}, {"nnz", b.nnz()}, {"matrix", out}};
    std::ofstream(out + ".json") << side.dump(2) << '\n';
    std::cout << out << ": " << b.rows() << " x " << b.cols() << ", " << b.nnz() << " nonzeros\n";
    return kExitConverged;
}

// solve ---------------------------------------------------------------------

struct SolveOpts {
    std::string method = "dssm";
    std::string preset;
    std::size_t pre = 100;
    std::size_t post = 100;
    std::size_t steps = 200;
    std::string smoother = "chebyshev";
    double omega = 0.7;
    std::vector<double> cheb_roots;
    Index agg_size = 2;
    double theta = 0.1;
    std::string d_policy = "fixed";
    double d = 0.5;
    double shift_safety = 0.5;
    double tol = 1e-10;
    std::size_t max_cycles = 50;
    std::string initial = "ramp";
    bool no_v1_first_cycle = false;
    bool no_slow_check = false;
    bool no_timing = false;
    std::string csv;
    std::string json_out;
};

int cmd_solve(const ProblemOpts &p, const SolveOpts &o, const CLI::App &sub) {
    auto given = [&](const char *flag) { return sub.get_option(flag)->count() > 0; };
    const Method method = method_from_name(o.method);
    auto [b, spec] = load_problem(p);

    CycleConfig cfg;
    if (!o.preset.empty()) {
        const TablePreset &t = table_preset(preset_alias(o.preset));
        const Method m = method == Method::DAM ? Method::DAM : Method::DSSM;
        cfg = preset_config(t, m, b.rows());
    }
    cfg.method = method;
    if (given("--pre") || o.preset.empty())
        cfg.pre_steps = o.pre;
    if (given("--post") || o.preset.empty())
        cfg.post_steps = o.post;
    cfg.smoother.kind = smoother_from_name(o.smoother);
    cfg.smoother.omega = o.omega;
    if (!o.cheb_roots.empty())
        cfg.smoother.cheb_roots = o.cheb_roots;
    if (given("--agg-size") || o.preset.empty())
        cfg.agg_cfg.target_size = o.agg_size;
    if (given("--theta") || o.preset.empty())
        cfg.agg_cfg.theta = o.theta;
    if (given("--d-policy") || given("--d") || o.preset.empty())
        cfg.stretch = {stretch_policy_from_name(o.d_policy), o.d};
    cfg.shift_safety = o.shift_safety;
    cfg.residual_tol = o.tol;
    if (given("--max-cycles") || o.preset.empty())
        cfg.max_cycles = o.max_cycles;
    cfg.initial = o.initial == "random" ? InitialGuess::Random : InitialGuess::Ramp;
    if (o.initial != "random" && o.initial != "ramp")
        throw InputError("cli: --initial must be ramp or random");
    cfg.seed = p.seed;
    cfg.first_cycle_uses_v1 = !o.no_v1_first_cycle;
    cfg.detect_slow_process = !o.no_slow_check;
    if (method == Method::RelaxOnly) {
        // --steps single relaxation steps
        cfg.pre_steps = o.steps;
        cfg.post_steps = 0;
    }
    cfg.validate();

    RunReport r = run_experiment(b, spec, cfg);
    if (o.no_timing)
        r.wall_ms = 0.0;
    json j = r;
    if (method == Method::RelaxOnly && r.residual_trace.size() >= 2)
        j["reduction_factor"] = r.residual_trace.back() / r.residual_trace.front();
    std::cout << j.dump(2) << '\n';
    if (!o.json_out.empty())
        std::ofstream(o.json_out) << j.dump(2) << '\n';
    if (!o.csv.empty()) {
        const bool fresh = !std::filesystem::exists(o.csv) || std::filesystem::file_size(o.csv) == 0;
        std::ofstream out(o.csv, std::ios::app);
        if (!out)
            throw InputError("cli: cannot open " + o.csv);
        if (fresh)
            out << kCsvHeader << '\n';
        out << csv_row(r, !o.no_timing) << '\n';
    }
    return r.converged ? kExitConverged : kExitNotConverged;
}

// reproduce -----------------------------------------------------------------

struct ReproduceOpts {
    std::string table;
    Index max_n = 16384;
    Index n = 256;
    std::string out;
    bool no_timing = false;
};

int cmd_smoothing_figure(const ReproduceOpts &o) {
    // plain walk on the path: spectrum fills [-1, 1]
    const SparseMatrix b = gen_path_walk(o.n);
    std::ostringstream os;
    write_smoothing_csv(smoothing_diagnostic(b, SmootherKind::Jacobi, 0.5), "jacobi", os, true);
    write_smoothing_csv(smoothing_diagnostic(b, SmootherKind::Power), "power", os, false);
    if (o.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream(o.out) << os.str();
        const json side{{"table", "smoothing-figure"}, {"problem", "path-walk"}, {"n", o.n},
                        {"steps", 5},                  {"perturbation", 0.01}, {"jacobi_omega", 0.5}};
        std::ofstream(o.out + ".json") << side.dump(2) << '\n';
    }
    return kExitConverged;
}

json preset_json(const TablePreset &t) {
    return json{{"id", t.id},
                {"problem", t.problem},
                {"sizes", t.sizes},
                {"agg_size", t.agg_size},
                {"theta", t.theta},
                {"theta_large", t.theta_large},
                {"large_n", t.large_n},
                {"steps_dssm", t.steps_dssm},
                {"steps_dam", t.steps_dam},
                {"stretch_policy", stretch_policy_name(t.stretch.policy)},
                {"stretch_value", t.stretch.value},
                {"max_cycles", t.max_cycles}};
}

int cmd_reproduce(const ReproduceOpts &o) {
    if (o.table == "smoothing-figure")
        return cmd_smoothing_figure(o);
    const TablePreset &t = table_preset(preset_alias(o.table));
    struct Job {
        Index n;
        Method method;
        std::string row;
        json report;
    };
    std::vector<Job> jobs;
    for (Index n : t.sizes)
        if (n <= o.max_n)
            for (Method m : {Method::DSSM, Method::DAM})
                jobs.push_back({n, m, {}, {}});

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            Job &job = jobs[k];
            const ProblemSpec spec = preset_problem(t, job.n);
            try {
                RunReport r = run_experiment(spec, preset_config(t, job.method, job.n));
                if (o.no_timing)
                    r.wall_ms = 0.0;
                job.row = csv_row(r, !o.no_timing);
                job.report = r;
            } catch (const Error &e) {
                job.row = problem_name(spec) + ',' + std::to_string(job.n) + ',' + method_name(job.method) +
                          ",,,error,,,,,";
                job.report = json{{"n", job.n}, {"method", method_name(job.method)}, {"error", e.what()}};
                std::lock_guard lock(log_mutex);
                std::cerr << "reproduce: " << t.id << " n=" << job.n << ' ' << method_name(job.method) << ": "
                          << e.what() << '\n';
            }
        }
    };
    const unsigned threads = std::min<std::size_t>(thread_cap(), std::max<std::size_t>(1, jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto &th : pool)
        th.join();

    std::ostringstream os;
    os << kCsvHeader << '\n';
    json rows = json::array();
    bool failed = false;
    for (const auto &job : jobs) {
        failed = failed || job.report.contains("error");
        os << job.row << '\n';
        rows.push_back(job.report);
    }
    if (o.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream(o.out) << os.str();
        const json side{{"table", t.id}, {"max_n", o.max_n}, {"preset", preset_json(t)}, {"rows", rows}};
        std::ofstream(o.out + ".json") << side.dump(2) << '\n';
    }
    // rows that ran but did not converge are results, not errors
    return failed ? kExitError : kExitConverged;
}

// spectrum ------------------------------------------------------------------

int cmd_spectrum(const ProblemOpts &p, const std::string &out) {
    auto [b, spec] = load_problem(p);
    const SpectrumReport rep = dense_eigen_oracle(b);
    std::ostringstream os;
    os << "index,real,imag,abs\n";
    char buf[128];
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        const auto l = rep.eigenvalues[i];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", i, l.real(), l.imag(), std::abs(l));
        os << buf;
    }
    if (out.empty())
        std::cout << os.str();
    else
        std::ofstream(out) << os.str();
    std::cerr << "second eigenvalue " << rep.second_eigenvalue << ", gap after second "
              << rep.spectral_gap_after_second << '\n';
    return kExitConverged;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multilevel second-eigenvector solvers for column-stochastic matrices"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    ProblemOpts gen_p;
    std::string gen_out;
    auto *gen = app.add_subcommand("generate", "Write a test chain as Matrix Market plus a JSON sidecar");
    gen->add_option("problem", gen_p.name, "Problem name")->required();
    add_problem_options(gen, gen_p);
    gen->add_option("-o,--out", gen_out, "Output .mtx (default <problem>-<n>.mtx)");

    ProblemOpts sol_p;
    SolveOpts so;
    auto *sol = app.add_subcommand("solve", "Run a solver and print the report as JSON");
    sol->add_option("--problem", sol_p.name, "Problem name");
    sol->add_option("--matrix", sol_p.matrix, "Matrix Market input instead of a generated problem");
    add_problem_options(sol, sol_p);
    sol->add_option("--config", "key=value file; flags given on the command line win");
    sol->add_option("--method", so.method, "am, ssm, dam, dssm, relax-only")->capture_default_str();
    sol->add_option("--preset", so.preset, "Table preset (table-uniform-chain ... or table1..table7)");
    sol->add_option("--pre", so.pre, "Pre-relaxation steps")->capture_default_str();
    sol->add_option("--post", so.post, "Post-relaxation steps")->capture_default_str();
    sol->add_option("--steps", so.steps, "Relaxation steps for relax-only")->capture_default_str();
    sol->add_option("--smoother", so.smoother, "chebyshev, power, jacobi, deflated-power, deflated-jacobi")
        ->capture_default_str();
    sol->add_option("--omega", so.omega, "Jacobi damping")->capture_default_str();
    sol->add_option("--cheb-roots", so.cheb_roots, "Chebyshev polynomial roots in [-1, 0]");
    sol->add_option("--agg-size", so.agg_size, "Aggregate size s")->capture_default_str();
    sol->add_option("--theta", so.theta, "Aggregation threshold")->capture_default_str();
    sol->add_option("--d-policy", so.d_policy, "fixed, mean-diag, min-diag-a")->capture_default_str();
    sol->add_option("--d", so.d, "Stretch for the fixed policy")->capture_default_str();
    sol->add_option("--shift-safety", so.shift_safety, "p = (1 - lambda2 estimate)(1 + safety)")
        ->capture_default_str();
    sol->add_option("--tol", so.tol, "Relative residual reduction target")->capture_default_str();
    sol->add_option("--max-cycles", so.max_cycles, "V-cycle budget")->capture_default_str();
    sol->add_option("--initial", so.initial, "ramp or random")->capture_default_str();
    sol->add_flag("--no-v1-first-cycle", so.no_v1_first_cycle, "Aggregate on the iterate from cycle 1");
    sol->add_flag("--no-slow-process-check", so.no_slow_check, "Do not stop when corrections keep failing");
    sol->add_flag("--no-timing", so.no_timing, "Report wall_ms as 0 (byte-identical reruns)");
    sol->add_option("--csv", so.csv, "Append a CSV row (header written to new files)");
    sol->add_option("--json", so.json_out, "Also write the JSON report here");

    ReproduceOpts ro;
    auto *rep = app.add_subcommand("reproduce", "Run a table preset and print the CSV");
    rep->add_option("table", ro.table, "table-uniform-chain, table-weak-link, table-lattice, table-delaunay, "
                                       "table-two-well, table-four-well, table-complex-chain, smoothing-figure")
        ->required();
    rep->add_option("--max-n", ro.max_n, "Largest size to run")->capture_default_str();
    rep->add_option("--n", ro.n, "Size for smoothing-figure")->capture_default_str();
    rep->add_option("-o,--out", ro.out, "CSV output (sidecar written to <out>.json)");
    rep->add_flag("--no-timing", ro.no_timing, "Write wall_ms as 0");

    ProblemOpts spec_p;
    std::string spec_out;
    auto *spc = app.add_subcommand("spectrum", "Dense eigenvalues (n <= 2000) as CSV");
    spc->add_option("--problem", spec_p.name, "Problem name");
    spc->add_option("--matrix", spec_p.matrix, "Matrix Market input");
    add_problem_options(spc, spec_p);
    spc->add_option("-o,--out", spec_out, "CSV output");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitConverged : kExitError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_p, gen_out);
        if (sol->parsed())
            return cmd_solve(sol_p, so, *sol);
        if (rep->parsed())
            return cmd_reproduce(ro);
        if (spc->parsed())
            return cmd_spectrum(spec_p, spec_out);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
