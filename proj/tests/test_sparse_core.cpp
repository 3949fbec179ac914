#include "markov_ml/dense_oracle.hpp"
#include "markov_ml/error.hpp"
#include "markov_ml/matrix_market.hpp"
#include "markov_ml/problems.hpp"
#include "markov_ml/sparse_matrix.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace markov_ml;
using namespace markov_ml::testing;

namespace {

SparseMatrix two_state() {
    return SparseMatrix::from_triplets(2, 2, {{0, 0, 0.75}, {0, 1, 0.25}, {1, 0, 0.25}, {1, 1, 0.75}});
}

} // namespace

TEST_CASE("csr construction enforces invariants") {
    CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 1, 1}, {0, 0}, {1.0, 1.0}), InputError);
    CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 2, 2}, {1, 0}, {1.0, 1.0}), InputError);
    CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 1, 2}, {0, 2}, {1.0, 1.0}), InputError);

    const SparseMatrix m(2, 2, {0, 2, 3}, {0, 1, 1}, {0.0, 2.0, 3.0});
    CHECK(m.nnz() == 2);  // exact zero pruned
    CHECK(m.at(0, 0) == 0.0);
    CHECK(m.at(0, 1) == 2.0);

    const auto d = SparseMatrix::from_triplets(2, 2, {{1, 1, 1.0}, {0, 0, 2.0}, {1, 1, 0.5}, {0, 1, 1.0}, {0, 1, -1.0}});
    CHECK(d.nnz() == 2);
    CHECK(d.at(1, 1) == 1.5);
}

TEST_CASE("spmv") {
    SUBCASE("identity") {
        CHECK(spmv(SparseMatrix::identity(3), Vector{1, 2, 3}) == Vector{1, 2, 3});
    }
    SUBCASE("two-state eigenpair") {
        const Vector y = spmv(two_state(), Vector{1, -1});
        CHECK(y[0] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(y[1] == doctest::Approx(-0.5).epsilon(1e-15));
    }
    SUBCASE("uniform chain times ones gives row sums, matches triple loop") {
        const auto b = gen_uniform_chain(8);
        const Vector ones(8, 1.0);
        const Vector y = spmv(b, ones);
        const Vector ref = dense_matvec(b, ones);
        for (int i = 0; i < 8; ++i)
            CHECK(y[i] == doctest::Approx(ref[i]).epsilon(1e-15));
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(spmv(SparseMatrix::identity(3), Vector{1, 2}), InputError);
    }
}

TEST_CASE("spmv agrees with dense oracle on random sparse matrices") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        const Index n = 1 + static_cast<Index>(rng() % 200);
        std::uniform_real_distribution<double> val(-1.0, 1.0);
        std::bernoulli_distribution keep(0.05 + 0.3 * (trial % 3));
        std::vector<Triplet> t;
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                if (keep(rng))
                    t.push_back({i, j, val(rng)});
        const auto m = SparseMatrix::from_triplets(n, n, t);
        Vector x(n);
        for (auto &v : x)
            v = val(rng);
        const Vector y = spmv(m, x);
        const Vector ref = dense_matvec(m, x);
        double err = 0.0, scale = 0.0;
        for (Index i = 0; i < n; ++i) {
            err = std::max(err, std::abs(y[i] - ref[i]));
            scale = std::max(scale, std::abs(ref[i]));
        }
        CHECK(err <= 1e-14 * std::max(scale, 1.0));
    }
}

TEST_CASE("sparse product and transpose match dense") {
    const auto a = random_stochastic(30, 3, 0.2);
    const auto b = random_stochastic(30, 4, 0.2);
    CHECK((dense(multiply(a, b)) - dense(a) * dense(b)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((dense(a.transpose()) - dense(a).transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((dense(scale_and_shift(a, 2.0, -0.5)) -
           (2.0 * dense(a) - 0.5 * Eigen::MatrixXd::Identity(30, 30)))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
}

TEST_CASE("validate_column_stochastic") {
    CHECK(validate_column_stochastic(SparseMatrix::identity(4), 1e-12));
    CHECK(validate_column_stochastic(two_state(), 1e-12));
    const auto bad = SparseMatrix::from_triplets(2, 2, {{0, 0, 0.6}, {1, 0, 0.3}, {0, 1, 0.5}, {1, 1, 0.5}});
    CHECK_FALSE(validate_column_stochastic(bad, 1e-12));
    const auto negative = SparseMatrix::from_triplets(2, 2, {{0, 0, 1.1}, {1, 0, -0.1}, {1, 1, 1.0}});
    CHECK_FALSE(validate_column_stochastic(negative, 1e-12));
}

TEST_CASE("stochastic matrices have tiny column-sum defect") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto b = random_stochastic(40, seed);
        REQUIRE(validate_column_stochastic(b, 1e-12));
        CHECK(column_sum_defect(b) <= 1e-12);
    }
}

TEST_CASE("dense eigen oracle") {
    SUBCASE("two-state") {
        const auto r = dense_eigen_oracle(two_state());
        REQUIRE(r.eigenvalues.size() == 2);
        CHECK(r.eigenvalues[0].real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.eigenvalues[1].real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(r.second_eigenvalue == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("lazy chain n=8 matches closed-form path spectrum") {
        const auto r = dense_eigen_oracle(gen_uniform_chain(8));
        // Path graph random walk P_n: cos(k pi/(n-1)), k = 0..n-1; lazy mix halves.
        for (int k = 0; k < 8; ++k) {
            const double expect = 0.5 * (1.0 + std::cos(k * std::numbers::pi / 7.0));
            CHECK(r.eigenvalues[k].real() == doctest::Approx(expect).epsilon(1e-12));
            CHECK(std::abs(r.eigenvalues[k].imag()) < 1e-12);
        }
    }
    SUBCASE("rank-one deflated two-state") {
        // B - 1 * v1 u^T with v1 = [0.5, 0.5], u = [1, 1]
        const auto d = SparseMatrix::from_triplets(2, 2, {{0, 0, 0.25}, {0, 1, -0.25}, {1, 0, -0.25}, {1, 1, 0.25}});
        const auto r = dense_eigen_oracle(d);
        CHECK(r.eigenvalues[0].real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(r.eigenvalues[1]) < 1e-14);
    }
    SUBCASE("refuses oversized input") {
        CHECK_THROWS_AS(dense_eigen_oracle(gen_uniform_chain(50), 40), OracleError);
    }
    SUBCASE("max modulus is one for stochastic test matrices") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto r = dense_eigen_oracle(random_stochastic(60, seed));
            CHECK(std::abs(r.eigenvalues[0]) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("matrix market") {
    SUBCASE("identity round trip") {
        std::stringstream ss;
        write_matrix_market(SparseMatrix::identity(4), ss);
        CHECK(read_matrix_market(ss) == SparseMatrix::identity(4));
    }
    SUBCASE("one-based indices") {
        std::istringstream in("%%MatrixMarket matrix coordinate real general\n% c\n2 2 1\n1 1 0.5\n");
        const auto m = read_matrix_market(in);
        CHECK(m.at(0, 0) == 0.5);
        CHECK(m.nnz() == 1);
    }
    SUBCASE("weak link keeps epsilon exactly") {
        const auto b = gen_weak_link_chain(16, 0.001);
        std::stringstream ss;
        write_matrix_market(b, ss);
        const auto back = read_matrix_market(ss);
        CHECK(back == b);
        // The weak edge (7,8): B(8,7) = 1/2 * eps / (1 + eps)
        CHECK(back.at(8, 7) == doctest::Approx(0.5 * 0.001 / 1.001).epsilon(1e-15));
    }
    SUBCASE("parse errors carry line numbers") {
        std::istringstream bad_banner("%%MatrixMarket matrix array real general\n2 2\n");
        CHECK_THROWS_AS(read_matrix_market(bad_banner), ParseError);
        std::istringstream bad_entry("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 0.5\n2 x 1\n");
        try {
            read_matrix_market(bad_entry);
            FAIL("expected ParseError");
        } catch (const ParseError &e) {
            CHECK(e.line() == 4);
        }
        std::istringstream truncated("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 0.5\n");
        CHECK_THROWS_AS(read_matrix_market(truncated), ParseError);
        std::istringstream out_of_range("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 0.5\n");
        CHECK_THROWS_AS(read_matrix_market(out_of_range), ParseError);
    }
}

TEST_CASE("strong connectivity") {
    CHECK(is_strongly_connected(gen_uniform_chain(10)));
    CHECK_FALSE(is_strongly_connected(SparseMatrix::identity(3)));
    // one-way edge 0 -> 1 only
    CHECK_FALSE(is_strongly_connected(SparseMatrix::from_triplets(2, 2, {{1, 0, 1.0}, {1, 1, 1.0}})));
}
