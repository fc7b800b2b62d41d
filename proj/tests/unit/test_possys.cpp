#include <doctest.h>

#include <random>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "posred/cli/generator.hpp"
#include "posred/possys.hpp"

using namespace posred;
using namespace posred::test;

namespace {

PositiveLtiSystem random_positive(std::mt19937_64& rng, Index n, Index m, Index p) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution zero(0.4);
    auto draw = [&](Index r, Index c) {
        return Matrix(Matrix::NullaryExpr(r, c, [&] { return zero(rng) ? 0.0 : u(rng); }));
    };
    Matrix a = draw(n, n);
    Matrix b = draw(n, m);
    b.col(0)(0) += 0.5;
    return PositiveLtiSystem(a / std::max(1.0, a.rowwise().sum().maxCoeff()), b, draw(p, n));
}

}  // namespace

TEST_CASE("PositiveLtiSystem validation") {
    CHECK(error_kind([] { PositiveLtiSystem(mat({{1, -1}, {0, 1}}), mat({{1}, {0}}), mat({{1, 0}})); }) ==
          ErrorKind::NotPositive);
    CHECK(error_kind([] { PositiveLtiSystem(mat({{1, 0}, {0, 1}}), mat({{1}}), mat({{1, 0}})); }) ==
          ErrorKind::DimensionMismatch);
    CHECK(error_kind([] { PositiveLtiSystem(mat({{1, 0}}), mat({{1}}), mat({{1}})); }) ==
          ErrorKind::DimensionMismatch);
    CHECK_FALSE(is_positive(StateSpace{mat({{1}}), mat({{-1}}), mat({{1}})}, Tolerances{}));
}

TEST_CASE("reachability matrices") {
    const Matrix r1 = reachability_matrix(example1(0.0));
    CHECK(max_abs_diff(r1, mat({{1, 2, 3, 5}, {1, 1, 2, 3}, {0, 0, 0, 0}, {0, 0, 0, 0}})) <= 1e-12);

    const Matrix r2 = reachability_matrix(example2(2.0));
    CHECK(max_abs_diff(r2, mat({{0, 2, 0, 8}, {1, 0, 4, 0}, {1, 1, 1, 1}, {1, 1, 1, 1}})) <= 1e-12);

    const PositiveLtiSystem id(Matrix::Identity(2, 2), mat({{1}, {0}}), Matrix::Identity(2, 2));
    CHECK(max_abs_diff(reachability_matrix(id), mat({{1, 1}, {0, 0}})) == 0.0);
}

TEST_CASE("reachable subspaces") {
    const Tolerances tol;
    CHECK(max_abs_diff(reachable_subspace(example1(0.0), tol).matrix(), example1_rbar()) <= 1e-12);
    CHECK(reachable_subspace(example2(1.0), tol).dim() == 2);
    CHECK(reachable_subspace(example2(2.0), tol).dim() == 3);
    const PositiveLtiSystem silent(Matrix::Identity(2, 2), Matrix::Zero(2, 1), Matrix::Identity(2, 2));
    CHECK(error_kind([&] { (void)reachable_subspace(silent, tol); }) == ErrorKind::ZeroMatrix);
}

TEST_CASE("observability matrices and duality") {
    const Matrix a = mat({{0, 1}, {1, 1}});
    const PositiveLtiSystem s(a, mat({{1}, {0}}), Matrix::Identity(2, 2));
    Matrix expected(4, 2);
    expected << Matrix::Identity(2, 2), a;
    CHECK(max_abs_diff(observability_matrix(s), expected) == 0.0);

    const PositiveLtiSystem sum(Matrix::Identity(2, 2), mat({{1}, {1}}), mat({{1, 1}}));
    CHECK(max_abs_diff(observability_matrix(sum), mat({{1, 1}, {1, 1}})) == 0.0);

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const PositiveLtiSystem r = random_positive(rng, 2 + trial % 4, 1 + trial % 2, 1 + trial % 3);
        CHECK(max_abs_diff(observability_matrix(r), reachability_matrix(r.transposed()).transpose()) <= 1e-12);
    }
}

TEST_CASE("markov parameters") {
    const MarkovSequence m = markov(example1(0.0, mat({{1, 0, 0, 0}})), 3);
    REQUIRE(m.coefficients.size() == 4);
    CHECK(m.coefficients[0](0, 0) == 1.0);
    CHECK(m.coefficients[1](0, 0) == 2.0);
    CHECK(m.coefficients[3](0, 0) == 5.0);

    const PositiveLtiSystem shift(mat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), mat({{1}, {0}, {0}}), mat({{0, 0, 1}}));
    const MarkovSequence ms = markov(shift, 6);
    CHECK(ms.coefficients[2](0, 0) == 1.0);
    for (Index k = 3; k <= 6; ++k) {
        CHECK(ms.coefficients[static_cast<std::size_t>(k)](0, 0) == 0.0);
    }
}

TEST_CASE("naive and robust reductions of the perturbed four-state system") {
    const Tolerances tol;
    const Factorization naive{example1_rbar(), example1_rbar_pinv(), {}};
    const Factorization robust{mat({{1, 0}, {0, 1}, {0, 0}, {0, 0}}), mat({{1, 0, 0, 0}, {0, 1, 0, 0}}), {0, 1}};

    const PositiveLtiSystem r0 = reduce(example1(0.0), naive, tol);
    CHECK(max_abs_diff(r0.A(), mat({{0, 1}, {1, 1}})) <= 1e-9);
    CHECK(max_abs_diff(r0.B(), mat({{1}, {0}})) <= 1e-9);

    const StateSpace raw = project(example1(0.1), naive);
    CHECK(max_abs_diff(raw.A, mat({{-0.1, 0.9}, {1.1, 1.1}})) <= 1e-9);
    CHECK(max_abs_diff(raw.B, mat({{1.2}, {-0.1}})) <= 1e-9);
    CHECK(error_kind([&] { (void)reduce(example1(0.1), naive, tol); }) == ErrorKind::NotPositive);

    for (double eps : {0.0, 0.1}) {
        const PositiveLtiSystem r = reduce(example1(eps), robust, tol);
        CHECK(max_abs_diff(r.A(), mat({{1, 1 + eps}, {1, 0}})) <= 1e-12);
        const EquivalenceCheck e = compare_markov(example1(eps), r, tol, 6);
        CHECK(e.equivalent);
        CHECK(e.max_abs_error <= 1e-8);
    }
}

TEST_CASE("reduce rejects non-invariant subspaces") {
    const Tolerances tol;
    const Factorization e3{mat({{0}, {0}, {1}, {0}}), mat({{0, 0, 1, 0}}), {2}};
    CHECK(error_kind([&] { (void)reduce(example1(0.0), e3, tol); }) == ErrorKind::NotInvariant);
    const Factorization e1{mat({{1}, {0}, {0}, {0}}), mat({{1, 0, 0, 0}}), {0}};
    CHECK(error_kind([&] { (void)reduce(example1(0.0), e1, tol); }) == ErrorKind::NotInvariant);
}

TEST_CASE("equivalence") {
    const Tolerances tol;
    CHECK(equivalent(example2(1.0), example2(1.0), tol));
    const PositiveLtiSystem two(mat({{0, 1}, {1, 0}}), mat({{0}, {1}}), mat({{1, 1}}));
    CHECK(compare_markov(example2(1.0), two, tol).horizon == 6);
    const PositiveLtiSystem three(mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), mat({{0}, {1}, {1}}), mat({{0, 0, 1}}));
    CHECK(equivalent(example2(1.0), three, tol));
    CHECK_FALSE(equivalent(example2(1.0, mat({{1, 1, 0, 0}})), example2(2.0, mat({{1, 1, 0, 0}})), tol));
    const PositiveLtiSystem wide(mat({{1}}), mat({{1, 1}}), mat({{1}}));
    CHECK(error_kind([&] { (void)equivalent(example2(1.0), wide, tol); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("simulate") {
    const PositiveLtiSystem s = example1(0.0, mat({{1, 0, 0, 0}}));
    const std::vector<Vector> zero = simulate(s, Vector::Zero(4), std::vector<Vector>(5, Vector::Zero(1)));
    REQUIRE(zero.size() == 6);
    for (const Vector& y : zero) {
        CHECK(y.norm() == 0.0);
    }

    std::vector<Vector> impulse(6, Vector::Zero(1));
    impulse[0](0) = 1.0;
    const std::vector<Vector> y = simulate(s, Vector::Zero(4), impulse);
    const MarkovSequence m = markov(s, 5);
    CHECK(y[0](0) == 0.0);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(y[k + 1](0) == doctest::Approx(m.coefficients[k](0, 0)));
    }

    CHECK(error_kind([&] { (void)simulate(s, -Vector::Ones(4), impulse); }) == ErrorKind::NegativeInput);
    std::vector<Vector> negative(2, -Vector::Ones(1));
    CHECK(error_kind([&] { (void)simulate(s, Vector::Zero(4), negative); }) == ErrorKind::NegativeInput);
    const PositiveLtiSystem ct(Matrix::Identity(1, 1), mat({{1}}), mat({{1}}), TimeDomain::Continuous);
    CHECK(error_kind([&] { (void)simulate(ct, Vector::Zero(1), {}); }) == ErrorKind::UnsupportedTimeDomain);
}

TEST_CASE("positive systems keep non-negative trajectories") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const PositiveLtiSystem s = random_positive(rng, 2 + trial % 6, 1 + trial % 2, 1 + trial % 3);
        const Vector x0 = Vector::NullaryExpr(s.states(), [&] { return u(rng); });
        std::vector<Vector> inputs(20);
        for (Vector& v : inputs) {
            v = Vector::NullaryExpr(s.inputs(), [&] { return u(rng); });
        }
        for (const Vector& y : simulate(s, x0, inputs)) {
            CHECK(y.minCoeff() >= 0.0);
        }
    }
}

TEST_CASE("reachable space is invariant and positively generated") {
    std::mt19937_64 rng(43);
    const Tolerances tol;
    for (int trial = 0; trial < 100; ++trial) {
        const PositiveLtiSystem s = random_positive(rng, 2 + trial % 6, 1 + trial % 2, 1);
        const SubspaceBasis r = reachable_subspace(s, tol);
        CHECK(is_nonneg(r.matrix(), tol));
        CHECK(svd_rank(hcat(r.matrix(), s.A() * r.matrix())) == r.dim());
        CHECK(svd_rank(hcat(r.matrix(), s.B())) == r.dim());
        CHECK(r.dim() == svd_rank(reachability_matrix(s)));
    }
}

TEST_CASE("any invariant subspace containing Im(B) gives an exact reduction") {
    const Tolerances tol;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        cli::GeneratorSpec spec;
        spec.n = 3 + static_cast<Index>(seed % 4);
        spec.reachable_dim = spec.n - 1;
        spec.inputs = 1 + static_cast<Index>(seed % 2);
        spec.outputs = 2;
        spec.seed = seed;
        spec.lift = cli::LiftKind::Identity;
        const PositiveLtiSystem s = cli::generate_system(spec);
        const SubspaceBasis r = reachable_subspace(s, tol);
        const Matrix j = r.matrix();
        const Factorization mp{j, left_inverse(j, tol), {}};
        const StateSpace red = project(s, mp);
        CHECK(compare_markov(s, red, tol).equivalent);
    }
}
