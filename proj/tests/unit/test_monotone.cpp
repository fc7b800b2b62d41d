#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "posred/monotone.hpp"
#include "posred/nnls.hpp"

using namespace posred;
using namespace posred::test;

namespace {

void check_certificate(const Matrix& x, const MonotoneCertificate& c, const Tolerances& tol) {
    REQUIRE(c.monotone);
    REQUIRE(c.nonneg_left_inverse.has_value());
    const Matrix& l = *c.nonneg_left_inverse;
    CHECK(is_nonneg(l, tol));
    CHECK(max_abs_diff(l * x, Matrix::Identity(x.cols(), x.cols())) <= 1e-7);
}

}  // namespace

TEST_CASE("nnls recovers an interior solution and clips at zero") {
    const Matrix e = mat({{1, 0}, {0, 1}, {1, 1}});
    NnlsResult r = nnls(e, vec({1, 2, 3}));
    CHECK(max_abs_diff(r.x, vec({1, 2})) <= 1e-12);
    CHECK(r.residual_norm <= 1e-12);

    r = nnls(Matrix::Identity(2, 2), vec({-1, 2}));
    CHECK(max_abs_diff(r.x, vec({0, 2})) <= 1e-12);
    CHECK(r.residual_norm == doctest::Approx(1.0));
}

TEST_CASE("general oracle") {
    const Tolerances tol;
    MonotoneCertificate c = is_monotone_general(Matrix::Identity(3, 3), tol);
    check_certificate(Matrix::Identity(3, 3), c, tol);
    CHECK(max_abs_diff(*c.nonneg_left_inverse, Matrix::Identity(3, 3)) <= 1e-9);

    const Matrix lower = mat({{1, 0}, {1, 1}});
    c = is_monotone_general(lower, tol);
    CHECK_FALSE(c.monotone);
    CHECK_FALSE(c.nonneg_left_inverse.has_value());
    CHECK_FALSE(monotone_by_enumeration(lower));

    const Matrix rbar = mat({{0, 1}, {1, 0}, {1, 1}, {1, 1}});
    check_certificate(rbar, is_monotone_general(rbar, tol), tol);

    CHECK_FALSE(is_monotone_general(mat({{1, 2}}), tol).monotone);

    // Mixed-sign but monotone: the rows include e1 and e2.
    const Matrix mixed = mat({{1, 0}, {0, 1}, {-1, 3}});
    check_certificate(mixed, is_monotone_general(mixed, tol), tol);

    Matrix bad = Matrix::Identity(2, 2);
    bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK(error_kind([&] { (void)is_monotone_general(bad, tol); }) == ErrorKind::NonFinite);
}

TEST_CASE("general oracle is scale invariant") {
    const Tolerances tol;
    const Matrix x = mat({{0, 1}, {1, 0}, {1, 1}});
    for (double s : {1e-6, 1.0, 1e6}) {
        CHECK(is_monotone_general(s * x, tol).monotone);
        CHECK_FALSE(is_monotone_general(s * mat({{1, 0}, {1, 1}}), tol).monotone);
    }
}

TEST_CASE("square non-negative test") {
    const Tolerances tol;
    CHECK(is_monotone_nonneg_square(mat({{2, 0}, {0, 3}}), tol));
    CHECK(is_monotone_nonneg_square(mat({{0, 5}, {7, 0}}), tol));
    CHECK_FALSE(is_monotone_nonneg_square(mat({{1, 1}, {0, 1}}), tol));
    CHECK_FALSE(is_monotone_general(mat({{1, 1}, {0, 1}}), tol).monotone);

    CHECK(error_kind([&] { (void)is_monotone_nonneg_square(mat({{1, 0, 0}, {0, 1, 0}}), tol); }) ==
          ErrorKind::NotSquare);
    CHECK(error_kind([&] { (void)is_monotone_nonneg_square(mat({{1, -1}, {0, 1}}), tol); }) == ErrorKind::NotNonneg);
    CHECK(error_kind([&] { (void)is_monotone_nonneg_square(mat({{1, 1}, {1, 1}}), tol); }) == ErrorKind::Singular);
}

TEST_CASE("square test agrees with the cone oracle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    std::bernoulli_distribution coin(0.5);
    const Tolerances tol;
    int generalized_permutations = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Index n = 1 + trial % 5;
        Matrix x = Matrix::Zero(n, n);
        std::vector<Index> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), Index{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (Index i = 0; i < n; ++i) {
            x(i, perm[static_cast<std::size_t>(i)]) = u(rng);
        }
        if (coin(rng)) {
            const auto i = std::uniform_int_distribution<Index>(0, n - 1)(rng);
            const auto j = std::uniform_int_distribution<Index>(0, n - 1)(rng);
            x(i, j) += u(rng);
        }
        if (svd_rank(x) < n) {
            continue;
        }
        const bool fast = is_monotone_nonneg_square(x, tol);
        CHECK(fast == is_monotone_general(x, tol).monotone);
        CHECK(fast == monotone_by_enumeration(x));
        generalized_permutations += fast;
    }
    CHECK(generalized_permutations > 50);
}

TEST_CASE("rectangular non-negative test") {
    const Tolerances tol;
    const Matrix rbar = mat({{0, 1}, {1, 0}, {1, 1}, {1, 1}});
    MonotoneCertificate c = is_monotone_nonneg_rect(rbar, tol);
    check_certificate(rbar, c, tol);
    REQUIRE(c.orthogonal_row_set.has_value());
    CHECK(*c.orthogonal_row_set == IndexList{0, 1});
    CHECK(max_abs_diff(*c.nonneg_left_inverse, mat({{0, 1, 0, 0}, {1, 0, 0, 0}})) <= 1e-12);

    const Matrix j = mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1}});
    c = is_monotone_nonneg_rect(j, tol);
    check_certificate(j, c, tol);
    CHECK(*c.orthogonal_row_set == IndexList{0, 1, 2});

    const Matrix dense = mat({{1, 1}, {1, 2}, {2, 1}});
    c = is_monotone_nonneg_rect(dense, tol);
    CHECK_FALSE(c.monotone);
    CHECK_FALSE(is_monotone_general(dense, tol).monotone);

    CHECK(error_kind([&] { (void)is_monotone_nonneg_rect(mat({{1, -1}, {0, 1}}), tol); }) == ErrorKind::NotNonneg);
    CHECK(error_kind([&] { (void)is_monotone_nonneg_rect(mat({{1, 2}, {2, 4}, {0, 0}}), tol); }) ==
          ErrorKind::RankDeficient);
}

TEST_CASE("rectangular test skips zero rows and scales") {
    const Tolerances tol;
    const Matrix x = mat({{0, 0}, {3, 0}, {0, 0}, {1, 1}, {0, 4}});
    const MonotoneCertificate c = is_monotone_nonneg_rect(x, tol);
    check_certificate(x, c, tol);
    CHECK(*c.orthogonal_row_set == IndexList{1, 4});
    CHECK(max_abs_diff(*c.nonneg_left_inverse, mat({{0, 1.0 / 3, 0, 0, 0}, {0, 0, 0, 0, 0.25}})) <= 1e-12);
}

TEST_CASE("rectangular test agrees with both oracles") {
    std::mt19937_64 rng(22);
    const Tolerances tol;
    int positives = 0;
    int negatives = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Index m = 1 + trial % 4;
        const Index n = m + (trial / 4) % 3;
        const Matrix x = random_nonneg_full_rank(rng, n, m, 0.4, 0.6);
        const MonotoneCertificate fast = is_monotone_nonneg_rect(x, tol);
        CHECK(fast.monotone == is_monotone_general(x, tol).monotone);
        CHECK(fast.monotone == monotone_by_enumeration(x));
        if (fast.monotone) {
            check_certificate(x, fast, tol);
            ++positives;
        } else {
            ++negatives;
        }
    }
    CHECK(positives > 30);
    CHECK(negatives > 30);
}

TEST_CASE("non-negative vectors are orthogonal iff their supports are disjoint") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    std::bernoulli_distribution zero(0.6);
    const Tolerances tol;
    for (int trial = 0; trial < 500; ++trial) {
        const Index n = 1 + trial % 6;
        Matrix x(n, 2);
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < 2; ++j) {
                x(i, j) = zero(rng) ? 0.0 : u(rng);
            }
        }
        bool disjoint = true;
        for (Index i = 0; i < n; ++i) {
            disjoint = disjoint && (x(i, 0) == 0.0 || x(i, 1) == 0.0);
        }
        CHECK(has_orthogonal_columns(x, tol) == disjoint);
    }
}
