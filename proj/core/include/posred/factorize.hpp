#pragma once

#include <cstdint>
#include <optional>

#include "posred/numerics.hpp"

namespace posred {

/// Factors of a projector Pi = J * Jdag onto a subspace.
///
/// A search result satisfies J >= 0, Jdag >= 0, Jdag * J = I and
/// Im(J) = subspace. The struct itself does not enforce this so that
/// mixed-sign factor pairs (e.g. a Moore-Penrose pair) can be carried
/// through the same reduction code; use verify_factorization.
struct Factorization {
    Matrix J;
    Matrix Jdag;
    /// Rows of J forming the identity block (column order).
    IndexList pivot_rows;

    Index dim() const noexcept { return J.cols(); }
};

inline constexpr std::uint64_t kDefaultSubsetBudget = 10'000'000;

/// Searches row subsets S of size m = dim(V) in lexicographic order for the
/// first one with rank(V_S) = m and V_rest * V_S^{-1} >= 0. On success
/// returns J = V * V_S^{-1} and Jdag = indicator rows of S.
///
/// Throws TooLarge when C(n, m) exceeds `budget`.
std::optional<Factorization> find_nonneg_factorization(const SubspaceBasis& v, const Tolerances& tol,
                                                       std::uint64_t budget = kDefaultSubsetBudget);

bool verify_factorization(const Factorization& f, const SubspaceBasis& v, const Tolerances& tol);

/// Rescales the columns of J so that each pivot row holds a unit entry and
/// replaces Jdag by the matching indicator rows. J * Jdag is unchanged when
/// Jdag already selects one entry per column.
Factorization canonicalize(const Factorization& f);

/// Projector J * Jdag.
Matrix projector(const Factorization& f);

}  // namespace posred
