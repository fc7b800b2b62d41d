#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "posred/factorize.hpp"
#include "posred/numerics.hpp"

namespace posred {

/// Non-negative reference vector p of the product x ^_p y = x .* y ./ p.
/// Coordinates outside `support` are inert.
class ReferenceVector {
public:
    ReferenceVector() = default;
    /// Throws InvalidArgument if p has negative or non-finite entries.
    explicit ReferenceVector(Vector p);

    const Vector& values() const noexcept { return p_; }
    const IndexList& support() const noexcept { return support_; }
    Index size() const noexcept { return p_.size(); }
    bool supports(Index i) const noexcept { return p_(i) > 0.0; }

private:
    Vector p_;
    IndexList support_;
};

/// A p-distorted algebra described by its idempotent generators.
struct DistortedAlgebra {
    ReferenceVector p;
    /// n x q matrix; column k is f_k = p on blocks[k], zero elsewhere.
    Matrix generators;
    /// Partition of the algebra's coordinates; sorted by first element.
    std::vector<IndexList> blocks;

    Index dim() const noexcept { return generators.cols(); }
    Index ambient_dim() const noexcept { return generators.rows(); }
};

/// [x ^_p y]_i = x_i y_i / p_i on supp(p), 0 elsewhere. Throws
/// UnsupportedCoordinate if x or y is nonzero off the support.
Vector wedge(const Vector& x, const Vector& y, const ReferenceVector& p);

/// Coordinates on which some basis vector of V is nonzero (relative eq_tol).
IndexList subspace_support(const SubspaceBasis& v, const Tolerances& tol);

/// Sum of the basis columns of V; if that is not strictly positive exactly
/// on supp(V), retries with random weights in [1, 2] drawn from `seed`.
/// Throws SupportFailure when no admissible combination is found.
ReferenceVector choose_p(const SubspaceBasis& v, std::optional<std::uint64_t> seed = std::nullopt,
                         const Tolerances& tol = {}, int max_retries = 64);

/// Smallest p-distorted algebra containing V, computed through the
/// p^{-1}-transform and a fixpoint closure under the entrywise product.
/// Throws UnsupportedCoordinate if supp(V) is not inside supp(p) and
/// ClosureMismatch if the block count disagrees with the closure rank.
DistortedAlgebra closure(const SubspaceBasis& v, const ReferenceVector& p, const Tolerances& tol);

/// J = generator matrix and its non-negative left inverse from the
/// orthogonal-row test. Throws InternalVerification if that test fails,
/// which disjoint generator supports rule out.
Factorization algebra_factorization(const DistortedAlgebra& alg, const Tolerances& tol);

/// dim(closure(V, p)) == dim(V).
bool is_distorted_algebra(const SubspaceBasis& v, const ReferenceVector& p, const Tolerances& tol);

}  // namespace posred
