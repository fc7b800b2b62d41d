#pragma once

#include <optional>
#include <vector>

#include "posred/factorize.hpp"
#include "posred/numerics.hpp"

namespace posred {

enum class TimeDomain { Discrete, Continuous };

/// Plain state-space triple (A, B, C) with consistent dimensions and no sign
/// requirement. Reductions with mixed-sign factors produce these.
struct StateSpace {
    Matrix A;
    Matrix B;
    Matrix C;
    TimeDomain time_domain = TimeDomain::Discrete;

    Index states() const noexcept { return A.rows(); }
    Index inputs() const noexcept { return B.cols(); }
    Index outputs() const noexcept { return C.rows(); }

    /// Throws DimensionMismatch / NonFinite.
    void validate_shapes() const;

    /// The dual triple (A^T, C^T, B^T).
    StateSpace transposed() const;
};

bool is_positive(const StateSpace& s, const Tolerances& tol);

/// Internally positive discrete- or continuous-time LTI system: A, B, C are
/// entrywise non-negative at nonneg_tol.
class PositiveLtiSystem {
public:
    /// Throws DimensionMismatch, NonFinite or NotPositive.
    PositiveLtiSystem(StateSpace s, const Tolerances& tol = {});
    PositiveLtiSystem(Matrix a, Matrix b, Matrix c, TimeDomain td = TimeDomain::Discrete,
                      const Tolerances& tol = {});

    const Matrix& A() const noexcept { return s_.A; }
    const Matrix& B() const noexcept { return s_.B; }
    const Matrix& C() const noexcept { return s_.C; }
    TimeDomain time_domain() const noexcept { return s_.time_domain; }
    Index states() const noexcept { return s_.states(); }
    Index inputs() const noexcept { return s_.inputs(); }
    Index outputs() const noexcept { return s_.outputs(); }

    const StateSpace& state_space() const noexcept { return s_; }
    operator const StateSpace&() const noexcept { return s_; }

    PositiveLtiSystem transposed() const;

private:
    StateSpace s_;
};

/// Markov parameters C A^k B for k = 0..horizon.
struct MarkovSequence {
    Index horizon = 0;
    std::vector<Matrix> coefficients;
};

/// [B, AB, ..., A^{n-1} B].
Matrix reachability_matrix(const StateSpace& s);

/// Truncated reachability basis: independent columns of the reachability
/// matrix, greedily selected. Throws ZeroMatrix when B = 0.
SubspaceBasis reachable_subspace(const StateSpace& s, const Tolerances& tol);

/// [C; CA; ...; C A^{n-1}].
Matrix observability_matrix(const StateSpace& s);

MarkovSequence markov(const StateSpace& s, Index horizon);

/// (Jdag A J, Jdag B, C J) without any checks beyond shapes.
StateSpace project(const StateSpace& s, const Factorization& f);

/// Reduction by a factorization. Checks that Im(J) is A-invariant and
/// contains Im(B) (NotInvariant otherwise) and that the reduced triple is
/// non-negative (NotPositive otherwise).
PositiveLtiSystem reduce(const StateSpace& s, const Factorization& f, const Tolerances& tol);

/// Result of a Markov-sequence comparison.
struct EquivalenceCheck {
    bool equivalent = false;
    Index horizon = 0;
    double max_abs_error = 0.0;
    double scale = 0.0;
};

/// Compares C1 A1^k B1 and C2 A2^k B2 for k = 0..horizon, entrywise within
/// eq_tol * max(1, largest coefficient magnitude). The default horizon
/// n1 + n2 is sufficient by Cayley-Hamilton. Throws DimensionMismatch when
/// input or output counts differ.
EquivalenceCheck compare_markov(const StateSpace& s1, const StateSpace& s2, const Tolerances& tol,
                                std::optional<Index> horizon = std::nullopt);

bool equivalent(const StateSpace& s1, const StateSpace& s2, const Tolerances& tol,
                std::optional<Index> horizon = std::nullopt);

/// Iterates x(k+1) = A x(k) + B u(k) and returns y(0), ..., y(N) with
/// y(k) = C x(k), N = inputs.size(). Rejects continuous-time systems
/// (UnsupportedTimeDomain) and negative x0 or inputs (NegativeInput).
std::vector<Vector> simulate(const PositiveLtiSystem& s, const Vector& x0, const std::vector<Vector>& inputs,
                             const Tolerances& tol = {});

}  // namespace posred
