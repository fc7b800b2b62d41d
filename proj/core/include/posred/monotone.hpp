#pragma once

#include <optional>

#include "posred/numerics.hpp"

namespace posred {

/// Outcome of a monotonicity test. A matrix X is monotone when Xx >= 0
/// implies x >= 0, equivalently when it has a non-negative left inverse.
struct MonotoneCertificate {
    bool monotone = false;
    /// Present iff monotone; non-negative and left-inverts the tested matrix.
    std::optional<Matrix> nonneg_left_inverse;
    /// Present iff the combinatorial test for non-negative matrices found m
    /// mutually orthogonal rows.
    std::optional<IndexList> orthogonal_row_set;
};

/// Cone-containment oracle for arbitrary real X (n x m): for every unit
/// vector e_j decide feasibility of X^T c = e_j, c >= 0 with NNLS.
MonotoneCertificate is_monotone_general(const Matrix& x, const Tolerances& tol);

/// Square, non-negative, invertible X is monotone iff its columns are
/// mutually orthogonal (X is a generalized permutation matrix).
bool is_monotone_nonneg_square(const Matrix& x, const Tolerances& tol);

/// Non-negative full-column-rank X (n x m, n >= m) is monotone iff it
/// contains m mutually orthogonal rows. Each such row has support on exactly
/// one column, so the search is a scan for singleton-support rows.
MonotoneCertificate is_monotone_nonneg_rect(const Matrix& x, const Tolerances& tol);

/// Columns of a non-negative matrix pairwise orthogonal at eq_tol, relative
/// to the product of the column norms.
bool has_orthogonal_columns(const Matrix& x, const Tolerances& tol);

}  // namespace posred
