#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

#include <Eigen/Dense>

#include "posred/error.hpp"

namespace posred {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using IndexList = std::vector<Index>;

/// Tolerance record threaded through every numerical decision.
///
/// `rank_tol` is relative to the largest absolute entry of the matrix under
/// test; `nonneg_tol` and `eq_tol` are absolute floors used for sign and
/// entrywise equality tests.
struct Tolerances {
    double rank_tol = 1e-10;
    double nonneg_tol = 1e-9;
    double eq_tol = 1e-8;

    /// Throws InvalidArgument if any tolerance is negative or not finite.
    void validate() const;
};

void require_finite(const Matrix& m, const char* what);

struct ColumnSelection;
class SubspaceBasis;
ColumnSelection select_independent_columns(const Matrix& m, const Tolerances& tol);

/// Full-column-rank basis of a subspace of R^n. The dimension may be zero,
/// in which case the basis is an n x 0 matrix.
class SubspaceBasis {
public:
    SubspaceBasis() = default;

    /// Validates that `basis` has linearly independent columns at rank_tol.
    SubspaceBasis(Matrix basis, const Tolerances& tol);

    static SubspaceBasis zero(Index ambient_dim);

    Index ambient_dim() const noexcept { return basis_.rows(); }
    Index dim() const noexcept { return basis_.cols(); }
    const Matrix& matrix() const noexcept { return basis_; }

private:
    friend ColumnSelection select_independent_columns(const Matrix&, const Tolerances&);
    explicit SubspaceBasis(Matrix basis) : basis_(std::move(basis)) {}

    Matrix basis_;
};

/// Numerical rank by Gaussian elimination with partial pivoting. A pivot
/// counts iff its magnitude exceeds rank_tol * max|M|, the maximum being
/// taken once on the input.
Index rank(const Matrix& m, const Tolerances& tol);

/// Greedy left-to-right column selection: a column is kept iff it raises the
/// rank of the columns kept so far.
struct ColumnSelection {
    SubspaceBasis basis;
    IndexList columns;
};

ColumnSelection select_independent_columns(const Matrix& m, const Tolerances& tol);

/// Same selection, returning only the basis. Throws ZeroMatrix on rank 0.
SubspaceBasis column_space_basis(const Matrix& m, const Tolerances& tol);

/// Moore-Penrose left inverse (M^T M)^{-1} M^T of a full-column-rank M.
Matrix left_inverse(const Matrix& m, const Tolerances& tol);

bool is_nonneg(const Matrix& m, const Tolerances& tol);

/// Entrywise |a - b| <= tol.
bool approx_equal(const Matrix& a, const Matrix& b, double tol);

/// Horizontal concatenation [a | b]; both must have the same row count.
Matrix hcat(const Matrix& a, const Matrix& b);

/// Rows `rows` of m, in the given order.
Matrix select_rows(const Matrix& m, const IndexList& rows);

/// Binomial coefficient C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// All m-element subsets of {0, ..., n-1} in lexicographic order.
///
///     for (const IndexList& s : RowSubsets(4, 2)) { ... }
class RowSubsets {
public:
    RowSubsets(Index n, Index m);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = IndexList;
        using difference_type = std::ptrdiff_t;
        using pointer = const IndexList*;
        using reference = const IndexList&;

        iterator() = default;
        iterator(Index n, Index m, bool done);

        reference operator*() const noexcept { return current_; }
        pointer operator->() const noexcept { return &current_; }
        iterator& operator++();
        iterator operator++(int) {
            iterator tmp = *this;
            ++*this;
            return tmp;
        }
        bool operator==(const iterator& other) const noexcept {
            return done_ == other.done_ && (done_ || current_ == other.current_);
        }

    private:
        Index n_ = 0;
        IndexList current_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(n_, m_, false); }
    iterator end() const { return iterator(n_, m_, true); }

    std::uint64_t count() const noexcept;

private:
    Index n_;
    Index m_;
};

RowSubsets row_subsets(Index n, Index m);

}  // namespace posred
