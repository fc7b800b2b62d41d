#include "posred/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace posred {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::ZeroMatrix: return "ZeroMatrix";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::NotNonneg: return "NotNonneg";
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::NotInvariant: return "NotInvariant";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NegativeInput: return "NegativeInput";
        case ErrorKind::UnsupportedTimeDomain: return "UnsupportedTimeDomain";
        case ErrorKind::UnsupportedCoordinate: return "UnsupportedCoordinate";
        case ErrorKind::SupportFailure: return "SupportFailure";
        case ErrorKind::ClosureMismatch: return "ClosureMismatch";
        case ErrorKind::InternalVerification: return "InternalVerification";
    }
    return "Unknown";
}

void Tolerances::validate() const {
    for (double t : {rank_tol, nonneg_tol, eq_tol}) {
        if (!std::isfinite(t) || t < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "tolerances must be finite and non-negative");
        }
    }
}

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw Error(ErrorKind::NonFinite, std::string(what) + " contains NaN or Inf");
    }
}

SubspaceBasis::SubspaceBasis(Matrix basis, const Tolerances& tol) : basis_(std::move(basis)) {
    require_finite(basis_, "subspace basis");
    if (basis_.cols() > 0 && rank(basis_, tol) != basis_.cols()) {
        throw Error(ErrorKind::RankDeficient, "subspace basis columns are linearly dependent");
    }
}

SubspaceBasis SubspaceBasis::zero(Index ambient_dim) {
    SubspaceBasis b;
    b.basis_ = Matrix::Zero(ambient_dim, 0);
    return b;
}

Index rank(const Matrix& m, const Tolerances& tol) {
    require_finite(m, "rank input");
    if (m.size() == 0) {
        return 0;
    }
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        return 0;
    }
    const double threshold = tol.rank_tol * scale;

    Matrix work = m;
    const Index rows = work.rows();
    const Index cols = work.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index pivot = r;
        double best = std::abs(work(r, c));
        for (Index i = r + 1; i < rows; ++i) {
            const double v = std::abs(work(i, c));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best <= threshold) {
            continue;
        }
        work.row(r).swap(work.row(pivot));
        for (Index i = r + 1; i < rows; ++i) {
            const double f = work(i, c) / work(r, c);
            if (f != 0.0) {
                work.row(i).tail(cols - c) -= f * work.row(r).tail(cols - c);
            }
        }
        ++r;
    }
    return r;
}

ColumnSelection select_independent_columns(const Matrix& m, const Tolerances& tol) {
    require_finite(m, "column selection input");
    ColumnSelection out;
    const Index n = m.rows();
    const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        out.basis = SubspaceBasis::zero(n);
        return out;
    }
    const double threshold = tol.rank_tol * scale;

    // Reduced copies of the accepted columns, each with its pivot coordinate.
    std::vector<Vector> reduced;
    std::vector<Index> pivots;
    for (Index j = 0; j < m.cols(); ++j) {
        Vector v = m.col(j);
        for (std::size_t k = 0; k < reduced.size(); ++k) {
            const double f = v(pivots[k]) / reduced[k](pivots[k]);
            if (f != 0.0) {
                v -= f * reduced[k];
            }
            v(pivots[k]) = 0.0;
        }
        Index arg = 0;
        const double best = n > 0 ? v.cwiseAbs().maxCoeff(&arg) : 0.0;
        if (best > threshold) {
            reduced.push_back(std::move(v));
            pivots.push_back(arg);
            out.columns.push_back(j);
        }
        if (static_cast<Index>(out.columns.size()) == n) {
            break;
        }
    }

    Matrix basis(n, static_cast<Index>(out.columns.size()));
    for (std::size_t k = 0; k < out.columns.size(); ++k) {
        basis.col(static_cast<Index>(k)) = m.col(out.columns[k]);
    }
    out.basis = SubspaceBasis(std::move(basis));
    return out;
}

SubspaceBasis column_space_basis(const Matrix& m, const Tolerances& tol) {
    ColumnSelection sel = select_independent_columns(m, tol);
    if (sel.basis.dim() == 0) {
        throw Error(ErrorKind::ZeroMatrix, "matrix has rank 0");
    }
    return std::move(sel.basis);
}

Matrix left_inverse(const Matrix& m, const Tolerances& tol) {
    require_finite(m, "left_inverse input");
    if (rank(m, tol) != m.cols()) {
        throw Error(ErrorKind::RankDeficient, "left_inverse requires full column rank");
    }
    if (m.cols() == 0) {
        return Matrix::Zero(0, m.rows());
    }
    // Least-squares solve of M X = I yields (M^T M)^{-1} M^T without forming M^T M.
    Matrix pinv = m.colPivHouseholderQr().solve(Matrix::Identity(m.rows(), m.rows()));
    if (!approx_equal(pinv * m, Matrix::Identity(m.cols(), m.cols()), tol.eq_tol)) {
        throw Error(ErrorKind::RankDeficient, "left inverse is numerically unreliable");
    }
    return pinv;
}

bool is_nonneg(const Matrix& m, const Tolerances& tol) {
    require_finite(m, "sign test input");
    return m.size() == 0 || m.minCoeff() >= -tol.nonneg_tol;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    return a.size() == 0 || (a - b).cwiseAbs().maxCoeff() <= tol;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "hcat: row counts differ");
    }
    Matrix out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

Matrix select_rows(const Matrix& m, const IndexList& rows) {
    Matrix out(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Index>(i)) = m.row(rows[i]);
    }
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i is exact at every step; guard the product.
        const std::uint64_t factor = n - k + i;
        const std::uint64_t g = std::gcd(result, i);
        const std::uint64_t r = result / g;
        const std::uint64_t f = factor / (i / g);
        if (r != 0 && f > std::numeric_limits<std::uint64_t>::max() / r) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        result = r * f;
    }
    return result;
}

RowSubsets::RowSubsets(Index n, Index m) : n_(n), m_(m) {
    if (m <= 0 || m > n) {
        std::ostringstream msg;
        msg << "row_subsets requires 0 < m <= n (got n=" << n << ", m=" << m << ")";
        throw Error(ErrorKind::InvalidArgument, msg.str());
    }
}

std::uint64_t RowSubsets::count() const noexcept {
    return binomial(static_cast<std::uint64_t>(n_), static_cast<std::uint64_t>(m_));
}

RowSubsets::iterator::iterator(Index n, Index m, bool done) : n_(n), done_(done) {
    if (!done_) {
        current_.resize(static_cast<std::size_t>(m));
        for (Index i = 0; i < m; ++i) {
            current_[static_cast<std::size_t>(i)] = i;
        }
    }
}

RowSubsets::iterator& RowSubsets::iterator::operator++() {
    const auto m = static_cast<Index>(current_.size());
    Index i = m - 1;
    while (i >= 0 && current_[static_cast<std::size_t>(i)] == n_ - m + i) {
        --i;
    }
    if (i < 0) {
        done_ = true;
        current_.clear();
        return *this;
    }
    ++current_[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < m; ++j) {
        current_[static_cast<std::size_t>(j)] = current_[static_cast<std::size_t>(j - 1)] + 1;
    }
    return *this;
}

RowSubsets row_subsets(Index n, Index m) { return RowSubsets(n, m); }

}  // namespace posred
