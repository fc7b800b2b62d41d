#include "posred/monotone.hpp"

#include <algorithm>
#include <cmath>

#include "posred/nnls.hpp"

namespace posred {

MonotoneCertificate is_monotone_general(const Matrix& x, const Tolerances& tol) {
    require_finite(x, "monotone test input");
    const Index n = x.rows();
    const Index m = x.cols();
    MonotoneCertificate cert;
    if (n < m) {
        return cert;
    }

    const Matrix xt = x.transpose();
    Matrix left(m, n);
    for (Index j = 0; j < m; ++j) {
        const Vector target = Vector::Unit(m, j);
        const NnlsResult sol = nnls(xt, target);
        if (sol.residual_norm > tol.eq_tol * (1.0 + target.norm())) {
            return cert;
        }
        left.row(j) = sol.x.transpose();
    }
    cert.monotone = true;
    cert.nonneg_left_inverse = std::move(left);
    return cert;
}

bool has_orthogonal_columns(const Matrix& x, const Tolerances& tol) {
    const Vector norms = x.colwise().norm();
    for (Index i = 0; i < x.cols(); ++i) {
        for (Index j = i + 1; j < x.cols(); ++j) {
            const double ip = std::abs(x.col(i).dot(x.col(j)));
            if (ip > tol.eq_tol * norms(i) * norms(j)) {
                return false;
            }
        }
    }
    return true;
}

bool is_monotone_nonneg_square(const Matrix& x, const Tolerances& tol) {
    require_finite(x, "monotone test input");
    if (x.rows() != x.cols()) {
        throw Error(ErrorKind::NotSquare, "is_monotone_nonneg_square requires a square matrix");
    }
    if (!is_nonneg(x, tol)) {
        throw Error(ErrorKind::NotNonneg, "is_monotone_nonneg_square requires a non-negative matrix");
    }
    if (rank(x, tol) != x.rows()) {
        throw Error(ErrorKind::Singular, "is_monotone_nonneg_square requires an invertible matrix");
    }
    return has_orthogonal_columns(x, tol);
}

MonotoneCertificate is_monotone_nonneg_rect(const Matrix& x, const Tolerances& tol) {
    require_finite(x, "monotone test input");
    if (!is_nonneg(x, tol)) {
        throw Error(ErrorKind::NotNonneg, "is_monotone_nonneg_rect requires a non-negative matrix");
    }
    const Index n = x.rows();
    const Index m = x.cols();
    if (n < m || rank(x, tol) != m) {
        throw Error(ErrorKind::RankDeficient, "is_monotone_nonneg_rect requires full column rank");
    }

    MonotoneCertificate cert;
    if (m == 0) {
        cert.monotone = true;
        cert.nonneg_left_inverse = Matrix::Zero(0, n);
        cert.orthogonal_row_set = IndexList{};
        return cert;
    }

    // Entries at or below this level are structural zeros.
    const double zero = tol.eq_tol * x.cwiseAbs().maxCoeff();

    // First row supported on column j alone, for each column j. Zero rows and
    // rows with two or more support entries are never candidates.
    IndexList pivot(static_cast<std::size_t>(m), -1);
    Index found = 0;
    for (Index i = 0; i < n && found < m; ++i) {
        Index support_col = -1;
        Index support_size = 0;
        for (Index j = 0; j < m; ++j) {
            if (x(i, j) > zero) {
                support_col = j;
                if (++support_size > 1) {
                    break;
                }
            }
        }
        if (support_size == 1 && pivot[static_cast<std::size_t>(support_col)] < 0) {
            pivot[static_cast<std::size_t>(support_col)] = i;
            ++found;
        }
    }
    if (found < m) {
        return cert;
    }

    Matrix left = Matrix::Zero(m, n);
    for (Index j = 0; j < m; ++j) {
        const Index r = pivot[static_cast<std::size_t>(j)];
        left(j, r) = 1.0 / x(r, j);
    }
    IndexList rows(pivot.begin(), pivot.end());
    std::sort(rows.begin(), rows.end());

    cert.monotone = true;
    cert.nonneg_left_inverse = std::move(left);
    cert.orthogonal_row_set = std::move(rows);
    return cert;
}

}  // namespace posred
