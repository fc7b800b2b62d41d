#include "posred/factorize.hpp"

#include <sstream>

namespace posred {

std::optional<Factorization> find_nonneg_factorization(const SubspaceBasis& v, const Tolerances& tol,
                                                       std::uint64_t budget) {
    tol.validate();
    const Matrix& basis = v.matrix();
    const Index n = basis.rows();
    const Index m = basis.cols();

    if (m == 0) {
        return Factorization{Matrix::Zero(n, 0), Matrix::Zero(0, n), {}};
    }

    const RowSubsets subsets = row_subsets(n, m);
    if (subsets.count() > budget) {
        std::ostringstream msg;
        msg << "row-subset search needs C(" << n << "," << m << ") = " << subsets.count()
            << " candidates, budget is " << budget;
        throw Error(ErrorKind::TooLarge, msg.str());
    }

    std::vector<bool> in_subset(static_cast<std::size_t>(n));
    for (const IndexList& rows : subsets) {
        const Matrix v0 = select_rows(basis, rows);
        if (rank(v0, tol) != m) {
            continue;
        }
        const Eigen::PartialPivLU<Matrix> lu(v0);
        const Matrix v0_inv = lu.inverse();

        std::fill(in_subset.begin(), in_subset.end(), false);
        for (Index r : rows) {
            in_subset[static_cast<std::size_t>(r)] = true;
        }
        bool ok = true;
        for (Index i = 0; i < n && ok; ++i) {
            if (in_subset[static_cast<std::size_t>(i)]) {
                continue;
            }
            const Eigen::RowVectorXd ratio = basis.row(i) * v0_inv;
            ok = ratio.minCoeff() >= -tol.nonneg_tol;
        }
        if (!ok) {
            continue;
        }

        Factorization f;
        f.J = basis * v0_inv;
        f.Jdag = Matrix::Zero(m, n);
        for (Index k = 0; k < m; ++k) {
            const Index r = rows[static_cast<std::size_t>(k)];
            f.J.row(r) = Eigen::RowVectorXd::Unit(m, k);
            f.Jdag(k, r) = 1.0;
        }
        f.pivot_rows = rows;
        if (!verify_factorization(f, v, tol)) {
            throw Error(ErrorKind::InternalVerification,
                        "accepted row subset failed the factorization self-check");
        }
        return f;
    }
    return std::nullopt;
}

bool verify_factorization(const Factorization& f, const SubspaceBasis& v, const Tolerances& tol) {
    const Index n = v.ambient_dim();
    const Index m = v.dim();
    if (f.J.rows() != n || f.J.cols() != m || f.Jdag.rows() != m || f.Jdag.cols() != n) {
        return false;
    }
    if (!f.J.allFinite() || !f.Jdag.allFinite()) {
        return false;
    }
    if (!is_nonneg(f.J, tol) || !is_nonneg(f.Jdag, tol)) {
        return false;
    }
    if (!approx_equal(f.Jdag * f.J, Matrix::Identity(m, m), tol.eq_tol)) {
        return false;
    }
    if (m == 0) {
        return true;
    }
    return rank(f.J, tol) == m && rank(hcat(f.J, v.matrix()), tol) == m;
}

Factorization canonicalize(const Factorization& f) {
    const Index m = f.J.cols();
    const Index n = f.J.rows();
    Factorization out;
    out.J = f.J;
    out.Jdag = Matrix::Zero(m, n);
    out.pivot_rows.resize(static_cast<std::size_t>(m));
    for (Index k = 0; k < m; ++k) {
        Index r = 0;
        f.Jdag.row(k).cwiseAbs().maxCoeff(&r);
        const double pivot = f.J(r, k);
        if (pivot == 0.0) {
            throw Error(ErrorKind::InvalidArgument, "canonicalize: pivot entry of J is zero");
        }
        out.J.col(k) /= pivot;
        out.J(r, k) = 1.0;
        out.Jdag(k, r) = 1.0;
        out.pivot_rows[static_cast<std::size_t>(k)] = r;
    }
    return out;
}

Matrix projector(const Factorization& f) { return f.J * f.Jdag; }

}  // namespace posred
