#include "posred/distalg.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "posred/monotone.hpp"

namespace posred {

ReferenceVector::ReferenceVector(Vector p) : p_(std::move(p)) {
    for (Index i = 0; i < p_.size(); ++i) {
        if (!std::isfinite(p_(i)) || p_(i) < 0.0) {
            throw Error(ErrorKind::InvalidArgument, "reference vector must be finite and non-negative");
        }
        if (p_(i) > 0.0) {
            support_.push_back(i);
        }
    }
}

Vector wedge(const Vector& x, const Vector& y, const ReferenceVector& p) {
    if (x.size() != p.size() || y.size() != p.size()) {
        throw Error(ErrorKind::DimensionMismatch, "wedge: vector lengths differ");
    }
    Vector out = Vector::Zero(p.size());
    for (Index i = 0; i < p.size(); ++i) {
        if (p.supports(i)) {
            out(i) = x(i) * y(i) / p.values()(i);
        } else if (x(i) != 0.0 || y(i) != 0.0) {
            throw Error(ErrorKind::UnsupportedCoordinate, "wedge: operand is nonzero outside supp(p)");
        }
    }
    return out;
}

IndexList subspace_support(const SubspaceBasis& v, const Tolerances& tol) {
    const Matrix& b = v.matrix();
    IndexList out;
    if (b.size() == 0) {
        return out;
    }
    const double zero = tol.eq_tol * b.cwiseAbs().maxCoeff();
    for (Index i = 0; i < b.rows(); ++i) {
        if (b.row(i).cwiseAbs().maxCoeff() > zero) {
            out.push_back(i);
        }
    }
    return out;
}

namespace {

bool admissible(const Vector& p, const IndexList& support) {
    std::vector<bool> on(static_cast<std::size_t>(p.size()), false);
    for (Index i : support) {
        on[static_cast<std::size_t>(i)] = true;
    }
    for (Index i = 0; i < p.size(); ++i) {
        if (on[static_cast<std::size_t>(i)] ? !(p(i) > 0.0) : p(i) != 0.0) {
            return false;
        }
    }
    return true;
}

}  // namespace

ReferenceVector choose_p(const SubspaceBasis& v, std::optional<std::uint64_t> seed, const Tolerances& tol,
                         int max_retries) {
    if (v.dim() == 0) {
        throw Error(ErrorKind::InvalidArgument, "choose_p requires a non-trivial subspace");
    }
    const Matrix& b = v.matrix();
    const IndexList support = subspace_support(v, tol);
    const double zero = tol.eq_tol * b.cwiseAbs().maxCoeff();

    // Entries below the support threshold are rounding residue.
    auto snap = [&](Vector p) {
        for (Index i = 0; i < p.size(); ++i) {
            if (std::abs(p(i)) <= zero) {
                p(i) = 0.0;
            }
        }
        return p;
    };

    Vector p = snap(b.rowwise().sum());
    if (admissible(p, support)) {
        return ReferenceVector(std::move(p));
    }
    std::mt19937_64 rng(seed.value_or(0));
    std::uniform_real_distribution<double> weight(1.0, 2.0);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Vector lambda(b.cols());
        for (Index k = 0; k < b.cols(); ++k) {
            lambda(k) = weight(rng);
        }
        p = snap(b * lambda);
        if (admissible(p, support)) {
            return ReferenceVector(std::move(p));
        }
    }
    throw Error(ErrorKind::SupportFailure,
                "no combination of the basis is strictly positive exactly on the subspace support");
}

namespace {

// Orthonormal basis of the column space. Re-orthonormalizing every round
// keeps products of nearly parallel vectors from shrinking geometrically
// below the rank threshold.
Matrix orthonormal_columns(const Matrix& m, const Tolerances& tol) {
    Eigen::ColPivHouseholderQR<Matrix> qr(m);
    qr.setThreshold(tol.rank_tol);
    const Index r = qr.rank();
    return Matrix(qr.householderQ()) * Matrix::Identity(m.rows(), r);
}

Matrix pairwise_products(const Matrix& b) {
    const Index d = b.cols();
    Matrix out(b.rows(), d * (d + 1) / 2);
    Index c = 0;
    for (Index i = 0; i < d; ++i) {
        for (Index j = i; j < d; ++j) {
            out.col(c++) = b.col(i).cwiseProduct(b.col(j));
        }
    }
    return out;
}

}  // namespace

DistortedAlgebra closure(const SubspaceBasis& v, const ReferenceVector& p, const Tolerances& tol) {
    tol.validate();
    const Index n = v.ambient_dim();
    if (p.size() != n) {
        throw Error(ErrorKind::DimensionMismatch, "closure: reference vector length differs from ambient dimension");
    }
    for (Index i : subspace_support(v, tol)) {
        if (!p.supports(i)) {
            throw Error(ErrorKind::UnsupportedCoordinate, "closure: supp(V) is not contained in supp(p)");
        }
    }

    DistortedAlgebra alg;
    const IndexList& sup = p.support();
    const auto k = static_cast<Index>(sup.size());
    if (v.dim() == 0 || k == 0) {
        alg.p = ReferenceVector(Vector::Zero(n));
        alg.generators = Matrix::Zero(n, 0);
        return alg;
    }

    // p^{-1} transform on the support.
    Matrix w(k, v.dim());
    for (Index r = 0; r < k; ++r) {
        w.row(r) = v.matrix().row(sup[static_cast<std::size_t>(r)]) / p.values()(sup[static_cast<std::size_t>(r)]);
    }

    // Fixpoint closure under the plain entrywise product; rank strictly grows
    // until it stalls, so at most k - dim(V) rounds.
    Matrix basis = orthonormal_columns(column_space_basis(w, tol).matrix(), tol);
    while (true) {
        const Matrix next = orthonormal_columns(hcat(basis, pairwise_products(basis)), tol);
        if (next.cols() == basis.cols()) {
            break;
        }
        basis = next;
    }
    const Index q = basis.cols();

    // Coordinates i ~ j iff rows i and j of an orthonormal basis coincide.
    const Matrix& orth = basis;
    std::vector<IndexList> local_blocks;
    std::vector<bool> assigned(static_cast<std::size_t>(k), false);
    for (Index i = 0; i < k; ++i) {
        if (assigned[static_cast<std::size_t>(i)]) {
            continue;
        }
        assigned[static_cast<std::size_t>(i)] = true;
        if (orth.row(i).norm() <= tol.eq_tol) {
            continue;  // coordinate vanishes on the whole algebra
        }
        IndexList block{i};
        for (Index j = i + 1; j < k; ++j) {
            if (!assigned[static_cast<std::size_t>(j)] &&
                (orth.row(i) - orth.row(j)).norm() <= tol.eq_tol * std::max(1.0, orth.row(i).norm())) {
                assigned[static_cast<std::size_t>(j)] = true;
                block.push_back(j);
            }
        }
        local_blocks.push_back(std::move(block));
    }
    if (static_cast<Index>(local_blocks.size()) != q) {
        std::ostringstream msg;
        msg << "closure has rank " << q << " but " << local_blocks.size() << " coordinate blocks";
        throw Error(ErrorKind::ClosureMismatch, msg.str());
    }

    // Map back: f_k = p ^_1 chi_{S_k}, embedded in R^n.
    Vector p_alg = Vector::Zero(n);
    alg.generators = Matrix::Zero(n, q);
    for (Index b = 0; b < q; ++b) {
        IndexList global;
        for (Index local : local_blocks[static_cast<std::size_t>(b)]) {
            const Index i = sup[static_cast<std::size_t>(local)];
            global.push_back(i);
            alg.generators(i, b) = p.values()(i);
            p_alg(i) = p.values()(i);
        }
        alg.blocks.push_back(std::move(global));
    }
    alg.p = ReferenceVector(std::move(p_alg));

    if (rank(hcat(alg.generators, v.matrix()), tol) != q) {
        throw Error(ErrorKind::ClosureMismatch, "computed algebra does not contain the subspace");
    }
    return alg;
}

Factorization algebra_factorization(const DistortedAlgebra& alg, const Tolerances& tol) {
    const MonotoneCertificate cert = is_monotone_nonneg_rect(alg.generators, tol);
    if (!cert.monotone) {
        throw Error(ErrorKind::InternalVerification, "idempotent generator matrix failed the monotone test");
    }
    Factorization f;
    f.J = alg.generators;
    f.Jdag = *cert.nonneg_left_inverse;
    f.pivot_rows.resize(static_cast<std::size_t>(alg.dim()));
    for (Index k = 0; k < alg.dim(); ++k) {
        Index r = 0;
        f.Jdag.row(k).maxCoeff(&r);
        f.pivot_rows[static_cast<std::size_t>(k)] = r;
    }
    return f;
}

bool is_distorted_algebra(const SubspaceBasis& v, const ReferenceVector& p, const Tolerances& tol) {
    return closure(v, p, tol).dim() == v.dim();
}

}  // namespace posred
