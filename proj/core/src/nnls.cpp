#include "posred/nnls.hpp"

#include <cmath>
#include <limits>

namespace posred {

namespace {

// Unconstrained least squares restricted to the passive columns.
Vector passive_solve(const Matrix& e, const Vector& d, const std::vector<bool>& passive) {
    IndexList cols;
    for (Index j = 0; j < static_cast<Index>(passive.size()); ++j) {
        if (passive[static_cast<std::size_t>(j)]) {
            cols.push_back(j);
        }
    }
    Vector z = Vector::Zero(e.cols());
    if (cols.empty()) {
        return z;
    }
    Matrix sub(e.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
        sub.col(static_cast<Index>(k)) = e.col(cols[k]);
    }
    const Vector zs = sub.colPivHouseholderQr().solve(d);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        z(cols[k]) = zs(static_cast<Index>(k));
    }
    return z;
}

}  // namespace

NnlsResult nnls(const Matrix& e, const Vector& d, int max_iterations) {
    require_finite(e, "nnls matrix");
    require_finite(d, "nnls target");
    if (e.rows() != d.size()) {
        throw Error(ErrorKind::DimensionMismatch, "nnls: target length differs from row count");
    }
    const Index n = e.cols();
    if (max_iterations <= 0) {
        max_iterations = static_cast<int>(3 * n + 10);
    }

    Vector x = Vector::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    const double scale = (e.size() == 0 ? 0.0 : e.cwiseAbs().maxCoeff()) * std::max(1.0, d.cwiseAbs().sum());
    const double tol = 10.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<Index>(n, 1)) *
                       std::max(scale, 1.0);

    int iter = 0;
    while (iter < max_iterations) {
        const Vector w = e.transpose() * (d - e * x);
        Index best = -1;
        double best_w = tol;
        for (Index j = 0; j < n; ++j) {
            if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
                best_w = w(j);
                best = j;
            }
        }
        if (best < 0) {
            break;
        }
        passive[static_cast<std::size_t>(best)] = true;

        // Inner loop: step back toward feasibility until the passive solve is positive.
        while (true) {
            ++iter;
            const Vector z = passive_solve(e, d, passive);
            bool feasible = true;
            for (Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                x = z;
                break;
            }
            double alpha = std::numeric_limits<double>::infinity();
            for (Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
                    const double denom = x(j) - z(j);
                    if (denom > 0.0) {
                        alpha = std::min(alpha, x(j) / denom);
                    }
                }
            }
            if (!std::isfinite(alpha)) {
                alpha = 0.0;
            }
            x += alpha * (z - x);
            for (Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
            }
            if (iter >= max_iterations) {
                break;
            }
        }
    }

    NnlsResult out;
    out.x = x.cwiseMax(0.0);
    out.residual_norm = (e * out.x - d).norm();
    out.iterations = iter;
    return out;
}

}  // namespace posred
