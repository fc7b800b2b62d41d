#pragma once

#include <initializer_list>
#include <limits>
#include <optional>

#include "posred/error.hpp"
#include "posred/possys.hpp"

namespace posred::test {

/// Kind of the posred::Error thrown by f, or nullopt if f returns normally.
template <class F>
std::optional<ErrorKind> error_kind(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    const auto r = static_cast<Index>(rows.size());
    const auto c = r == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
    Matrix m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (double v : row) {
            m(i, j++) = v;
        }
        ++i;
    }
    return m;
}

inline Vector vec(std::initializer_list<double> values) {
    Vector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double x : values) {
        v(i++) = x;
    }
    return v;
}

/// Four-state single-input system whose reachable space is span{e1, e2};
/// `eps` perturbs A(0,1) and B(1).
inline PositiveLtiSystem example1(double eps, const Matrix& c = Matrix::Identity(4, 4)) {
    Matrix a = mat({{1, 1 + eps, 0, 0}, {1, 0, 2, 0}, {0, 0, 1, 2}, {0, 0, 3, 1}});
    Matrix b = mat({{1}, {1 + eps}, {0}, {0}});
    return PositiveLtiSystem(std::move(a), std::move(b), c);
}

/// Swap dynamics on (x1, x2) and two identical integrators (x3, x4).
inline PositiveLtiSystem example2(double eps, const Matrix& c = mat({{0, 0, 1, 0}})) {
    Matrix a = mat({{0, eps, 0, 0}, {eps, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    Matrix b = mat({{0}, {1}, {1}, {1}});
    return PositiveLtiSystem(std::move(a), std::move(b), c);
}

/// Moore-Penrose pair of the truncated reachability matrix of example1(0).
inline Matrix example1_rbar() { return mat({{1, 2}, {1, 1}, {0, 0}, {0, 0}}); }
inline Matrix example1_rbar_pinv() { return mat({{-1, 2, 0, 0}, {1, -1, 0, 0}}); }

/// A = 0 and B spanning {x : x1 + x3 = x2 + x4}, whose non-negative part is a
/// four-ray cone: no minimal robust reduction, and the enclosing algebra is R^4.
inline PositiveLtiSystem square_cone_system() {
    Matrix b = mat({{1, 0, 0}, {1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
    return PositiveLtiSystem(Matrix::Zero(4, 4), std::move(b), Matrix::Identity(4, 4));
}

}  // namespace posred::test
