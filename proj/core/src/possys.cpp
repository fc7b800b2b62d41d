#include "posred/possys.hpp"

#include <algorithm>
#include <sstream>

namespace posred {

void StateSpace::validate_shapes() const {
    require_finite(A, "A");
    require_finite(B, "B");
    require_finite(C, "C");
    if (A.rows() != A.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "A must be square");
    }
    if (B.rows() != A.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "B must have as many rows as A");
    }
    if (C.cols() != A.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "C must have as many columns as A");
    }
}

StateSpace StateSpace::transposed() const {
    return StateSpace{A.transpose(), C.transpose(), B.transpose(), time_domain};
}

bool is_positive(const StateSpace& s, const Tolerances& tol) {
    return is_nonneg(s.A, tol) && is_nonneg(s.B, tol) && is_nonneg(s.C, tol);
}

PositiveLtiSystem::PositiveLtiSystem(StateSpace s, const Tolerances& tol) : s_(std::move(s)) {
    s_.validate_shapes();
    if (!is_positive(s_, tol)) {
        throw Error(ErrorKind::NotPositive, "system is not positive");
    }
}

PositiveLtiSystem::PositiveLtiSystem(Matrix a, Matrix b, Matrix c, TimeDomain td, const Tolerances& tol)
    : PositiveLtiSystem(StateSpace{std::move(a), std::move(b), std::move(c), td}, tol) {}

PositiveLtiSystem PositiveLtiSystem::transposed() const {
    // Transposition preserves entrywise signs, so no tolerance is involved.
    return PositiveLtiSystem(s_.transposed(), Tolerances{0.0, 0.0, 0.0});
}

Matrix reachability_matrix(const StateSpace& s) {
    s.validate_shapes();
    const Index n = s.states();
    const Index m = s.inputs();
    Matrix r(n, n * m);
    Matrix block = s.B;
    for (Index k = 0; k < n; ++k) {
        r.middleCols(k * m, m) = block;
        if (k + 1 < n) {
            block = s.A * block;
        }
    }
    return r;
}

SubspaceBasis reachable_subspace(const StateSpace& s, const Tolerances& tol) {
    return column_space_basis(reachability_matrix(s), tol);
}

Matrix observability_matrix(const StateSpace& s) {
    s.validate_shapes();
    const Index n = s.states();
    const Index p = s.outputs();
    Matrix o(n * p, n);
    Matrix block = s.C;
    for (Index k = 0; k < n; ++k) {
        o.middleRows(k * p, p) = block;
        if (k + 1 < n) {
            block = block * s.A;
        }
    }
    return o;
}

MarkovSequence markov(const StateSpace& s, Index horizon) {
    s.validate_shapes();
    if (horizon < 0) {
        throw Error(ErrorKind::InvalidArgument, "markov horizon must be non-negative");
    }
    MarkovSequence out;
    out.horizon = horizon;
    out.coefficients.reserve(static_cast<std::size_t>(horizon + 1));
    Matrix akb = s.B;
    for (Index k = 0; k <= horizon; ++k) {
        out.coefficients.push_back(s.C * akb);
        if (k < horizon) {
            akb = s.A * akb;
        }
    }
    return out;
}

StateSpace project(const StateSpace& s, const Factorization& f) {
    s.validate_shapes();
    const Index n = s.states();
    if (f.J.rows() != n || f.Jdag.cols() != n || f.Jdag.rows() != f.J.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "factorization shape does not match the system");
    }
    return StateSpace{f.Jdag * s.A * f.J, f.Jdag * s.B, s.C * f.J, s.time_domain};
}

PositiveLtiSystem reduce(const StateSpace& s, const Factorization& f, const Tolerances& tol) {
    s.validate_shapes();
    if (f.J.rows() != s.states()) {
        throw Error(ErrorKind::DimensionMismatch, "factorization shape does not match the system");
    }
    const Index r = rank(f.J, tol);
    if (rank(hcat(f.J, s.A * f.J), tol) != r || rank(hcat(f.J, s.B), tol) != r) {
        throw Error(ErrorKind::NotInvariant,
                    "Im(J) is not A-invariant or does not contain Im(B); exact reduction impossible");
    }
    StateSpace red = project(s, f);
    if (!is_positive(red, tol)) {
        std::ostringstream msg;
        msg << "reduced system is not positive (most negative entry "
            << std::min({red.A.size() ? red.A.minCoeff() : 0.0, red.B.size() ? red.B.minCoeff() : 0.0,
                         red.C.size() ? red.C.minCoeff() : 0.0})
            << ")";
        throw Error(ErrorKind::NotPositive, msg.str());
    }
    return PositiveLtiSystem(std::move(red), tol);
}

EquivalenceCheck compare_markov(const StateSpace& s1, const StateSpace& s2, const Tolerances& tol,
                                std::optional<Index> horizon) {
    s1.validate_shapes();
    s2.validate_shapes();
    if (s1.inputs() != s2.inputs() || s1.outputs() != s2.outputs()) {
        throw Error(ErrorKind::DimensionMismatch, "systems differ in input or output count");
    }
    EquivalenceCheck out;
    out.horizon = horizon.value_or(s1.states() + s2.states());
    const MarkovSequence m1 = markov(s1, out.horizon);
    const MarkovSequence m2 = markov(s2, out.horizon);
    double scale = 0.0;
    double err = 0.0;
    for (std::size_t k = 0; k < m1.coefficients.size(); ++k) {
        const Matrix& a = m1.coefficients[k];
        const Matrix& b = m2.coefficients[k];
        if (a.size() == 0) {
            continue;
        }
        scale = std::max({scale, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
        err = std::max(err, (a - b).cwiseAbs().maxCoeff());
    }
    out.scale = scale;
    out.max_abs_error = err;
    out.equivalent = err <= tol.eq_tol * std::max(1.0, scale);
    return out;
}

bool equivalent(const StateSpace& s1, const StateSpace& s2, const Tolerances& tol,
                std::optional<Index> horizon) {
    return compare_markov(s1, s2, tol, horizon).equivalent;
}

std::vector<Vector> simulate(const PositiveLtiSystem& s, const Vector& x0, const std::vector<Vector>& inputs,
                             const Tolerances& tol) {
    if (s.time_domain() != TimeDomain::Discrete) {
        throw Error(ErrorKind::UnsupportedTimeDomain, "simulate supports discrete-time systems only");
    }
    if (x0.size() != s.states()) {
        throw Error(ErrorKind::DimensionMismatch, "initial state has the wrong length");
    }
    require_finite(x0, "initial state");
    if (x0.size() > 0 && x0.minCoeff() < -tol.nonneg_tol) {
        throw Error(ErrorKind::NegativeInput, "initial state has negative entries");
    }
    for (const Vector& u : inputs) {
        if (u.size() != s.inputs()) {
            throw Error(ErrorKind::DimensionMismatch, "input vector has the wrong length");
        }
        require_finite(u, "input");
        if (u.size() > 0 && u.minCoeff() < -tol.nonneg_tol) {
            throw Error(ErrorKind::NegativeInput, "input sequence has negative entries");
        }
    }

    std::vector<Vector> outputs;
    outputs.reserve(inputs.size() + 1);
    Vector x = x0;
    auto emit = [&](const Vector& state) {
        Vector y = s.C() * state;
        if ((state.size() > 0 && state.minCoeff() < -tol.nonneg_tol) ||
            (y.size() > 0 && y.minCoeff() < -tol.nonneg_tol)) {
            throw Error(ErrorKind::InternalVerification, "positive system produced a negative trajectory");
        }
        outputs.push_back(std::move(y));
    };
    emit(x);
    for (const Vector& u : inputs) {
        x = s.A() * x + s.B() * u;
        emit(x);
    }
    return outputs;
}

}  // namespace posred
