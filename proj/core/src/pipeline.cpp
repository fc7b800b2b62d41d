#include "posred/pipeline.hpp"

#include <sstream>

namespace posred {

std::string_view to_string(ReductionMethod m) noexcept {
    switch (m) {
        case ReductionMethod::Minimal: return "minimal";
        case ReductionMethod::Algebraic: return "algebraic";
        case ReductionMethod::None: return "none";
    }
    return "none";
}

std::string_view to_string(ReductionSpace s) noexcept {
    return s == ReductionSpace::Reachable ? "reachable" : "observable";
}

namespace {

void finish(ReductionReport& report, const PositiveLtiSystem& s, const Factorization& f,
            const ReductionOptions& opts) {
    PositiveLtiSystem reduced = reduce(s, f, opts.tol);
    const Index horizon = opts.horizon.value_or(s.states() + reduced.states());
    const EquivalenceCheck check = compare_markov(s, reduced, opts.tol, horizon);
    report.verification.horizon = horizon;
    report.verification.markov_match = check.equivalent;
    report.verification.positivity = is_positive(reduced, opts.tol);
    if (!report.verification.markov_match || !report.verification.positivity) {
        std::ostringstream msg;
        msg << "reduced system failed re-verification (markov error " << check.max_abs_error << ", scale "
            << check.scale << ")";
        throw Error(ErrorKind::InternalVerification, msg.str());
    }
    report.reduced_dim = reduced.states();
    report.factorization = f;
    report.reduced_system = std::move(reduced);
}

ReductionReport reachable_impl(const PositiveLtiSystem& s, const ReductionOptions& opts, const char* space_word) {
    opts.tol.validate();
    ReductionReport report;
    report.original_dim = s.states();

    const SubspaceBasis reach = select_independent_columns(reachability_matrix(s), opts.tol).basis;
    report.subspace_dim = reach.dim();
    if (reach.dim() == s.states()) {
        report.reduced_dim = s.states();
        report.diagnostics.push_back(std::string("already ") + space_word);
        return report;
    }

    if (!opts.force_algebraic) {
        std::optional<Factorization> f;
        try {
            f = find_nonneg_factorization(reach, opts.tol, opts.budget);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::TooLarge) {
                throw Error(ErrorKind::TooLarge, std::string("minimal route not evaluated: ") + e.what());
            }
            throw;
        }
        if (f) {
            report.method = ReductionMethod::Minimal;
            report.diagnostics.push_back("non-negative factorization of the projector found");
            finish(report, s, *f, opts);
            return report;
        }
        report.diagnostics.push_back("no non-negative factorization of the projector exists");
    } else {
        report.diagnostics.push_back("minimal route disabled");
    }

    if (reach.dim() == 0) {
        // Unreachable from every input: the zero subspace factors trivially.
        report.method = ReductionMethod::Algebraic;
        finish(report, s, Factorization{Matrix::Zero(s.states(), 0), Matrix::Zero(0, s.states()), {}}, opts);
        return report;
    }

    const ReferenceVector p = choose_p(reach, opts.seed, opts.tol);
    DistortedAlgebra alg = closure(reach, p, opts.tol);
    {
        std::ostringstream msg;
        msg << "distorted algebra has dimension " << alg.dim() << " (reference vector p = [";
        for (Index i = 0; i < p.size(); ++i) {
            msg << (i ? ", " : "") << p.values()(i);
        }
        msg << "])";
        report.diagnostics.push_back(msg.str());
    }
    const Index alg_dim = alg.dim();
    report.algebra = std::move(alg);
    if (alg_dim < s.states()) {
        report.method = ReductionMethod::Algebraic;
        finish(report, s, canonicalize(algebra_factorization(*report.algebra, opts.tol)), opts);
        return report;
    }
    report.reduced_dim = s.states();
    report.diagnostics.push_back("RPMR could not be performed");
    return report;
}

}  // namespace

ReductionReport rpmr_reachable(const PositiveLtiSystem& s, const ReductionOptions& opts) {
    ReductionReport r = reachable_impl(s, opts, "reachable");
    r.space = ReductionSpace::Reachable;
    return r;
}

ReductionReport transpose_report(const ReductionReport& r) {
    ReductionReport out = r;
    if (r.factorization) {
        Factorization f;
        f.J = r.factorization->Jdag.transpose();
        f.Jdag = r.factorization->J.transpose();
        f.pivot_rows = r.factorization->pivot_rows;
        out.factorization = std::move(f);
    }
    if (r.reduced_system) {
        out.reduced_system = r.reduced_system->transposed();
    }
    return out;
}

ReductionReport rpmr_observable(const PositiveLtiSystem& s, const ReductionOptions& opts) {
    ReductionReport r = transpose_report(reachable_impl(s.transposed(), opts, "observable"));
    r.space = ReductionSpace::Observable;
    r.diagnostics.push_back("sufficient test only (Q=I): failure does not rule out other observable spaces");
    return r;
}

std::vector<PerturbationOutcome> perturbation_experiment(const PositiveLtiSystem& s, const Factorization& naive,
                                                         const Factorization& robust,
                                                         const std::vector<PositiveLtiSystem>& perturbations,
                                                         const Tolerances& tol) {
    std::vector<PerturbationOutcome> out;
    out.reserve(perturbations.size());
    for (const PositiveLtiSystem& pert : perturbations) {
        if (pert.states() != s.states() || pert.inputs() != s.inputs() || pert.outputs() != s.outputs()) {
            throw Error(ErrorKind::DimensionMismatch, "perturbed system differs in dimensions");
        }
        PerturbationOutcome o;
        o.naive_positive = is_positive(project(pert, naive), tol);
        const StateSpace red = project(pert, robust);
        o.robust_positive = is_positive(red, tol);
        o.equivalent = equivalent(pert, red, tol);
        out.push_back(o);
    }
    return out;
}

}  // namespace posred
