#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posred/distalg.hpp"
#include "posred/factorize.hpp"
#include "posred/possys.hpp"

namespace posred {

enum class ReductionMethod { Minimal, Algebraic, None };
enum class ReductionSpace { Reachable, Observable };

std::string_view to_string(ReductionMethod m) noexcept;
std::string_view to_string(ReductionSpace s) noexcept;

struct Verification {
    bool markov_match = false;
    bool positivity = false;
    Index horizon = 0;
};

struct ReductionReport {
    ReductionMethod method = ReductionMethod::None;
    ReductionSpace space = ReductionSpace::Reachable;
    Index original_dim = 0;
    /// Dimension of the target subspace (reachable or observable).
    Index subspace_dim = 0;
    Index reduced_dim = 0;
    std::optional<Factorization> factorization;
    std::optional<PositiveLtiSystem> reduced_system;
    Verification verification;
    /// Algebra computed by the fallback route, when it ran.
    std::optional<DistortedAlgebra> algebra;
    std::vector<std::string> diagnostics;
};

struct ReductionOptions {
    Tolerances tol;
    std::uint64_t budget = kDefaultSubsetBudget;
    std::optional<std::uint64_t> seed;
    /// Skip the minimal route and go straight to the algebra enlargement.
    bool force_algebraic = false;
    /// Verification horizon; defaults to original_dim + reduced_dim.
    std::optional<Index> horizon;
};

/// Robust positive reduction onto the reachable space: first a minimal
/// projector with non-negative factors, otherwise the smallest enclosing
/// distorted algebra when it is a proper subspace.
///
/// Propagates TooLarge from the subset search. Throws InternalVerification
/// if a produced reduction fails the Markov or positivity re-check.
ReductionReport rpmr_reachable(const PositiveLtiSystem& s, const ReductionOptions& opts = {});

/// Same procedure on the dual system (A^T, C^T, B^T), transposed back. Only
/// the observable space with Q = I is tried, so a negative outcome is not
/// conclusive.
ReductionReport rpmr_observable(const PositiveLtiSystem& s, const ReductionOptions& opts = {});

/// Report of the dual problem mapped back to the primal: factors become
/// (Jdag^T, J^T) and the reduced triple is transposed.
ReductionReport transpose_report(const ReductionReport& r);

struct PerturbationOutcome {
    bool naive_positive = false;
    bool robust_positive = false;
    bool equivalent = false;
};

/// Reduces every perturbed system with both factor pairs. `naive` may be
/// mixed-sign. Throws DimensionMismatch if a perturbation changes shapes.
std::vector<PerturbationOutcome> perturbation_experiment(const PositiveLtiSystem& s, const Factorization& naive,
                                                         const Factorization& robust,
                                                         const std::vector<PositiveLtiSystem>& perturbations,
                                                         const Tolerances& tol = {});

}  // namespace posred
