#pragma once

#include <string>

#include "fixtures.hpp"
#include "posred/pipeline.hpp"

namespace posred::test {

/// First differing field of two reports, ignoring `space` and diagnostics.
/// Empty when every other field matches within `tol`.
inline std::string report_mismatch(const ReductionReport& a, const ReductionReport& b, double tol = 1e-12) {
    if (a.method != b.method) return "method";
    if (a.original_dim != b.original_dim) return "original_dim";
    if (a.subspace_dim != b.subspace_dim) return "subspace_dim";
    if (a.reduced_dim != b.reduced_dim) return "reduced_dim";
    if (a.factorization.has_value() != b.factorization.has_value()) return "factorization presence";
    if (a.factorization) {
        if (max_abs_diff(a.factorization->J, b.factorization->J) > tol) return "J";
        if (max_abs_diff(a.factorization->Jdag, b.factorization->Jdag) > tol) return "Jdag";
        if (a.factorization->pivot_rows != b.factorization->pivot_rows) return "pivot_rows";
    }
    if (a.reduced_system.has_value() != b.reduced_system.has_value()) return "reduced_system presence";
    if (a.reduced_system) {
        if (max_abs_diff(a.reduced_system->A(), b.reduced_system->A()) > tol) return "reduced A";
        if (max_abs_diff(a.reduced_system->B(), b.reduced_system->B()) > tol) return "reduced B";
        if (max_abs_diff(a.reduced_system->C(), b.reduced_system->C()) > tol) return "reduced C";
    }
    if (a.verification.markov_match != b.verification.markov_match) return "markov_match";
    if (a.verification.positivity != b.verification.positivity) return "positivity";
    if (a.verification.horizon != b.verification.horizon) return "horizon";
    if (a.algebra.has_value() != b.algebra.has_value()) return "algebra presence";
    if (a.algebra) {
        if (max_abs_diff(a.algebra->generators, b.algebra->generators) > tol) return "generators";
        if (a.algebra->blocks != b.algebra->blocks) return "blocks";
    }
    return {};
}

}  // namespace posred::test
