#pragma once

#include <cstdint>
#include <optional>

#include "posred/possys.hpp"

namespace posred::cli {

/// Structure of the planted invariant subspace.
enum class LiftKind {
    Random,     ///< one of the kinds below, drawn from the seed
    Identity,   ///< the planted subspace is a coordinate subspace
    Monotone,   ///< image of a monotone non-negative lift: minimal route applies
    Generic,    ///< image of a dense non-negative lift: usually not factorizable
};

struct GeneratorSpec {
    Index n = 4;
    Index inputs = 1;
    Index outputs = 1;
    /// Plants a non-negative A-invariant subspace of this dimension that
    /// contains Im(B), so dim(reachable space) <= reachable_dim.
    std::optional<Index> reachable_dim;
    /// Probability that an unconstrained entry is nonzero, in (0, 1].
    double density = 1.0;
    std::uint64_t seed = 0;
    LiftKind lift = LiftKind::Random;

    /// Throws posred::Error(InvalidArgument) on an inconsistent spec.
    void validate() const;
};

/// Deterministic for a fixed spec. With a planted dimension q the system is
/// block upper-triangular in a randomly permuted frame:
///
///     A = [L M  A12]   B = [L Br]
///         [ 0   A22]       [  0 ]
///
/// where L (q x r) is the lift and Im(L) is invariant under L M.
PositiveLtiSystem generate_system(const GeneratorSpec& spec);

/// SplitMix64 step; used to derive independent per-item seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace posred::cli
