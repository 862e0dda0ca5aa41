#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hyperprox/proximity.hpp"

namespace hyperprox {

/// Outcome of an existential search. When `holds` is set, `witness` carries
/// the separating sets: (C) for strongly_far, (E, C) for hat_strongly_far.
struct WitnessResult {
    bool holds = false;
    /// One of the inputs was empty; property checks skip these.
    bool degenerate = false;
    std::vector<Subset> witness;
    /// hat_strongly_far only: the disjoint regular opens int(cl E), int(cl C).
    std::vector<Subset> regions;

    /// The separator is the empty set or the whole space.
    bool trivial_witness(const GroundSpace& space) const;
};

/// A is far from the complement of B.
bool strongly_included(const ProximityRelation& prox, Subset a, Subset b);

/// A far B, and some C has A far X\C and C far B. Searches all 2^n sets C in
/// ascending mask order; throws CapExceeded above the pair cap.
WitnessResult strongly_far(const ProximityRelation& prox, Subset a, Subset b);

/// A and B sit inside disjoint regular opens int(cl E) and int(cl C).
/// The witness is the first (E, C) in lexicographic mask order.
WitnessResult hat_strongly_far(const GroundSpace& space, Subset a, Subset b);

/// "A near B iff A is not strongly far from B", memoized.
ProximityRelation derived_near_from_sf(const ProximityRelation& prox);

using SubsetPair = std::pair<Subset, Subset>;

struct SfHatReport {
    bool precondition_met = false;
    std::string precondition_note;
    std::size_t pairs_checked = 0;
    std::size_t strongly_far_pairs = 0;
    /// Pairs strongly far but not hat-strongly far, ascending order.
    std::vector<SubsetPair> violations;
};

/// Checks strongly_far => hat_strongly_far over all ordered pairs of nonempty
/// subsets. Skipped unless the relation is Lodato and compatible, or when
/// `force` is set.
SfHatReport check_sf_implies_hat(const ProximityRelation& prox, bool force = false);

struct FarSfReport {
    std::size_t far_pairs = 0;
    std::size_t strongly_far = 0;
    std::size_t far_not_strongly_far = 0;
    std::vector<SubsetPair> strongly_far_examples;
    std::vector<SubsetPair> far_not_strongly_far_examples;
};

/// Splits the far ordered pairs of nonempty subsets into strongly far and
/// far-but-not-strongly-far, keeping up to `examples` pairs of each.
FarSfReport check_far_vs_sf(const ProximityRelation& prox, std::size_t examples = 5);

}  // namespace hyperprox
