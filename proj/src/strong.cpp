#include "hyperprox/strong.hpp"

namespace hyperprox {

namespace {

void require_pair_cap(const GroundSpace& space, const char* op) {
    if (space.size() > space.caps().pair_points) {
        throw CapExceeded(op, space.size(), space.caps().pair_points);
    }
}

void require_triple_cap(const GroundSpace& space, const char* op) {
    if (space.size() > space.caps().triple_points) {
        throw CapExceeded(op, space.size(), space.caps().triple_points);
    }
}

}  // namespace

bool WitnessResult::trivial_witness(const GroundSpace& space) const {
    for (Subset s : witness) {
        if (s.empty() || s == space.full()) return true;
    }
    return false;
}

bool strongly_included(const ProximityRelation& prox, Subset a, Subset b) {
    return prox.far(a, prox.space().complement(b));
}

WitnessResult strongly_far(const ProximityRelation& prox, Subset a, Subset b) {
    const GroundSpace& space = prox.space();
    require_pair_cap(space, "strongly_far");
    WitnessResult result;
    result.degenerate = a.empty() || b.empty();
    if (prox.near(a, b)) return result;
    const Mask full = space.full().bits();
    for (Mask m = 0;; ++m) {
        const Subset c(m);
        if (prox.far(a, space.complement(c)) && prox.far(c, b)) {
            result.holds = true;
            result.witness = {c};
            return result;
        }
        if (m == full) break;
    }
    return result;
}

WitnessResult hat_strongly_far(const GroundSpace& space, Subset a, Subset b) {
    require_pair_cap(space, "hat_strongly_far");
    WitnessResult result;
    result.degenerate = a.empty() || b.empty();
    const auto& regulars = space.regular_opens();
    // Smallest generator C of a regular open that contains B and misses `region`.
    auto partner = [&](Subset region) -> const GroundSpace::RegularOpen* {
        const GroundSpace::RegularOpen* best = nullptr;
        for (const auto& r : regulars) {
            if (b.subset_of(r.region) && !r.region.intersects(region) &&
                (best == nullptr || r.generator < best->generator)) {
                best = &r;
            }
        }
        return best;
    };
    const Mask full = space.full().bits();
    for (Mask m = 0;; ++m) {
        const Subset region = space.regular_interior(Subset(m));
        if (a.subset_of(region)) {
            if (const auto* r = partner(region)) {
                result.holds = true;
                result.witness = {Subset(m), r->generator};
                result.regions = {region, r->region};
                return result;
            }
        }
        if (m == full) break;
    }
    return result;
}

ProximityRelation derived_near_from_sf(const ProximityRelation& prox) {
    require_pair_cap(prox.space(), "derived_near_from_sf");
    return ProximityRelation::from_rule(
        prox.space(), ProximityKind::derived_strongly_far, "not strongly far under " + std::string(to_string(prox.kind())),
        [prox](Subset a, Subset b) { return !strongly_far(prox, a, b).holds; }, true);
}

SfHatReport check_sf_implies_hat(const ProximityRelation& prox, bool force) {
    const GroundSpace& space = prox.space();
    require_triple_cap(space, "check_sf_implies_hat");
    SfHatReport report;
    const ProximityAxiomReport axioms = check_axioms(prox);
    const Compatibility compat = is_compatible(prox);
    report.precondition_met = axioms.is_lodato() && compat.compatible;
    if (!axioms.is_lodato()) {
        report.precondition_note = "relation is not Lodato (classification " +
                                   std::string(to_string(axioms.classification)) + ")";
    } else if (!compat.compatible) {
        report.precondition_note = "relation is not compatible with the topology (witness " +
                                   space.points().format(*compat.witness) + ")";
    }
    if (!report.precondition_met && !force) return report;

    const Mask full = space.full().bits();
    for (Mask a = 1; a <= full; ++a) {
        for (Mask b = 1; b <= full; ++b) {
            ++report.pairs_checked;
            if (!strongly_far(prox, Subset(a), Subset(b)).holds) continue;
            ++report.strongly_far_pairs;
            if (!hat_strongly_far(space, Subset(a), Subset(b)).holds) {
                report.violations.emplace_back(Subset(a), Subset(b));
            }
        }
    }
    return report;
}

FarSfReport check_far_vs_sf(const ProximityRelation& prox, std::size_t examples) {
    const GroundSpace& space = prox.space();
    require_triple_cap(space, "check_far_vs_sf");
    FarSfReport report;
    const Mask full = space.full().bits();
    for (Mask a = 1; a <= full; ++a) {
        for (Mask b = 1; b <= full; ++b) {
            if (prox.near(Subset(a), Subset(b))) continue;
            ++report.far_pairs;
            if (strongly_far(prox, Subset(a), Subset(b)).holds) {
                ++report.strongly_far;
                if (report.strongly_far_examples.size() < examples) {
                    report.strongly_far_examples.emplace_back(Subset(a), Subset(b));
                }
            } else {
                ++report.far_not_strongly_far;
                if (report.far_not_strongly_far_examples.size() < examples) {
                    report.far_not_strongly_far_examples.emplace_back(Subset(a), Subset(b));
                }
            }
        }
    }
    return report;
}

}  // namespace hyperprox
