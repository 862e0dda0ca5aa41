#pragma once

#include <initializer_list>
#include <vector>

#include "hyperprox/proximity.hpp"
#include "hyperprox/search.hpp"
#include "hyperprox/space.hpp"

namespace hyperprox::testing {

inline Subset S(std::initializer_list<int> points) {
    Mask m = 0;
    for (int p : points) m |= Mask{1} << p;
    return Subset(m);
}

inline GroundSpace discrete(int n) { return GroundSpace::discrete(PointSet(n)); }
inline GroundSpace indiscrete(int n) { return GroundSpace::indiscrete(PointSet(n)); }

// {}, {0}, {0,1}, X on three points.
inline GroundSpace chain3() { return GroundSpace::create(PointSet(3), {S({}), S({0}), S({0, 1}), S({0, 1, 2})}); }

inline GroundSpace from_opens(int n, const std::vector<Subset>& opens) { return GroundSpace::create(PointSet(n), opens); }

/// Every topology on n points as a GroundSpace.
inline std::vector<GroundSpace> all_spaces(int n) {
    std::vector<GroundSpace> out;
    for (const auto& opens : enumerate_topologies(n)) out.push_back(from_opens(n, opens));
    return out;
}

inline ProximityRelation line_gap(int n, std::int64_t eps) {
    return gap_proximity(discrete(n), Metric::line(n), Rational(eps));
}

inline ProximityRelation constant_near(const GroundSpace& space) {
    return ProximityRelation::from_rule(space, ProximityKind::table, "nonempty near nonempty",
                                        [](Subset a, Subset b) { return !a.empty() && !b.empty(); }, false);
}

template <typename F>
void for_each_subset(const GroundSpace& space, F f) {
    for (Mask m = 0; m <= space.full().bits(); ++m) f(Subset(m));
}

template <typename F>
void for_each_pair(const GroundSpace& space, F f) {
    for_each_subset(space, [&](Subset a) { for_each_subset(space, [&](Subset b) { f(a, b); }); });
}

}  // namespace hyperprox::testing
