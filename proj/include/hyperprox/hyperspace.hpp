#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperprox/proximity.hpp"
#include "hyperprox/strong.hpp"

namespace hyperprox {

/// Fixed-width bitset over the hyperpoints of one hyperspace.
class FamilyBits {
public:
    FamilyBits() = default;
    explicit FamilyBits(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}
    static FamilyBits all(std::size_t size);

    std::size_t size() const { return size_; }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    std::size_t count() const;
    bool none() const;
    bool subset_of(const FamilyBits& other) const;
    std::vector<std::size_t> indices() const;

    FamilyBits& operator&=(const FamilyBits& other);
    friend FamilyBits operator&(FamilyBits a, const FamilyBits& b) { return a &= b; }
    friend bool operator==(const FamilyBits&, const FamilyBits&) = default;
    friend auto operator<=>(const FamilyBits& a, const FamilyBits& b) { return a.words_ <=> b.words_; }

    std::size_t hash() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// CL(X): the nonempty closed sets of a space, ascending mask order.
class Hyperspace {
public:
    /// Throws CapExceeded when CL(X) exceeds caps().max_hyperpoints.
    static std::shared_ptr<const Hyperspace> enumerate(const GroundSpace& space);

    const GroundSpace& space() const { return space_; }
    const std::vector<Subset>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const Subset& operator[](std::size_t i) const { return points_[i]; }
    std::optional<std::size_t> index_of(Subset closed) const;

    friend bool operator==(const Hyperspace& a, const Hyperspace& b) {
        return a.space_.points().size() == b.space_.points().size() && a.points_ == b.points_;
    }

private:
    explicit Hyperspace(GroundSpace space) : space_(std::move(space)) {}

    GroundSpace space_;
    std::vector<Subset> points_;
};

/// Nonempty closed sets, ascending mask order.
std::vector<Subset> enumerate_cl(const GroundSpace& space);

enum class FamilyTag { hit, miss, far_miss, sf_miss, custom };

const char* to_string(FamilyTag tag);

struct Provenance {
    FamilyTag tag;
    Subset generator;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct HyperFamily {
    FamilyBits members;
    std::vector<Provenance> provenance;
};

/// E with E meeting V. V must be open.
HyperFamily hit_set(const Hyperspace& hyper, Subset v);
/// C with C contained in W. W must be open.
HyperFamily miss_set(const Hyperspace& hyper, Subset w);
/// E far from X\A. A must be open.
HyperFamily far_miss_set(const Hyperspace& hyper, const ProximityRelation& prox, Subset a);
/// E strongly far from X\A (every E qualifies when A = X). A must be open.
HyperFamily sf_miss_set(const Hyperspace& hyper, const ProximityRelation& prox, Subset a);

/// Recomputes a family from its first provenance entry; true iff it matches.
bool replay_family(const Hyperspace& hyper, const HyperFamily& family, const ProximityRelation* prox);

/// Which subbase to generate. The hit half (all V^-) is included unless the
/// kind ends in `_only`; `trivial` is the single-element base {CL(X)}.
struct TopologySpec {
    enum class Kind { vietoris, fell, hit_and_miss, far_miss, sf_miss, far_miss_only, sf_miss_only, trivial };

    Kind kind = Kind::vietoris;
    std::optional<CompactnessIdeal> ideal;
    std::vector<Subset> closed_family;
    std::optional<ProximityRelation> prox;

    static TopologySpec vietoris() { return {Kind::vietoris, {}, {}, {}}; }
    static TopologySpec trivial() { return {Kind::trivial, {}, {}, {}}; }
    static TopologySpec fell(CompactnessIdeal ideal) { return {Kind::fell, std::move(ideal), {}, {}}; }
    static TopologySpec hit_and_miss(std::vector<Subset> family) { return {Kind::hit_and_miss, {}, std::move(family), {}}; }
    static TopologySpec far_miss(ProximityRelation p, bool with_hit = true) {
        return {with_hit ? Kind::far_miss : Kind::far_miss_only, {}, {}, std::move(p)};
    }
    static TopologySpec sf_miss(ProximityRelation p, bool with_hit = true) {
        return {with_hit ? Kind::sf_miss : Kind::sf_miss_only, {}, {}, std::move(p)};
    }

    std::string name() const;
};

struct HyperTopologyBase {
    std::shared_ptr<const Hyperspace> hyperspace;
    std::string label;
    /// Deduplicated subbase; identical families keep every provenance.
    std::vector<HyperFamily> subbase;
    /// All finite intersections of the subbase (CL(X) included), ascending.
    std::vector<FamilyBits> base;
};

HyperTopologyBase build_topology(std::shared_ptr<const Hyperspace> hyper, const TopologySpec& spec);

struct Refinement {
    bool holds = true;
    /// On failure: the base element of the coarser side and the hyperpoint
    /// inside it with no interposing base element of the finer side.
    std::optional<std::size_t> base_index;
    std::optional<std::size_t> hyperpoint;
};

/// Every open of `right` is open in `left`.
Refinement refines(const HyperTopologyBase& left, const HyperTopologyBase& right);

enum class ComparisonVerdict { equal, left_strictly_finer, right_strictly_finer, incomparable };

const char* to_string(ComparisonVerdict v);

struct Comparison {
    ComparisonVerdict verdict = ComparisonVerdict::equal;
    Refinement left_refines_right;
    Refinement right_refines_left;
};

Comparison compare(const HyperTopologyBase& left, const HyperTopologyBase& right);

struct ContractCheck {
    bool hypotheses_met = false;
    std::string note;
    std::size_t pairs_checked = 0;
    /// Pairs where the inclusion premise held.
    std::size_t premise_held = 0;
    std::vector<SubsetPair> violations;
};

/// For closed nonempty B, C: (X\B)^{++} within (X\C)_sf implies C within B.
/// Hypotheses: T1 space, Lodato relation, compatible with the topology.
ContractCheck check_miss_inclusion_contract(const ProximityRelation& prox);

/// For open H, E: H_sf within E^{++} iff H within E. Meaningful for
/// Alexandroff relations; finite violations are scope findings.
ContractCheck check_alexandroff_miss_contract(const ProximityRelation& prox);

}  // namespace hyperprox
