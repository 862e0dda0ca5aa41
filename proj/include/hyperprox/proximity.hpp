#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperprox/metric.hpp"
#include "hyperprox/space.hpp"

namespace hyperprox {

/// Stand-in for "the compact closed sets" of a finite space: contains the
/// empty set, is downward closed among closed sets and closed under unions.
/// Such a family always has a largest member, so it is stored as that bound.
class CompactnessIdeal {
public:
    /// Throws ValidationError listing the violated ideal property.
    static CompactnessIdeal create(const GroundSpace& space, std::vector<Subset> members);
    /// All closed subsets of `bound` (which must be closed).
    static CompactnessIdeal principal(const GroundSpace& space, Subset bound);
    static CompactnessIdeal all_closed(const GroundSpace& space);

    Subset bound() const { return bound_; }
    /// Ascending mask order.
    const std::vector<Subset>& members() const { return members_; }
    /// `closed` is assumed closed.
    bool contains(Subset closed) const { return closed.subset_of(bound_); }

    friend bool operator==(const CompactnessIdeal& a, const CompactnessIdeal& b) { return a.members_ == b.members_; }

private:
    CompactnessIdeal(Subset bound, std::vector<Subset> members) : bound_(bound), members_(std::move(members)) {}

    Subset bound_;
    std::vector<Subset> members_;
};

AxiomReport validate_ideal(const GroundSpace& space, const std::vector<Subset>& members);

enum class ProximityKind { table, overlap, gap, alexandroff, point_generated, derived_strongly_far };

const char* to_string(ProximityKind kind);

/// Symmetric reflexive relation on points, stored as neighbour masks.
class PointRelation {
public:
    /// Identity relation on n points.
    explicit PointRelation(int n);
    /// Symmetric reflexive closure of the listed pairs.
    static PointRelation from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

    int size() const { return static_cast<int>(neighbours_.size()); }
    bool related(int a, int b) const { return neighbours_[static_cast<std::size_t>(a)].contains(b); }
    Subset neighbours(int a) const { return neighbours_[static_cast<std::size_t>(a)]; }
    void set(int a, int b, bool value);
    bool is_transitive() const;
    /// Off-diagonal pairs (a < b).
    std::vector<std::pair<int, int>> pairs() const;

    friend bool operator==(const PointRelation&, const PointRelation&) = default;

private:
    std::vector<Subset> neighbours_;
};

/// A nearness relation on all pairs of subsets of a ground space.
/// Immutable value with shared state; `near` is safe to call concurrently.
class ProximityRelation {
public:
    using Rule = std::function<bool(Subset, Subset)>;

    const GroundSpace& space() const;
    ProximityKind kind() const;
    /// Human-readable parameters, e.g. "epsilon=1".
    const std::string& description() const;

    bool near(Subset a, Subset b) const;
    bool far(Subset a, Subset b) const { return !near(a, b); }

    /// Number of `near` calls made so far (shared across copies).
    std::uint64_t evaluations() const;

    /// Builds a relation from an arbitrary symmetric rule. Memoized rules
    /// cache verdicts in a write-once table when n is within the pair cap.
    static ProximityRelation from_rule(GroundSpace space, ProximityKind kind, std::string description, Rule rule,
                                       bool memoize);

private:
    struct State;
    explicit ProximityRelation(std::shared_ptr<State> state) : state_(std::move(state)) {}

    std::shared_ptr<State> state_;
};

ProximityRelation overlap_proximity(const GroundSpace& space);
/// A near B iff both are nonempty and min d(a,b) <= epsilon (exact rationals).
ProximityRelation gap_proximity(const GroundSpace& space, const Metric& metric, Rational epsilon);
ProximityRelation alexandroff_proximity(const GroundSpace& space, const CompactnessIdeal& ideal);
ProximityRelation point_generated_proximity(const GroundSpace& space, const PointRelation& relation);
/// Near pairs are listed explicitly (unordered); everything else is far.
ProximityRelation table_proximity(const GroundSpace& space, const std::vector<std::pair<Subset, Subset>>& near_pairs);

/// { x : {x} near A }.
Subset induced_closure(const ProximityRelation& prox, Subset a);

struct Compatibility {
    bool compatible = true;
    /// First subset (mask order) whose induced and topological closures differ.
    std::optional<Subset> witness;
    Subset induced;
    Subset topological;
};

Compatibility is_compatible(const ProximityRelation& prox);

enum class Axiom { p0, p1, p2, p3, p4, p5, ef, ef_betweenness };
inline constexpr std::array<Axiom, 8> kAllAxioms{Axiom::p0, Axiom::p1, Axiom::p2, Axiom::p3,
                                                 Axiom::p4, Axiom::p5, Axiom::ef, Axiom::ef_betweenness};

const char* to_string(Axiom axiom);

enum class ProximityClass { not_basic, basic, lodato, ef };

const char* to_string(ProximityClass c);

struct AxiomVerdict {
    Axiom axiom;
    bool passed = true;
    /// P0-P2: (A,B); P3/P4: (A,B,C); P5: ({x},{y}); EF: the far pair (A,B);
    /// EF-betweenness: (A,B) with A strongly included in B.
    std::vector<Subset> witness;
};

struct ProximityAxiomReport {
    std::array<AxiomVerdict, 8> verdicts;
    ProximityClass classification = ProximityClass::not_basic;
    bool exhaustive = true;
    std::uint64_t samples = 0;

    const AxiomVerdict& verdict(Axiom a) const { return verdicts[static_cast<std::size_t>(a)]; }
    bool passed(Axiom a) const { return verdict(a).passed; }
    bool is_basic() const;
    bool is_lodato() const;
    bool is_ef() const;
};

struct AxiomOptions {
    /// When n is above the triple cap, check this many random tuples per
    /// axiom instead of failing with CapExceeded. Zero means exhaustive only.
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Exhaustive check of P0-P5, EF and EF-betweenness. Witnesses are the first
/// violation in ascending mask order.
ProximityAxiomReport check_axioms(const ProximityRelation& prox, const AxiomOptions& options = {});

/// Replays a violation witness against the relation; true iff it still violates.
bool replay_violation(const ProximityRelation& prox, const AxiomVerdict& verdict);

}  // namespace hyperprox
