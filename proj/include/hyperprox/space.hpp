#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperprox/error.hpp"

namespace hyperprox {

using Mask = std::uint32_t;

/// Hard limit imposed by the mask width.
inline constexpr int kMaxRepresentablePoints = 30;

/// Size caps for exhaustive work. Ground sets above `max_points` are rejected;
/// operations that touch all pairs of subsets (4^n) honour `pair_points`,
/// those touching all triples (8^n) honour `triple_points`.
struct Caps {
    int max_points = 16;
    int pair_points = 10;
    int triple_points = 7;
    std::size_t max_hyperpoints = 4096;
    std::size_t max_base = std::size_t{1} << 20;
};

class Subset {
public:
    constexpr Subset() = default;
    constexpr explicit Subset(Mask bits) : bits_(bits) {}

    static constexpr Subset singleton(int point) { return Subset(Mask{1} << point); }
    static constexpr Subset full(int n) { return Subset(n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1); }

    constexpr Mask bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int point) const { return (bits_ >> point) & 1U; }
    constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(Subset other) const { return (bits_ & other.bits_) != 0; }
    constexpr int lowest() const { return std::countr_zero(bits_); }

    friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
    friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
    /// Set difference.
    friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
    friend constexpr auto operator<=>(Subset, Subset) = default;

    /// Points of the subset in ascending order.
    std::vector<int> points() const;

private:
    Mask bits_ = 0;
};

class PointSet {
public:
    explicit PointSet(int n, std::vector<std::string> labels = {});

    int size() const { return n_; }
    Subset full() const { return Subset::full(n_); }
    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(int point) const;
    /// Resolves a label, or a decimal index when no label matches.
    std::optional<int> index_of(std::string_view name) const;
    bool contains(Subset s) const { return s.subset_of(full()); }

    std::string format(Subset s) const;

private:
    int n_;
    std::vector<std::string> labels_;
};

/// One verdict within an AxiomReport. `witness` holds the offending subsets.
struct AxiomCheck {
    std::string name;
    bool passed = true;
    std::vector<Subset> witness;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;

    bool ok() const;
    const AxiomCheck* find(std::string_view name) const;
};

class ValidationError : public Error {
public:
    ValidationError(const std::string& what, AxiomReport report)
        : Error(ErrorKind::validation_failed, what), report_(std::move(report)) {}

    const AxiomReport& report() const noexcept { return report_; }

private:
    AxiomReport report_;
};

/// Checks the open-set axioms on a raw family: "contains-empty-and-full",
/// "union-closed", "intersection-closed" (and "in-range" for stray bits).
AxiomReport validate_topology(const PointSet& points, std::span<const Subset> opens);

/// A finite topological space. Immutable; copies share state.
class GroundSpace {
public:
    /// Throws ValidationError when the family is not a topology.
    static GroundSpace create(PointSet points, std::vector<Subset> opens, Caps caps = {});
    static GroundSpace discrete(PointSet points, Caps caps = {});
    static GroundSpace indiscrete(PointSet points, Caps caps = {});

    const PointSet& points() const;
    int size() const;
    Subset full() const;
    const Caps& caps() const;

    /// Ascending mask order.
    std::span<const Subset> opens() const;
    /// Complements of the opens, ascending mask order, including the empty set.
    std::span<const Subset> closed_sets() const;

    Subset complement(Subset s) const { return full() - s; }
    Subset closure(Subset s) const;
    Subset interior(Subset s) const;
    /// int(cl s); regular open sets are the fixed points.
    Subset regular_interior(Subset s) const;
    bool is_open(Subset s) const { return interior(s) == s; }
    bool is_closed(Subset s) const { return closure(s) == s; }
    bool is_t1() const;
    bool is_discrete() const;

    /// Distinct regular open sets, ascending, each paired with the smallest
    /// generator E with int(cl E) equal to it.
    struct RegularOpen {
        Subset region;
        Subset generator;
    };
    const std::vector<RegularOpen>& regular_opens() const;

    friend bool operator==(const GroundSpace& a, const GroundSpace& b);

private:
    struct Data;
    explicit GroundSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    static GroundSpace build(PointSet points, std::vector<Subset> opens, Caps caps);

    std::shared_ptr<const Data> data_;
};

}  // namespace hyperprox
