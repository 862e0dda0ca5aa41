#include "hyperprox/proximity.hpp"

#include <algorithm>
#include <atomic>
#include <random>

namespace hyperprox {

// ---------------------------------------------------------------------------
// Compactness ideals

AxiomReport validate_ideal(const GroundSpace& space, const std::vector<Subset>& members) {
    std::vector<Subset> family(members);
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    auto member = [&](Subset s) { return std::binary_search(family.begin(), family.end(), s); };
    const auto& pts = space.points();

    AxiomReport report;
    AxiomCheck closed{"closed-members", true, {}, {}};
    for (Subset s : family) {
        if (!pts.contains(s) || !space.is_closed(s)) {
            closed.passed = false;
            closed.witness = {s};
            closed.detail = pts.format(s) + " is not a closed set";
            break;
        }
    }
    report.checks.push_back(closed);

    AxiomCheck empty{"contains-empty", member(Subset{}), {}, {}};
    if (!empty.passed) empty.detail = "empty set missing";
    report.checks.push_back(empty);

    AxiomCheck downward{"downward-closed", true, {}, {}};
    for (Subset k : family) {
        for (Subset c : space.closed_sets()) {
            if (c.subset_of(k) && !member(c)) {
                downward.passed = false;
                downward.witness = {k, c};
                downward.detail = pts.format(c) + " is a closed subset of member " + pts.format(k);
                break;
            }
        }
        if (!downward.passed) break;
    }
    report.checks.push_back(downward);

    AxiomCheck unions{"union-closed", true, {}, {}};
    for (std::size_t i = 0; i < family.size() && unions.passed; ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            if (!member(family[i] | family[j])) {
                unions.passed = false;
                unions.witness = {family[i], family[j]};
                unions.detail = "union " + pts.format(family[i] | family[j]) + " missing";
                break;
            }
        }
    }
    report.checks.push_back(unions);
    return report;
}

CompactnessIdeal CompactnessIdeal::create(const GroundSpace& space, std::vector<Subset> members) {
    AxiomReport report = validate_ideal(space, members);
    if (!report.ok()) {
        std::string what = "not a compactness ideal:";
        for (const auto& c : report.checks) {
            if (!c.passed) what += " " + c.name + " (" + c.detail + ")";
        }
        throw ValidationError(what, std::move(report));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Subset bound;
    for (Subset m : members) bound = bound | m;
    return CompactnessIdeal(bound, std::move(members));
}

CompactnessIdeal CompactnessIdeal::principal(const GroundSpace& space, Subset bound) {
    if (!space.points().contains(bound) || !space.is_closed(bound)) {
        throw Error(ErrorKind::invalid_argument, "ideal bound " + space.points().format(bound) + " is not closed");
    }
    std::vector<Subset> members;
    for (Subset c : space.closed_sets()) {
        if (c.subset_of(bound)) members.push_back(c);
    }
    return CompactnessIdeal(bound, std::move(members));
}

CompactnessIdeal CompactnessIdeal::all_closed(const GroundSpace& space) {
    return principal(space, space.full());
}

// ---------------------------------------------------------------------------
// Point relations

PointRelation::PointRelation(int n) {
    neighbours_.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) neighbours_.push_back(Subset::singleton(i));
}

PointRelation PointRelation::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    PointRelation r(n);
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= n || b >= n) {
            throw Error(ErrorKind::invalid_argument, "point relation pair out of range");
        }
        r.set(a, b, true);
    }
    return r;
}

void PointRelation::set(int a, int b, bool value) {
    if (a == b) return;
    auto& na = neighbours_[static_cast<std::size_t>(a)];
    auto& nb = neighbours_[static_cast<std::size_t>(b)];
    if (value) {
        na = na | Subset::singleton(b);
        nb = nb | Subset::singleton(a);
    } else {
        na = na - Subset::singleton(b);
        nb = nb - Subset::singleton(a);
    }
}

bool PointRelation::is_transitive() const {
    for (int a = 0; a < size(); ++a) {
        for (int b : neighbours(a).points()) {
            if (!neighbours(b).subset_of(neighbours(a))) return false;
        }
    }
    return true;
}

std::vector<std::pair<int, int>> PointRelation::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a) {
        for (int b : neighbours(a).points()) {
            if (a < b) out.emplace_back(a, b);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Relations

const char* to_string(ProximityKind kind) {
    switch (kind) {
    case ProximityKind::table: return "table";
    case ProximityKind::overlap: return "overlap";
    case ProximityKind::gap: return "gap";
    case ProximityKind::alexandroff: return "alexandroff";
    case ProximityKind::point_generated: return "point_relation";
    case ProximityKind::derived_strongly_far: return "derived_strongly_far";
    }
    return "unknown";
}

struct ProximityRelation::State {
    GroundSpace space;
    ProximityKind kind;
    std::string description;
    Rule rule;
    // 0 = unknown, 1 = far, 2 = near; written at most once per verdict.
    std::vector<std::atomic<std::uint8_t>> memo;
    mutable std::atomic<std::uint64_t> evaluations{0};

    State(GroundSpace s, ProximityKind k, std::string d, Rule r)
        : space(std::move(s)), kind(k), description(std::move(d)), rule(std::move(r)) {}
};

ProximityRelation ProximityRelation::from_rule(GroundSpace space, ProximityKind kind, std::string description,
                                               Rule rule, bool memoize) {
    auto state = std::make_shared<State>(std::move(space), kind, std::move(description), std::move(rule));
    const int n = state->space.size();
    if (memoize && n <= state->space.caps().pair_points) {
        state->memo = std::vector<std::atomic<std::uint8_t>>(std::size_t{1} << (2 * n));
    }
    return ProximityRelation(std::move(state));
}

const GroundSpace& ProximityRelation::space() const { return state_->space; }
ProximityKind ProximityRelation::kind() const { return state_->kind; }
const std::string& ProximityRelation::description() const { return state_->description; }
std::uint64_t ProximityRelation::evaluations() const { return state_->evaluations.load(std::memory_order_relaxed); }

bool ProximityRelation::near(Subset a, Subset b) const {
    state_->evaluations.fetch_add(1, std::memory_order_relaxed);
    if (state_->memo.empty()) {
        return state_->rule(a, b);
    }
    const std::size_t key = (static_cast<std::size_t>(a.bits()) << state_->space.size()) | b.bits();
    const std::uint8_t cached = state_->memo[key].load(std::memory_order_acquire);
    if (cached != 0) return cached == 2;
    const bool verdict = state_->rule(a, b);
    state_->memo[key].store(verdict ? 2 : 1, std::memory_order_release);
    return verdict;
}

ProximityRelation overlap_proximity(const GroundSpace& space) {
    return ProximityRelation::from_rule(
        space, ProximityKind::overlap, "closures intersect",
        [space](Subset a, Subset b) { return space.closure(a).intersects(space.closure(b)); }, false);
}

ProximityRelation gap_proximity(const GroundSpace& space, const Metric& metric, Rational epsilon) {
    const int n = space.size();
    if (metric.size() != n) {
        throw Error(ErrorKind::invalid_argument, "metric has " + std::to_string(metric.size()) +
                                                     " points but the space has " + std::to_string(n));
    }
    if (epsilon < Rational{}) {
        throw Error(ErrorKind::invalid_argument, "gap epsilon must be non-negative");
    }
    std::vector<Subset> ball(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (metric(i, j) <= epsilon) ball[static_cast<std::size_t>(i)] = ball[static_cast<std::size_t>(i)] | Subset::singleton(j);
        }
    }
    return ProximityRelation::from_rule(
        space, ProximityKind::gap, "epsilon=" + epsilon.str(),
        [ball = std::move(ball)](Subset a, Subset b) {
            if (b.empty()) return false;
            for (int p : a.points()) {
                if (ball[static_cast<std::size_t>(p)].intersects(b)) return true;
            }
            return false;
        },
        false);
}

ProximityRelation alexandroff_proximity(const GroundSpace& space, const CompactnessIdeal& ideal) {
    return ProximityRelation::from_rule(
        space, ProximityKind::alexandroff, "ideal bound=" + space.points().format(ideal.bound()),
        [space, ideal](Subset a, Subset b) {
            if (a.empty() || b.empty()) return false;
            const Subset ca = space.closure(a);
            const Subset cb = space.closure(b);
            return ca.intersects(cb) || (!ideal.contains(ca) && !ideal.contains(cb));
        },
        false);
}

ProximityRelation point_generated_proximity(const GroundSpace& space, const PointRelation& relation) {
    if (relation.size() != space.size()) {
        throw Error(ErrorKind::invalid_argument, "point relation size does not match the space");
    }
    std::string desc;
    for (auto [a, b] : relation.pairs()) {
        desc += (desc.empty() ? "" : ",") + space.points().label(a) + "~" + space.points().label(b);
    }
    return ProximityRelation::from_rule(
        space, ProximityKind::point_generated, desc.empty() ? "identity" : desc,
        [relation](Subset a, Subset b) {
            for (int p : a.points()) {
                if (relation.neighbours(p).intersects(b)) return true;
            }
            return false;
        },
        false);
}

ProximityRelation table_proximity(const GroundSpace& space, const std::vector<std::pair<Subset, Subset>>& near_pairs) {
    std::vector<std::pair<Mask, Mask>> keys;
    keys.reserve(near_pairs.size());
    for (auto [a, b] : near_pairs) {
        if (!space.points().contains(a) || !space.points().contains(b)) {
            throw Error(ErrorKind::invalid_argument, "table pair uses points outside the ground set");
        }
        keys.emplace_back(std::min(a.bits(), b.bits()), std::max(a.bits(), b.bits()));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    const std::string desc = std::to_string(keys.size()) + " near pairs";
    return ProximityRelation::from_rule(
        space, ProximityKind::table, desc,
        [keys = std::move(keys)](Subset a, Subset b) {
            const std::pair<Mask, Mask> k{std::min(a.bits(), b.bits()), std::max(a.bits(), b.bits())};
            return std::binary_search(keys.begin(), keys.end(), k);
        },
        false);
}

Subset induced_closure(const ProximityRelation& prox, Subset a) {
    Subset out;
    for (int x = 0; x < prox.space().size(); ++x) {
        if (prox.near(Subset::singleton(x), a)) out = out | Subset::singleton(x);
    }
    return out;
}

Compatibility is_compatible(const ProximityRelation& prox) {
    const GroundSpace& space = prox.space();
    if (space.size() > space.caps().max_points) {
        throw CapExceeded("is_compatible", space.size(), space.caps().max_points);
    }
    for (Mask m = 0; m <= space.full().bits(); ++m) {
        const Subset a(m);
        const Subset induced = induced_closure(prox, a);
        const Subset topo = space.closure(a);
        if (induced != topo) {
            return {false, a, induced, topo};
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Axiom checking

const char* to_string(Axiom axiom) {
    switch (axiom) {
    case Axiom::p0: return "P0";
    case Axiom::p1: return "P1";
    case Axiom::p2: return "P2";
    case Axiom::p3: return "P3";
    case Axiom::p4: return "P4";
    case Axiom::p5: return "P5";
    case Axiom::ef: return "EF";
    case Axiom::ef_betweenness: return "EF-betweenness";
    }
    return "?";
}

const char* to_string(ProximityClass c) {
    switch (c) {
    case ProximityClass::not_basic: return "not-basic";
    case ProximityClass::basic: return "basic";
    case ProximityClass::lodato: return "lodato";
    case ProximityClass::ef: return "ef";
    }
    return "?";
}

bool ProximityAxiomReport::is_basic() const {
    return passed(Axiom::p0) && passed(Axiom::p1) && passed(Axiom::p2) && passed(Axiom::p3);
}

bool ProximityAxiomReport::is_lodato() const { return is_basic() && passed(Axiom::p4); }

bool ProximityAxiomReport::is_ef() const { return is_basic() && passed(Axiom::ef); }

namespace {

/// Dense bit matrix over pairs of subsets, one row per first argument.
class BitMatrix {
public:
    explicit BitMatrix(std::size_t side)
        : side_(side), words_((side + 63) / 64), bits_(side * words_, 0) {}

    void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
    bool get(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U; }
    const std::uint64_t* row(std::size_t r) const { return &bits_[r * words_]; }
    std::size_t words() const { return words_; }

    bool rows_meet(const BitMatrix& other, std::size_t r, std::size_t other_r) const {
        const std::uint64_t* a = row(r);
        const std::uint64_t* b = other.row(other_r);
        for (std::size_t w = 0; w < words_; ++w) {
            if ((a[w] & b[w]) != 0) return true;
        }
        return false;
    }

private:
    std::size_t side_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

ProximityClass classify(const ProximityAxiomReport& r) {
    if (!r.is_basic()) return ProximityClass::not_basic;
    if (r.passed(Axiom::ef)) return ProximityClass::ef;
    if (r.passed(Axiom::p4)) return ProximityClass::lodato;
    return ProximityClass::basic;
}

void fail(ProximityAxiomReport& report, Axiom axiom, std::vector<Subset> witness) {
    auto& v = report.verdicts[static_cast<std::size_t>(axiom)];
    if (v.passed) {
        v.passed = false;
        v.witness = std::move(witness);
    }
}

ProximityAxiomReport exhaustive_check(const ProximityRelation& prox) {
    const GroundSpace& space = prox.space();
    const int n = space.size();
    const std::size_t count = std::size_t{1} << n;
    const Mask full = space.full().bits();

    BitMatrix near(count);
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            if (prox.near(Subset(static_cast<Mask>(a)), Subset(static_cast<Mask>(b)))) near.set(a, b);
        }
    }
    auto S = [](std::size_t m) { return Subset(static_cast<Mask>(m)); };

    ProximityAxiomReport report;
    for (Axiom ax : kAllAxioms) report.verdicts[static_cast<std::size_t>(ax)].axiom = ax;

    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            const bool ab = near.get(a, b);
            if (ab != near.get(b, a)) fail(report, Axiom::p0, {S(a), S(b)});
            if (ab && (a == 0 || b == 0)) fail(report, Axiom::p1, {S(a), S(b)});
            if ((a & b) != 0 && !ab) fail(report, Axiom::p2, {S(a), S(b)});
        }
    }

    // P3: A near (B u C) <=> A near B or A near C.
    for (std::size_t a = 0; a < count && report.passed(Axiom::p3); ++a) {
        for (std::size_t b = 0; b < count && report.passed(Axiom::p3); ++b) {
            for (std::size_t c = 0; c < count; ++c) {
                if (near.get(a, b | c) != (near.get(a, b) || near.get(a, c))) {
                    fail(report, Axiom::p3, {S(a), S(b), S(c)});
                    break;
                }
            }
        }
    }

    // P4: A near B and every b in B near C => A near C.
    std::vector<Mask> near_points(count, 0);
    for (std::size_t c = 0; c < count; ++c) {
        for (int x = 0; x < n; ++x) {
            if (near.get(std::size_t{1} << x, c)) near_points[c] |= Mask{1} << x;
        }
    }
    for (std::size_t a = 0; a < count && report.passed(Axiom::p4); ++a) {
        for (std::size_t b = 0; b < count && report.passed(Axiom::p4); ++b) {
            if (!near.get(a, b)) continue;
            for (std::size_t c = 0; c < count; ++c) {
                if ((b & ~near_points[c]) == 0 && !near.get(a, c)) {
                    fail(report, Axiom::p4, {S(a), S(b), S(c)});
                    break;
                }
            }
        }
    }

    for (int x = 0; x < n && report.passed(Axiom::p5); ++x) {
        for (int y = 0; y < n; ++y) {
            if (x != y && near.get(std::size_t{1} << x, std::size_t{1} << y)) {
                fail(report, Axiom::p5, {Subset::singleton(x), Subset::singleton(y)});
                break;
            }
        }
    }

    // EF: A far B => exists E with A far E and (X\E) far B.
    // far_row(A)[E] = A far E; comp_col(B)[E] = (X\E) far B.
    BitMatrix far_row(count);
    BitMatrix comp_col(count);
    // Betweenness: A << B => exists C with A << C << B, where A << C is A far X\C.
    // incl_row(A)[C] = A far X\C; incl_col(B)[C] = C far X\B.
    BitMatrix incl_row(count);
    BitMatrix incl_col(count);
    for (std::size_t r = 0; r < count; ++r) {
        for (std::size_t e = 0; e < count; ++e) {
            if (!near.get(r, e)) far_row.set(r, e);
            if (!near.get(full & ~e, r)) comp_col.set(r, e);
            if (!near.get(r, full & ~e)) incl_row.set(r, e);
            if (!near.get(e, full & ~r)) incl_col.set(r, e);
        }
    }
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            if (report.passed(Axiom::ef) && !near.get(a, b) && !far_row.rows_meet(comp_col, a, b)) {
                fail(report, Axiom::ef, {S(a), S(b)});
            }
            if (report.passed(Axiom::ef_betweenness) && !near.get(a, full & ~b) &&
                !incl_row.rows_meet(incl_col, a, b)) {
                fail(report, Axiom::ef_betweenness, {S(a), S(b)});
            }
        }
    }

    report.classification = classify(report);
    return report;
}

ProximityAxiomReport sampled_check(const ProximityRelation& prox, const AxiomOptions& options) {
    const GroundSpace& space = prox.space();
    const int n = space.size();
    const Mask full = space.full().bits();
    std::mt19937_64 rng(options.seed);
    auto draw = [&] { return Subset(static_cast<Mask>(rng()) & full); };
    auto comp = [&](Subset s) { return space.complement(s); };

    ProximityAxiomReport report;
    report.exhaustive = false;
    report.samples = options.samples;
    for (Axiom ax : kAllAxioms) report.verdicts[static_cast<std::size_t>(ax)].axiom = ax;

    for (std::uint64_t i = 0; i < options.samples; ++i) {
        const Subset a = draw(), b = draw(), c = draw();
        const bool ab = prox.near(a, b);
        if (ab != prox.near(b, a)) fail(report, Axiom::p0, {a, b});
        if (ab && (a.empty() || b.empty())) fail(report, Axiom::p1, {a, b});
        if (a.intersects(b) && !ab) fail(report, Axiom::p2, {a, b});
        if (prox.near(a, b | c) != (ab || prox.near(a, c))) fail(report, Axiom::p3, {a, b, c});
        if (ab && b.subset_of(induced_closure(prox, c)) && prox.far(a, c)) fail(report, Axiom::p4, {a, b, c});
    }
    for (int x = 0; x < n && report.passed(Axiom::p5); ++x) {
        for (int y = 0; y < n; ++y) {
            if (x != y && prox.near(Subset::singleton(x), Subset::singleton(y))) {
                fail(report, Axiom::p5, {Subset::singleton(x), Subset::singleton(y)});
                break;
            }
        }
    }
    // Each sampled EF pair costs a full scan of the middle set.
    const std::uint64_t ef_samples = std::max<std::uint64_t>(1, options.samples >> n);
    for (std::uint64_t i = 0; i < ef_samples; ++i) {
        const Subset a = draw(), b = draw();
        if (report.passed(Axiom::ef) && prox.far(a, b)) {
            bool found = false;
            for (Mask e = 0; e <= full && !found; ++e) {
                found = prox.far(a, Subset(e)) && prox.far(comp(Subset(e)), b);
            }
            if (!found) fail(report, Axiom::ef, {a, b});
        }
        if (report.passed(Axiom::ef_betweenness) && prox.far(a, comp(b))) {
            bool found = false;
            for (Mask c = 0; c <= full && !found; ++c) {
                found = prox.far(a, comp(Subset(c))) && prox.far(Subset(c), comp(b));
            }
            if (!found) fail(report, Axiom::ef_betweenness, {a, b});
        }
    }
    report.classification = classify(report);
    return report;
}

}  // namespace

ProximityAxiomReport check_axioms(const ProximityRelation& prox, const AxiomOptions& options) {
    const GroundSpace& space = prox.space();
    const int n = space.size();
    if (n <= space.caps().triple_points) {
        return exhaustive_check(prox);
    }
    if (options.samples == 0) {
        throw CapExceeded("check_axioms (exhaustive)", n, space.caps().triple_points);
    }
    return sampled_check(prox, options);
}

bool replay_violation(const ProximityRelation& prox, const AxiomVerdict& verdict) {
    if (verdict.passed) return false;
    const GroundSpace& space = prox.space();
    const auto& w = verdict.witness;
    auto comp = [&](Subset s) { return space.complement(s); };
    const Mask full = space.full().bits();
    switch (verdict.axiom) {
    case Axiom::p0:
        return w.size() == 2 && prox.near(w[0], w[1]) != prox.near(w[1], w[0]);
    case Axiom::p1:
        return w.size() == 2 && prox.near(w[0], w[1]) && (w[0].empty() || w[1].empty());
    case Axiom::p2:
        return w.size() == 2 && w[0].intersects(w[1]) && prox.far(w[0], w[1]);
    case Axiom::p3:
        return w.size() == 3 && prox.near(w[0], w[1] | w[2]) != (prox.near(w[0], w[1]) || prox.near(w[0], w[2]));
    case Axiom::p4: {
        if (w.size() != 3 || !prox.near(w[0], w[1]) || prox.near(w[0], w[2])) return false;
        for (int b : w[1].points()) {
            if (prox.far(Subset::singleton(b), w[2])) return false;
        }
        return true;
    }
    case Axiom::p5:
        return w.size() == 2 && w[0] != w[1] && w[0].size() == 1 && w[1].size() == 1 && prox.near(w[0], w[1]);
    case Axiom::ef:
        if (w.size() != 2 || prox.near(w[0], w[1])) return false;
        for (Mask e = 0; e <= full; ++e) {
            if (prox.far(w[0], Subset(e)) && prox.far(comp(Subset(e)), w[1])) return false;
        }
        return true;
    case Axiom::ef_betweenness:
        if (w.size() != 2 || prox.near(w[0], comp(w[1]))) return false;
        for (Mask c = 0; c <= full; ++c) {
            if (prox.far(w[0], comp(Subset(c))) && prox.far(Subset(c), comp(w[1]))) return false;
        }
        return true;
    }
    return false;
}

}  // namespace hyperprox
