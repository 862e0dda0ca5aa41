#pragma once
// Brute-force reference implementations written straight from the set
// definitions. Deliberately shares nothing with the library: no closure
// tables, no point relations, no bases.

#include <algorithm>
#include <array>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Set = unsigned;

inline bool subset(Set a, Set b) { return (a & ~b) == 0; }

struct Space {
    int n = 0;
    std::vector<bool> open;  // indexed by mask

    Set full() const { return (1U << n) - 1; }
    Set count() const { return 1U << n; }
    bool is_closed(Set a) const { return open[full() & ~a]; }

    // Largest open set inside a.
    Set interior(Set a) const {
        Set out = 0;
        for (Set u = 0; u < count(); ++u) {
            if (open[u] && subset(u, a)) out |= u;
        }
        return out;
    }
    // Intersection of the closed supersets of a.
    Set closure(Set a) const {
        Set out = full();
        for (Set f = 0; f < count(); ++f) {
            if (is_closed(f) && subset(a, f)) out &= f;
        }
        return out;
    }
    bool t1() const {
        for (int x = 0; x < n; ++x) {
            if (!is_closed(1U << x)) return false;
        }
        return true;
    }
};

/// Every family of subsets of an n-set that is a topology (checked
/// directly, not via specialization preorders).
inline std::vector<Space> all_topologies(int n) {
    const Set count = 1U << n;
    const Set full = count - 1;
    std::vector<Space> out;
    for (unsigned long fam = 0; fam < (1UL << count); ++fam) {
        auto in = [&](Set s) { return ((fam >> s) & 1UL) != 0; };
        if (!in(0) || !in(full)) continue;
        bool ok = true;
        for (Set a = 0; a < count && ok; ++a) {
            for (Set b = 0; b < count && ok; ++b) {
                if (in(a) && in(b) && (!in(a | b) || !in(a & b))) ok = false;
            }
        }
        if (!ok) continue;
        Space s;
        s.n = n;
        s.open.assign(count, false);
        for (Set a = 0; a < count; ++a) s.open[a] = in(a);
        out.push_back(std::move(s));
    }
    return out;
}

struct Near {
    int n = 0;
    std::vector<bool> table;  // index a * 2^n + b

    bool operator()(Set a, Set b) const { return table[(a << n) | b]; }
    bool far(Set a, Set b) const { return !(*this)(a, b); }
};

/// Symmetric table: listed unordered pairs are near, the rest far.
inline Near table_relation(int n, const std::vector<std::pair<Set, Set>>& near_pairs) {
    Near r;
    r.n = n;
    r.table.assign(std::size_t{1} << (2 * n), false);
    for (auto [a, b] : near_pairs) {
        r.table[(a << n) | b] = true;
        r.table[(b << n) | a] = true;
    }
    return r;
}

// Order: P0 P1 P2 P3 P4 P5 EF EF-betweenness.
struct Axioms {
    std::array<bool, 8> pass{};
    std::array<std::vector<Set>, 8> witness;
};

inline Axioms axioms(const Space& sp, const Near& near) {
    const Set count = sp.count();
    const Set X = sp.full();
    Axioms r;
    r.pass.fill(true);
    auto fail = [&](int k, std::vector<Set> w) {
        if (r.pass[static_cast<std::size_t>(k)]) {
            r.pass[static_cast<std::size_t>(k)] = false;
            r.witness[static_cast<std::size_t>(k)] = std::move(w);
        }
    };
    for (Set a = 0; a < count; ++a) {
        for (Set b = 0; b < count; ++b) {
            if (near(a, b) != near(b, a)) fail(0, {a, b});
            if (near(a, b) && (a == 0 || b == 0)) fail(1, {a, b});
            if ((a & b) != 0 && !near(a, b)) fail(2, {a, b});
        }
    }
    for (Set a = 0; a < count; ++a) {
        for (Set b = 0; b < count; ++b) {
            for (Set c = 0; c < count; ++c) {
                if (near(a, b | c) != (near(a, b) || near(a, c))) fail(3, {a, b, c});
            }
        }
    }
    for (Set a = 0; a < count; ++a) {
        for (Set b = 0; b < count; ++b) {
            for (Set c = 0; c < count; ++c) {
                bool every_point_near = true;
                for (int x = 0; x < sp.n; ++x) {
                    if (((b >> x) & 1U) && !near(1U << x, c)) every_point_near = false;
                }
                if (near(a, b) && every_point_near && !near(a, c)) fail(4, {a, b, c});
            }
        }
    }
    for (int x = 0; x < sp.n; ++x) {
        for (int y = 0; y < sp.n; ++y) {
            if (x != y && near(1U << x, 1U << y)) fail(5, {1U << x, 1U << y});
        }
    }
    for (Set a = 0; a < count; ++a) {
        for (Set b = 0; b < count; ++b) {
            if (near(a, b)) continue;
            bool separated = false;
            for (Set e = 0; e < count; ++e) {
                if (near.far(a, e) && near.far(X & ~e, b)) separated = true;
            }
            if (!separated) fail(6, {a, b});
        }
    }
    auto ll = [&](Set a, Set b) { return near.far(a, X & ~b); };
    for (Set a = 0; a < count; ++a) {
        for (Set b = 0; b < count; ++b) {
            if (!ll(a, b)) continue;
            bool between = false;
            for (Set c = 0; c < count; ++c) {
                if (ll(a, c) && ll(c, b)) between = true;
            }
            if (!between) fail(7, {a, b});
        }
    }
    return r;
}

inline bool basic(const Axioms& r) { return r.pass[0] && r.pass[1] && r.pass[2] && r.pass[3]; }

/// "ef" | "lodato" | "basic" | "not-basic".
inline const char* classify(const Axioms& r) {
    if (!basic(r)) return "not-basic";
    if (r.pass[6]) return "ef";
    if (r.pass[4]) return "lodato";
    return "basic";
}

/// First C (ascending) with A far X\C and C far B, when A far B.
inline std::pair<bool, Set> strongly_far(const Space& sp, const Near& near, Set a, Set b) {
    if (near(a, b)) return {false, 0};
    for (Set c = 0; c < sp.count(); ++c) {
        if (near.far(a, sp.full() & ~c) && near.far(c, b)) return {true, c};
    }
    return {false, 0};
}

/// First (E, C) in lexicographic order with A in int cl E, B in int cl C and
/// the two regions disjoint.
inline std::pair<bool, std::pair<Set, Set>> hat_strongly_far(const Space& sp, Set a, Set b) {
    for (Set e = 0; e < sp.count(); ++e) {
        const Set re = sp.interior(sp.closure(e));
        if (!subset(a, re)) continue;
        for (Set c = 0; c < sp.count(); ++c) {
            const Set rc = sp.interior(sp.closure(c));
            if (subset(b, rc) && (re & rc) == 0) return {true, {e, c}};
        }
    }
    return {false, {0, 0}};
}

// ---------------------------------------------------------------------------
// Hyperspace topologies, as full lattices of open families.

using Family = unsigned long;  // bit i = i-th nonempty closed set

inline std::vector<Set> hyperpoints(const Space& sp) {
    std::vector<Set> out;
    for (Set f = 1; f < sp.count(); ++f) {
        if (sp.is_closed(f)) out.push_back(f);
    }
    return out;
}

template <typename Pred>
Family family(const std::vector<Set>& cl, Pred pred) {
    Family out = 0;
    for (std::size_t i = 0; i < cl.size(); ++i) {
        if (pred(cl[i])) out |= 1UL << i;
    }
    return out;
}

/// Every union of finite intersections of the subbase.
inline std::set<Family> generate(std::size_t points, const std::vector<Family>& subbase) {
    const Family all = points >= 64 ? ~0UL : (1UL << points) - 1;
    std::set<Family> base{all};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Family> snapshot(base.begin(), base.end());
        for (Family b : snapshot) {
            for (Family s : subbase) grew |= base.insert(b & s).second;
        }
    }
    std::set<Family> opens{0};
    grew = true;
    while (grew) {
        grew = false;
        std::vector<Family> snapshot(opens.begin(), opens.end());
        for (Family o : snapshot) {
            for (Family b : base) grew |= opens.insert(o | b).second;
        }
    }
    return opens;
}

/// Every open of `right` is open in `left`.
inline bool refines(const std::set<Family>& left, const std::set<Family>& right) {
    return std::includes(left.begin(), left.end(), right.begin(), right.end());
}

struct HyperSpec {
    enum Kind { vietoris, fell, hitmiss, far_miss, sf_miss, far_miss_only, sf_miss_only, trivial } kind;
    std::vector<Set> closed;  // fell: sets below the bound; hitmiss: the family
};

inline std::vector<Family> subbase(const Space& sp, const Near& near, const HyperSpec& spec) {
    const auto cl = hyperpoints(sp);
    const Set X = sp.full();
    std::vector<Family> out;
    const bool hit = spec.kind == HyperSpec::vietoris || spec.kind == HyperSpec::fell ||
                     spec.kind == HyperSpec::hitmiss || spec.kind == HyperSpec::far_miss ||
                     spec.kind == HyperSpec::sf_miss;
    for (Set v = 0; v < sp.count(); ++v) {
        if (!sp.open[v]) continue;
        if (hit) out.push_back(family(cl, [&](Set e) { return (e & v) != 0; }));
        const Set rest = X & ~v;
        auto miss = family(cl, [&](Set e) { return subset(e, v); });
        switch (spec.kind) {
        case HyperSpec::vietoris: out.push_back(miss); break;
        case HyperSpec::fell:
        case HyperSpec::hitmiss:
            if (std::find(spec.closed.begin(), spec.closed.end(), rest) != spec.closed.end()) out.push_back(miss);
            break;
        case HyperSpec::far_miss:
        case HyperSpec::far_miss_only:
            out.push_back(family(cl, [&](Set e) { return rest == 0 || near.far(e, rest); }));
            break;
        case HyperSpec::sf_miss:
        case HyperSpec::sf_miss_only:
            out.push_back(family(cl, [&](Set e) { return rest == 0 || strongly_far(sp, near, e, rest).first; }));
            break;
        case HyperSpec::trivial: break;
        }
    }
    return out;
}

inline std::set<Family> hypertopology(const Space& sp, const Near& near, const HyperSpec& spec) {
    return generate(hyperpoints(sp).size(), subbase(sp, near, spec));
}

}  // namespace oracle
