#include "hyperprox/hyperspace.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

namespace hyperprox {

// ---------------------------------------------------------------------------
// FamilyBits

FamilyBits FamilyBits::all(std::size_t size) {
    FamilyBits f(size);
    for (std::size_t i = 0; i < size; ++i) f.set(i);
    return f;
}

std::size_t FamilyBits::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool FamilyBits::none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool FamilyBits::subset_of(const FamilyBits& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
}

std::vector<std::size_t> FamilyBits::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        }
    }
    return out;
}

FamilyBits& FamilyBits::operator&=(const FamilyBits& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

std::size_t FamilyBits::hash() const {
    // FNV-1a over the words.
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : words_) {
        h ^= w;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

namespace {
struct FamilyHash {
    std::size_t operator()(const FamilyBits& f) const { return f.hash(); }
};
}  // namespace

// ---------------------------------------------------------------------------
// Hyperspace

std::vector<Subset> enumerate_cl(const GroundSpace& space) {
    std::vector<Subset> out;
    for (Subset c : space.closed_sets()) {
        if (!c.empty()) out.push_back(c);
    }
    return out;
}

std::shared_ptr<const Hyperspace> Hyperspace::enumerate(const GroundSpace& space) {
    std::vector<Subset> points = enumerate_cl(space);
    if (points.size() > space.caps().max_hyperpoints) {
        throw CapExceeded("hyperspace CL(X) size", static_cast<int>(points.size()),
                          static_cast<int>(space.caps().max_hyperpoints));
    }
    auto hyper = std::shared_ptr<Hyperspace>(new Hyperspace(space));
    hyper->points_ = std::move(points);
    return hyper;
}

std::optional<std::size_t> Hyperspace::index_of(Subset closed) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), closed);
    if (it == points_.end() || *it != closed) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
}

const char* to_string(FamilyTag tag) {
    switch (tag) {
    case FamilyTag::hit: return "hit";
    case FamilyTag::miss: return "miss";
    case FamilyTag::far_miss: return "far-miss";
    case FamilyTag::sf_miss: return "sf-miss";
    case FamilyTag::custom: return "custom";
    }
    return "?";
}

namespace {

void require_open(const GroundSpace& space, Subset s, const char* op) {
    if (!space.points().contains(s) || !space.is_open(s)) {
        throw Error(ErrorKind::not_open, std::string(op) + ": " + space.points().format(s) + " is not open");
    }
}

template <typename Pred>
HyperFamily collect(const Hyperspace& hyper, FamilyTag tag, Subset generator, Pred pred) {
    HyperFamily family{FamilyBits(hyper.size()), {{tag, generator}}};
    for (std::size_t i = 0; i < hyper.size(); ++i) {
        if (pred(hyper[i])) family.members.set(i);
    }
    return family;
}

}  // namespace

HyperFamily hit_set(const Hyperspace& hyper, Subset v) {
    require_open(hyper.space(), v, "hit_set");
    return collect(hyper, FamilyTag::hit, v, [v](Subset e) { return e.intersects(v); });
}

HyperFamily miss_set(const Hyperspace& hyper, Subset w) {
    require_open(hyper.space(), w, "miss_set");
    return collect(hyper, FamilyTag::miss, w, [w](Subset c) { return c.subset_of(w); });
}

HyperFamily far_miss_set(const Hyperspace& hyper, const ProximityRelation& prox, Subset a) {
    require_open(hyper.space(), a, "far_miss_set");
    const Subset rest = hyper.space().complement(a);
    return collect(hyper, FamilyTag::far_miss, a, [&](Subset e) { return rest.empty() || prox.far(e, rest); });
}

HyperFamily sf_miss_set(const Hyperspace& hyper, const ProximityRelation& prox, Subset a) {
    require_open(hyper.space(), a, "sf_miss_set");
    const Subset rest = hyper.space().complement(a);
    return collect(hyper, FamilyTag::sf_miss, a,
                   [&](Subset e) { return rest.empty() || strongly_far(prox, e, rest).holds; });
}

bool replay_family(const Hyperspace& hyper, const HyperFamily& family, const ProximityRelation* prox) {
    if (family.provenance.empty()) return false;
    const Provenance& p = family.provenance.front();
    HyperFamily again;
    switch (p.tag) {
    case FamilyTag::hit: again = hit_set(hyper, p.generator); break;
    case FamilyTag::miss: again = miss_set(hyper, p.generator); break;
    case FamilyTag::far_miss:
        if (prox == nullptr) return false;
        again = far_miss_set(hyper, *prox, p.generator);
        break;
    case FamilyTag::sf_miss:
        if (prox == nullptr) return false;
        again = sf_miss_set(hyper, *prox, p.generator);
        break;
    case FamilyTag::custom: return false;
    }
    return again.members == family.members;
}

// ---------------------------------------------------------------------------
// Topologies

std::string TopologySpec::name() const {
    switch (kind) {
    case Kind::vietoris: return "vietoris";
    case Kind::fell: return "fell";
    case Kind::hit_and_miss: return "hitmiss";
    case Kind::far_miss: return "far_miss";
    case Kind::sf_miss: return "sf_miss";
    case Kind::far_miss_only: return "far_miss_only";
    case Kind::sf_miss_only: return "sf_miss_only";
    case Kind::trivial: return "trivial";
    }
    return "?";
}

HyperTopologyBase build_topology(std::shared_ptr<const Hyperspace> hyper, const TopologySpec& spec) {
    const GroundSpace& space = hyper->space();
    using Kind = TopologySpec::Kind;

    std::vector<HyperFamily> generated;
    const bool with_hit = spec.kind == Kind::vietoris || spec.kind == Kind::fell || spec.kind == Kind::hit_and_miss ||
                          spec.kind == Kind::far_miss || spec.kind == Kind::sf_miss;
    if (with_hit) {
        for (Subset v : space.opens()) generated.push_back(hit_set(*hyper, v));
    }

    const bool needs_prox = spec.kind == Kind::far_miss || spec.kind == Kind::sf_miss ||
                            spec.kind == Kind::far_miss_only || spec.kind == Kind::sf_miss_only;
    if (needs_prox) {
        if (!spec.prox) throw Error(ErrorKind::spec_invalid, spec.name() + " topology needs a proximity");
        if (!(spec.prox->space() == space)) {
            throw Error(ErrorKind::spec_invalid, spec.name() + " proximity lives on a different space");
        }
    }
    std::vector<Subset> hm_family;
    if (spec.kind == Kind::hit_and_miss) {
        for (Subset b : spec.closed_family) {
            if (!space.points().contains(b) || !space.is_closed(b)) {
                throw Error(ErrorKind::spec_invalid, "hit-and-miss family member " + space.points().format(b) +
                                                         " is not closed");
            }
        }
        hm_family = spec.closed_family;
        std::sort(hm_family.begin(), hm_family.end());
    }
    if (spec.kind == Kind::fell && !spec.ideal) {
        throw Error(ErrorKind::spec_invalid, "fell topology needs a compactness ideal");
    }

    for (Subset w : space.opens()) {
        const Subset rest = space.complement(w);
        switch (spec.kind) {
        case Kind::vietoris: generated.push_back(miss_set(*hyper, w)); break;
        case Kind::fell:
            if (spec.ideal->contains(rest)) generated.push_back(miss_set(*hyper, w));
            break;
        case Kind::hit_and_miss:
            if (std::binary_search(hm_family.begin(), hm_family.end(), rest)) generated.push_back(miss_set(*hyper, w));
            break;
        case Kind::far_miss:
        case Kind::far_miss_only: generated.push_back(far_miss_set(*hyper, *spec.prox, w)); break;
        case Kind::sf_miss:
        case Kind::sf_miss_only: generated.push_back(sf_miss_set(*hyper, *spec.prox, w)); break;
        case Kind::trivial: break;
        }
    }

    HyperTopologyBase result;
    result.hyperspace = hyper;
    result.label = spec.name();

    std::unordered_map<FamilyBits, std::size_t, FamilyHash> seen;
    for (auto& family : generated) {
        auto [it, inserted] = seen.try_emplace(family.members, result.subbase.size());
        if (inserted) {
            result.subbase.push_back(std::move(family));
        } else {
            auto& prov = result.subbase[it->second].provenance;
            prov.insert(prov.end(), family.provenance.begin(), family.provenance.end());
        }
    }

    std::unordered_set<FamilyBits, FamilyHash> base{FamilyBits::all(hyper->size())};
    for (const auto& family : result.subbase) {
        std::vector<FamilyBits> fresh;
        for (const auto& b : base) {
            FamilyBits meet = b & family.members;
            if (!base.contains(meet)) fresh.push_back(std::move(meet));
        }
        for (auto& f : fresh) base.insert(std::move(f));
        if (base.size() > space.caps().max_base) {
            throw CapExceeded("topology base size", static_cast<int>(base.size()),
                              static_cast<int>(space.caps().max_base));
        }
    }
    result.base.assign(base.begin(), base.end());
    std::sort(result.base.begin(), result.base.end());
    return result;
}

const char* to_string(ComparisonVerdict v) {
    switch (v) {
    case ComparisonVerdict::equal: return "equal";
    case ComparisonVerdict::left_strictly_finer: return "left-strictly-finer";
    case ComparisonVerdict::right_strictly_finer: return "right-strictly-finer";
    case ComparisonVerdict::incomparable: return "incomparable";
    }
    return "?";
}

Refinement refines(const HyperTopologyBase& left, const HyperTopologyBase& right) {
    if (!left.hyperspace || !right.hyperspace || !(*left.hyperspace == *right.hyperspace)) {
        throw Error(ErrorKind::mismatched_hyperspace, "bases live on different hyperspaces");
    }
    const std::size_t size = left.hyperspace->size();
    // The left base is intersection-closed, so the meet of its members around
    // p is the smallest left-open neighbourhood of p.
    std::vector<FamilyBits> smallest(size, FamilyBits::all(size));
    for (const auto& b : left.base) {
        for (std::size_t p : b.indices()) smallest[p] &= b;
    }
    for (std::size_t g = 0; g < right.base.size(); ++g) {
        for (std::size_t p : right.base[g].indices()) {
            if (!smallest[p].subset_of(right.base[g])) {
                return {false, g, p};
            }
        }
    }
    return {};
}

Comparison compare(const HyperTopologyBase& left, const HyperTopologyBase& right) {
    Comparison c;
    c.left_refines_right = refines(left, right);
    c.right_refines_left = refines(right, left);
    const bool l = c.left_refines_right.holds;
    const bool r = c.right_refines_left.holds;
    c.verdict = l && r   ? ComparisonVerdict::equal
                : l      ? ComparisonVerdict::left_strictly_finer
                : r      ? ComparisonVerdict::right_strictly_finer
                         : ComparisonVerdict::incomparable;
    return c;
}

// ---------------------------------------------------------------------------
// Miss-inclusion contracts

ContractCheck check_miss_inclusion_contract(const ProximityRelation& prox) {
    const GroundSpace& space = prox.space();
    auto hyper = Hyperspace::enumerate(space);
    ContractCheck check;
    const bool t1 = space.is_t1();
    const bool lodato = check_axioms(prox).is_lodato();
    const bool compatible = is_compatible(prox).compatible;
    check.hypotheses_met = t1 && lodato && compatible;
    if (!t1) check.note = "space is not T1";
    else if (!lodato) check.note = "relation is not Lodato";
    else if (!compatible) check.note = "relation is not compatible with the topology";

    std::vector<FamilyBits> far_miss, sf_miss;
    for (Subset closed : hyper->points()) {
        const Subset open = space.complement(closed);
        far_miss.push_back(far_miss_set(*hyper, prox, open).members);
        sf_miss.push_back(sf_miss_set(*hyper, prox, open).members);
    }
    for (std::size_t b = 0; b < hyper->size(); ++b) {
        for (std::size_t c = 0; c < hyper->size(); ++c) {
            ++check.pairs_checked;
            if (!far_miss[b].subset_of(sf_miss[c])) continue;
            ++check.premise_held;
            if (!(*hyper)[c].subset_of((*hyper)[b])) {
                check.violations.emplace_back((*hyper)[b], (*hyper)[c]);
            }
        }
    }
    return check;
}

ContractCheck check_alexandroff_miss_contract(const ProximityRelation& prox) {
    const GroundSpace& space = prox.space();
    auto hyper = Hyperspace::enumerate(space);
    ContractCheck check;
    check.hypotheses_met = prox.kind() == ProximityKind::alexandroff;
    check.note = check.hypotheses_met
                     ? "finite spaces are compact; violations are scope findings, not failures"
                     : "relation is not an Alexandroff proximity";
    std::vector<FamilyBits> far_miss, sf_miss;
    for (Subset open : space.opens()) {
        far_miss.push_back(far_miss_set(*hyper, prox, open).members);
        sf_miss.push_back(sf_miss_set(*hyper, prox, open).members);
    }
    const auto opens = space.opens();
    for (std::size_t h = 0; h < opens.size(); ++h) {
        for (std::size_t e = 0; e < opens.size(); ++e) {
            ++check.pairs_checked;
            const bool inclusion = sf_miss[h].subset_of(far_miss[e]);
            if (inclusion) ++check.premise_held;
            if (inclusion != opens[h].subset_of(opens[e])) {
                check.violations.emplace_back(opens[h], opens[e]);
            }
        }
    }
    return check;
}

}  // namespace hyperprox
