#include "cross_check.hpp"

#include <functional>
#include <sstream>

#include "hyperprox/hyperspace.hpp"
#include "hyperprox/strong.hpp"
#include "raw_oracle.hpp"

namespace oracle {

namespace {

using namespace hyperprox;

std::vector<Set> raw(const std::vector<Subset>& v) {
    std::vector<Set> out;
    for (Subset s : v) out.push_back(s.bits());
    return out;
}

struct Spec {
    std::string name;
    HyperSpec raw;
    std::function<TopologySpec(const ProximityRelation&)> lib;
};

std::vector<Spec> specs_for(const Space& sp, const GroundSpace& space) {
    std::vector<Spec> out;
    using K = HyperSpec;
    out.push_back({"vietoris", {K::vietoris, {}}, [](const ProximityRelation&) { return TopologySpec::vietoris(); }});
    out.push_back({"trivial", {K::trivial, {}}, [](const ProximityRelation&) { return TopologySpec::trivial(); }});
    out.push_back({"far_miss", {K::far_miss, {}}, [](const ProximityRelation& p) { return TopologySpec::far_miss(p); }});
    out.push_back({"sf_miss", {K::sf_miss, {}}, [](const ProximityRelation& p) { return TopologySpec::sf_miss(p); }});
    out.push_back({"far_miss_only", {K::far_miss_only, {}},
                   [](const ProximityRelation& p) { return TopologySpec::far_miss(p, false); }});
    out.push_back({"sf_miss_only", {K::sf_miss_only, {}},
                   [](const ProximityRelation& p) { return TopologySpec::sf_miss(p, false); }});

    std::vector<Set> closed;
    for (Set f = 0; f < sp.count(); ++f) {
        if (sp.is_closed(f)) closed.push_back(f);
    }
    for (Set bound : closed) {
        std::vector<Set> below;
        for (Set f : closed) {
            if (subset(f, bound)) below.push_back(f);
        }
        const CompactnessIdeal ideal = CompactnessIdeal::principal(space, Subset(bound));
        out.push_back({"fell:" + std::to_string(bound), {K::fell, below},
                       [ideal](const ProximityRelation&) { return TopologySpec::fell(ideal); }});
    }
    for (unsigned pick = 0; pick < (1U << closed.size()); ++pick) {
        std::vector<Set> fam;
        std::vector<Subset> lib;
        for (std::size_t i = 0; i < closed.size(); ++i) {
            if ((pick >> i) & 1U) {
                fam.push_back(closed[i]);
                lib.emplace_back(closed[i]);
            }
        }
        out.push_back({"hitmiss:" + std::to_string(pick), {K::hitmiss, fam},
                       [lib](const ProximityRelation&) { return TopologySpec::hit_and_miss(lib); }});
    }
    return out;
}

}  // namespace

CrossCheck cross_check_two_points() {
    constexpr int n = 2;
    CrossCheck result;
    auto mismatch = [&](const std::string& what) {
        if (result.mismatches.size() < 10) result.mismatches.push_back(what);
        ++result.mismatch_count;
    };

    std::vector<std::pair<Set, Set>> pairs;
    for (Set a = 1; a < (1U << n); ++a) {
        for (Set b = a; b < (1U << n); ++b) pairs.emplace_back(a, b);
    }

    for (const Space& sp : all_topologies(n)) {
        ++result.topologies;
        std::vector<Subset> opens;
        for (Set u = 0; u < sp.count(); ++u) {
            if (sp.open[u]) opens.emplace_back(u);
        }
        const GroundSpace space = GroundSpace::create(PointSet(n), opens);
        const auto specs = specs_for(sp, space);
        auto hyper = Hyperspace::enumerate(space);

        for (unsigned bits = 0; bits < (1U << pairs.size()); ++bits) {
            ++result.relations;
            std::vector<std::pair<Set, Set>> raw_pairs;
            std::vector<std::pair<Subset, Subset>> lib_pairs;
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                if ((bits >> k) & 1U) {
                    raw_pairs.push_back(pairs[k]);
                    lib_pairs.emplace_back(Subset(pairs[k].first), Subset(pairs[k].second));
                }
            }
            const Near near = table_relation(n, raw_pairs);
            const ProximityRelation prox = table_proximity(space, lib_pairs);
            std::ostringstream where;
            where << "topology#" << result.topologies << " table " << bits << ": ";

            const Axioms want = axioms(sp, near);
            const ProximityAxiomReport got = check_axioms(prox);
            for (std::size_t k = 0; k < 8; ++k) {
                ++result.axiom_checks;
                const auto& v = got.verdicts[k];
                if (v.passed != want.pass[k] || (!v.passed && raw(v.witness) != want.witness[k])) {
                    mismatch(where.str() + "axiom " + to_string(v.axiom));
                }
            }
            if (std::string(to_string(got.classification)) != classify(want)) {
                mismatch(where.str() + "classification " + to_string(got.classification));
            }

            for (Set a = 0; a < sp.count(); ++a) {
                for (Set b = 0; b < sp.count(); ++b) {
                    result.strong_checks += 2;
                    const auto sf_want = strongly_far(sp, near, a, b);
                    const auto sf_got = strongly_far(prox, Subset(a), Subset(b));
                    if (sf_got.holds != sf_want.first ||
                        (sf_got.holds && sf_got.witness.front().bits() != sf_want.second)) {
                        mismatch(where.str() + "strongly_far " + std::to_string(a) + "," + std::to_string(b));
                    }
                    const auto hat_want = hat_strongly_far(sp, a, b);
                    const auto hat_got = hat_strongly_far(space, Subset(a), Subset(b));
                    if (hat_got.holds != hat_want.first ||
                        (hat_got.holds && (hat_got.witness[0].bits() != hat_want.second.first ||
                                           hat_got.witness[1].bits() != hat_want.second.second))) {
                        mismatch(where.str() + "hat_strongly_far " + std::to_string(a) + "," + std::to_string(b));
                    }
                }
            }

            std::vector<std::set<Family>> raw_tops;
            std::vector<HyperTopologyBase> lib_tops;
            for (const auto& s : specs) {
                raw_tops.push_back(hypertopology(sp, near, s.raw));
                lib_tops.push_back(build_topology(hyper, s.lib(prox)));
            }
            for (std::size_t i = 0; i < specs.size(); ++i) {
                for (std::size_t j = 0; j < specs.size(); ++j) {
                    ++result.refine_checks;
                    const Refinement r = refines(lib_tops[i], lib_tops[j]);
                    if (r.holds != oracle::refines(raw_tops[i], raw_tops[j])) {
                        mismatch(where.str() + "refines " + specs[i].name + " / " + specs[j].name);
                    } else if (!r.holds && !lib_tops[j].base[*r.base_index].test(*r.hyperpoint)) {
                        mismatch(where.str() + "refinement witness outside its open " + specs[j].name);
                    }
                }
            }
        }
    }
    return result;
}

}  // namespace oracle
