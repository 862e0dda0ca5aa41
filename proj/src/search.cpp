#include "hyperprox/search.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "hyperprox/hyperspace.hpp"
#include "hyperprox/model_ops.hpp"
#include "hyperprox/strong.hpp"

namespace hyperprox {

const char* to_string(TargetName name) {
    switch (name) {
    case TargetName::lodato_not_ef: return "lodato-not-ef";
    case TargetName::far_not_strongly_far: return "far-not-strongly-far";
    case TargetName::sf_not_hat: return "sf-not-hat";
    case TargetName::miss_inclusion_violation: return "lemma37-violation";
    case TargetName::incomparable_topologies: return "incomparable-topologies";
    case TargetName::basic_not_lodato: return "basic-not-lodato";
    }
    return "?";
}

TargetName parse_target_name(std::string_view name) {
    for (TargetName t : {TargetName::lodato_not_ef, TargetName::far_not_strongly_far, TargetName::sf_not_hat,
                         TargetName::miss_inclusion_violation, TargetName::incomparable_topologies,
                         TargetName::basic_not_lodato}) {
        if (name == to_string(t)) return t;
    }
    throw Error(ErrorKind::invalid_target, "unknown search target '" + std::string(name) + "'");
}

const char* to_string(CandidateKind kind) {
    switch (kind) {
    case CandidateKind::point_relation: return "point_relation";
    case CandidateKind::table: return "table";
    case CandidateKind::alexandroff: return "alexandroff";
    case CandidateKind::overlap: return "overlap";
    case CandidateKind::gap: return "gap";
    }
    return "?";
}

int exhaustive_cap(CandidateKind kind) {
    switch (kind) {
    case CandidateKind::point_relation: return 3;
    case CandidateKind::table: return 2;
    case CandidateKind::alexandroff: return 4;
    case CandidateKind::overlap: return 4;
    case CandidateKind::gap: return 4;
    }
    return 0;
}

const char* to_string(SearchStatus status) {
    switch (status) {
    case SearchStatus::witness_found: return "witness-found";
    case SearchStatus::exhausted_no_witness: return "exhausted-no-witness";
    case SearchStatus::budget_exhausted: return "budget-exhausted";
    }
    return "?";
}

SearchTarget SearchTarget::defaults(TargetName name, int max_n) {
    using K = CandidateKind;
    SearchTarget t;
    t.name = name;
    t.max_n = max_n;
    switch (name) {
    case TargetName::basic_not_lodato:
        t.kinds = {K::point_relation, K::table, K::gap, K::alexandroff};
        break;
    case TargetName::lodato_not_ef:
        t.kinds = {K::point_relation, K::table, K::alexandroff, K::gap};
        break;
    case TargetName::far_not_strongly_far:
        t.require_lodato = true;
        t.kinds = {K::point_relation, K::table, K::alexandroff, K::gap};
        break;
    case TargetName::sf_not_hat:
        t.require_lodato = true;
        t.require_compatible = true;
        t.kinds = {K::point_relation, K::table, K::alexandroff, K::overlap};
        break;
    case TargetName::miss_inclusion_violation:
        t.require_lodato = true;
        t.require_compatible = true;
        t.require_t1 = true;
        t.kinds = {K::point_relation, K::table, K::alexandroff, K::overlap};
        break;
    case TargetName::incomparable_topologies:
        t.require_lodato = true;
        t.kinds = {K::alexandroff, K::overlap, K::point_relation};
        break;
    }
    return t;
}

void SearchTarget::validate() const {
    if (min_n < 1 || max_n < min_n) {
        throw Error(ErrorKind::invalid_target, "search needs 1 <= min_n <= max_n");
    }
    if (max_n > kRandomizedMaxPoints) {
        throw CapExceeded("search", max_n, kRandomizedMaxPoints);
    }
    if (kinds.empty()) {
        throw Error(ErrorKind::invalid_target, "search needs at least one candidate kind");
    }
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<PointRelation> enumerate_point_relations(int n, bool up_to_isomorphism) {
    if (n < 1 || n > kRandomizedMaxPoints) {
        throw CapExceeded("enumerate_point_relations", n, kRandomizedMaxPoints);
    }
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    auto pair_index = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        return static_cast<std::size_t>(std::find(pairs.begin(), pairs.end(), std::make_pair(a, b)) - pairs.begin());
    };
    const std::uint32_t count = std::uint32_t{1} << pairs.size();

    // For each permutation, where each pair index goes.
    std::vector<std::vector<std::size_t>> images;
    if (up_to_isomorphism) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<std::size_t> img;
            for (auto [a, b] : pairs) img.push_back(pair_index(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]));
            images.push_back(std::move(img));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    std::vector<PointRelation> out;
    for (std::uint32_t idx = 0; idx < count; ++idx) {
        if (up_to_isomorphism) {
            bool canonical = true;
            for (const auto& img : images) {
                std::uint32_t mapped = 0;
                for (std::size_t k = 0; k < pairs.size(); ++k) {
                    if ((idx >> k) & 1U) mapped |= std::uint32_t{1} << img[k];
                }
                if (mapped < idx) {
                    canonical = false;
                    break;
                }
            }
            if (!canonical) continue;
        }
        PointRelation r(n);
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if ((idx >> k) & 1U) r.set(pairs[k].first, pairs[k].second, true);
        }
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

/// Up-sets of the preorder whose up-closures are `up`.
std::vector<Subset> up_sets(const std::vector<Mask>& up) {
    const int n = static_cast<int>(up.size());
    std::vector<Subset> opens;
    for (Mask u = 0; u < (Mask{1} << n); ++u) {
        bool closed_upward = true;
        for (Mask m = u; m != 0 && closed_upward; m &= m - 1) {
            closed_upward = (up[static_cast<std::size_t>(std::countr_zero(m))] & ~u) == 0;
        }
        if (closed_upward) opens.emplace_back(u);
    }
    return opens;
}

}  // namespace

std::vector<std::vector<Subset>> enumerate_topologies(int n) {
    if (n < 1 || n > 5) throw CapExceeded("enumerate_topologies", n, 5);
    std::vector<std::pair<int, int>> offdiag;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) offdiag.emplace_back(i, j);
        }
    }
    std::vector<std::vector<Subset>> out;
    const std::uint32_t count = std::uint32_t{1} << offdiag.size();
    std::vector<Mask> up(static_cast<std::size_t>(n));
    for (std::uint32_t bits = 0; bits < count; ++bits) {
        for (int i = 0; i < n; ++i) up[static_cast<std::size_t>(i)] = Mask{1} << i;
        for (std::size_t k = 0; k < offdiag.size(); ++k) {
            if ((bits >> k) & 1U) up[static_cast<std::size_t>(offdiag[k].first)] |= Mask{1} << offdiag[k].second;
        }
        bool transitive = true;
        for (int i = 0; i < n && transitive; ++i) {
            for (Mask m = up[static_cast<std::size_t>(i)]; m != 0 && transitive; m &= m - 1) {
                transitive = (up[static_cast<std::size_t>(std::countr_zero(m))] & ~up[static_cast<std::size_t>(i)]) == 0;
            }
        }
        if (transitive) out.push_back(up_sets(up));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Candidates

namespace {

ModelFile topology_file(int n, const std::vector<Subset>& opens) {
    ModelFile f;
    f.n = n;
    if (opens.size() == (std::size_t{1} << n)) {
        f.topology = TopologyForm::discrete;
    } else {
        f.topology = TopologyForm::explicit_opens;
        f.opens = opens;
    }
    return f;
}

std::vector<Subset> closed_sets_of(int n, const std::vector<Subset>& opens) {
    std::vector<Subset> closed;
    for (Subset o : opens) closed.push_back(Subset::full(n) - o);
    std::sort(closed.begin(), closed.end());
    return closed;
}

using Sink = std::function<bool(ModelFile&&)>;

/// Every gap candidate uses the discrete topology and distances in {1,2}.
bool enumerate_gap(int n, const Sink& sink) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    const std::uint32_t count = std::uint32_t{1} << pairs.size();
    for (std::uint32_t bits = 0; bits < count; ++bits) {
        std::vector<std::vector<Rational>> d(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const Rational v((bits >> k) & 1U ? 2 : 1);
            d[static_cast<std::size_t>(pairs[k].first)][static_cast<std::size_t>(pairs[k].second)] = v;
            d[static_cast<std::size_t>(pairs[k].second)][static_cast<std::size_t>(pairs[k].first)] = v;
        }
        std::vector<Rational> epsilons{Rational(0)};
        const Metric metric = Metric::create(d);
        for (const Rational& r : metric.distances()) epsilons.push_back(r);
        for (const Rational& eps : epsilons) {
            ModelFile f;
            f.n = n;
            f.metric = d;
            f.proximity.kind = ProximityKind::gap;
            f.proximity.epsilon = eps;
            if (sink(std::move(f))) return true;
        }
    }
    return false;
}

bool enumerate_tables(int n, const std::vector<std::vector<Subset>>& topologies, const Sink& sink) {
    std::vector<std::pair<Subset, Subset>> pairs;
    const Mask full = Subset::full(n).bits();
    for (Mask a = 1; a <= full; ++a) {
        for (Mask b = a; b <= full; ++b) pairs.emplace_back(Subset(a), Subset(b));
    }
    const std::uint64_t count = std::uint64_t{1} << pairs.size();
    for (const auto& opens : topologies) {
        for (std::uint64_t bits = 0; bits < count; ++bits) {
            ModelFile f = topology_file(n, opens);
            f.proximity.kind = ProximityKind::table;
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                if ((bits >> k) & 1U) f.proximity.near_pairs.push_back(pairs[k]);
            }
            if (sink(std::move(f))) return true;
        }
    }
    return false;
}

bool enumerate_exhaustive(int n, CandidateKind kind, const std::vector<std::vector<Subset>>& topologies,
                          const Sink& sink) {
    switch (kind) {
    case CandidateKind::gap: return enumerate_gap(n, sink);
    case CandidateKind::table: return enumerate_tables(n, topologies, sink);
    case CandidateKind::overlap:
        for (const auto& opens : topologies) {
            ModelFile f = topology_file(n, opens);
            f.proximity.kind = ProximityKind::overlap;
            if (sink(std::move(f))) return true;
        }
        return false;
    case CandidateKind::alexandroff:
        for (const auto& opens : topologies) {
            for (Subset bound : closed_sets_of(n, opens)) {
                ModelFile f = topology_file(n, opens);
                f.ideal_bound = bound;
                f.proximity.kind = ProximityKind::alexandroff;
                if (sink(std::move(f))) return true;
            }
        }
        return false;
    case CandidateKind::point_relation: {
        const auto relations = enumerate_point_relations(n);
        for (const auto& opens : topologies) {
            for (const auto& r : relations) {
                ModelFile f = topology_file(n, opens);
                f.proximity.kind = ProximityKind::point_generated;
                f.proximity.point_pairs = r.pairs();
                if (sink(std::move(f))) return true;
            }
        }
        return false;
    }
    }
    return false;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t below(std::uint64_t k) { return engine_() % k; }
    bool coin() { return (engine_() & 1U) != 0; }

private:
    std::mt19937_64 engine_;
};

std::vector<Subset> random_topology(int n, Rng& rng) {
    std::vector<Mask> up(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        up[static_cast<std::size_t>(i)] = Mask{1} << i;
        for (int j = 0; j < n; ++j) {
            // Sparse relations keep the preorder from collapsing to indiscrete.
            if (i != j && rng.below(4) == 0) up[static_cast<std::size_t>(i)] |= Mask{1} << j;
        }
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if ((up[static_cast<std::size_t>(i)] >> k) & 1U) up[static_cast<std::size_t>(i)] |= up[static_cast<std::size_t>(k)];
        }
    }
    return up_sets(up);
}

ModelFile random_candidate(int n, CandidateKind kind, Rng& rng) {
    switch (kind) {
    case CandidateKind::gap: {
        ModelFile f;
        f.n = n;
        std::vector<std::vector<Rational>> d(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                // Values in [2,4] always satisfy the triangle inequality.
                const Rational v(static_cast<std::int64_t>(2 + rng.below(3)));
                d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
                d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
            }
        }
        f.proximity.kind = ProximityKind::gap;
        f.proximity.epsilon = Rational(static_cast<std::int64_t>(rng.below(5)));
        f.metric = std::move(d);
        return f;
    }
    case CandidateKind::alexandroff: {
        const auto opens = random_topology(n, rng);
        const auto closed = closed_sets_of(n, opens);
        ModelFile f = topology_file(n, opens);
        f.ideal_bound = closed[rng.below(closed.size())];
        f.proximity.kind = ProximityKind::alexandroff;
        return f;
    }
    case CandidateKind::overlap: {
        ModelFile f = topology_file(n, random_topology(n, rng));
        f.proximity.kind = ProximityKind::overlap;
        return f;
    }
    case CandidateKind::point_relation:
    case CandidateKind::table: {
        // Tables beyond n = 2 are drawn as additive (point-generated) relations.
        ModelFile f = topology_file(n, random_topology(n, rng));
        f.proximity.kind = ProximityKind::point_generated;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (rng.coin()) f.proximity.point_pairs.emplace_back(i, j);
            }
        }
        return f;
    }
    }
    return {};
}

/// Evaluates the target on a built model; on success fills the witness
/// subsets and replay calls into `file`.
bool evaluate(const SearchTarget& target, const Model& model, ModelFile& file) {
    const ProximityRelation& prox = model.prox;
    const GroundSpace& space = model.space;
    std::vector<ReplayCall> calls;

    if (target.require_t1) {
        if (!space.is_t1()) return false;
        calls.push_back({"t1", {}, "true"});
    }
    std::optional<ProximityAxiomReport> axioms;
    auto get_axioms = [&]() -> const ProximityAxiomReport& {
        if (!axioms) axioms = check_axioms(prox);
        return *axioms;
    };
    if (target.require_lodato) {
        if (!get_axioms().is_lodato()) return false;
        calls.push_back({"lodato", {}, "true"});
    }
    if (target.require_compatible) {
        if (!is_compatible(prox).compatible) return false;
        calls.push_back({"compatible", {}, "true"});
    }

    std::vector<std::pair<std::string, Subset>> named;
    switch (target.name) {
    case TargetName::basic_not_lodato: {
        const auto& ax = get_axioms();
        if (!ax.is_basic() || ax.passed(Axiom::p4)) return false;
        const auto& w = ax.verdict(Axiom::p4).witness;
        named = {{"A", w[0]}, {"B", w[1]}, {"C", w[2]}};
        calls.push_back({"classification", {}, "basic"});
        calls.push_back({"axiom", {"P4"}, "fail"});
        calls.push_back({"near", {"A", "B"}, "true"});
        calls.push_back({"far", {"A", "C"}, "true"});
        break;
    }
    case TargetName::lodato_not_ef: {
        const auto& ax = get_axioms();
        if (!ax.is_lodato() || ax.passed(Axiom::ef)) return false;
        const auto& w = ax.verdict(Axiom::ef).witness;
        named = {{"A", w[0]}, {"B", w[1]}};
        calls.push_back({"lodato", {}, "true"});
        calls.push_back({"axiom", {"EF"}, "fail"});
        calls.push_back({"far", {"A", "B"}, "true"});
        break;
    }
    case TargetName::far_not_strongly_far: {
        const FarSfReport r = check_far_vs_sf(prox, 1);
        if (r.far_not_strongly_far == 0) return false;
        const auto [a, b] = r.far_not_strongly_far_examples.front();
        named = {{"A", a}, {"B", b}};
        calls.push_back({"far", {"A", "B"}, "true"});
        calls.push_back({"strongly_far", {"A", "B"}, "false"});
        break;
    }
    case TargetName::sf_not_hat: {
        const SfHatReport r = check_sf_implies_hat(prox, true);
        if (r.violations.empty()) return false;
        const auto [a, b] = r.violations.front();
        named = {{"A", a}, {"B", b}};
        calls.push_back({"strongly_far", {"A", "B"}, "true"});
        calls.push_back({"hat_strongly_far", {"A", "B"}, "false"});
        break;
    }
    case TargetName::miss_inclusion_violation: {
        const ContractCheck r = check_miss_inclusion_contract(prox);
        if (r.violations.empty()) return false;
        const auto [b, c] = r.violations.front();
        named = {{"B", b}, {"C", c}};
        calls.push_back({"miss_inclusion", {"B", "C"}, "true"});
        calls.push_back({"subset_of", {"C", "B"}, "false"});
        break;
    }
    case TargetName::incomparable_topologies: {
        auto hyper = Hyperspace::enumerate(space);
        const auto left = build_topology(hyper, TopologySpec::far_miss(prox, false));
        const auto right = build_topology(hyper, TopologySpec::sf_miss(prox, false));
        if (compare(left, right).verdict != ComparisonVerdict::incomparable) return false;
        calls.push_back({"compare", {"far_miss_only", "sf_miss_only"}, "incomparable"});
        break;
    }
    }
    file.subsets = std::move(named);
    file.replay = ReplaySection{to_string(target.name), std::move(calls)};
    return true;
}

}  // namespace

SearchOutcome search(const SearchTarget& target, std::uint64_t budget, std::uint64_t seed) {
    target.validate();
    SearchOutcome outcome;
    outcome.target = target;
    outcome.exhaustive_per_n.assign(static_cast<std::size_t>(target.max_n), 0);
    const Caps caps;
    bool out_of_budget = false;

    auto consider = [&](ModelFile&& file, bool exhaustive, int n) -> bool {
        if (outcome.evaluations >= budget) {
            out_of_budget = true;
            return true;
        }
        ++outcome.candidates;
        if (exhaustive) ++outcome.exhaustive_per_n[static_cast<std::size_t>(n - 1)];
        else ++outcome.randomized;
        const Model model = build_model(file, caps);
        const bool found = evaluate(target, model, file);
        outcome.evaluations += model.prox.evaluations();
        if (found) {
            outcome.status = SearchStatus::witness_found;
            outcome.witness = std::move(file);
            return true;
        }
        return false;
    };

    int largest_cap = 0;
    for (CandidateKind k : target.kinds) largest_cap = std::max(largest_cap, exhaustive_cap(k));

    for (int n = target.min_n; n <= target.max_n; ++n) {
        std::optional<std::vector<std::vector<Subset>>> topologies;
        for (CandidateKind kind : target.kinds) {
            if (n > exhaustive_cap(kind)) continue;
            if (!topologies && kind != CandidateKind::gap) topologies = enumerate_topologies(n);
            static const std::vector<std::vector<Subset>> none;
            if (enumerate_exhaustive(n, kind, topologies ? *topologies : none,
                                     [&](ModelFile&& f) { return consider(std::move(f), true, n); })) {
                goto done;
            }
        }
    }

    if (target.max_n > largest_cap) {
        Rng rng(seed);
        std::vector<std::pair<int, CandidateKind>> slots;
        for (int n = std::max(target.min_n, 1); n <= target.max_n; ++n) {
            for (CandidateKind kind : target.kinds) {
                if (n > exhaustive_cap(kind)) slots.emplace_back(n, kind);
            }
        }
        while (!slots.empty()) {
            const auto [n, kind] = slots[rng.below(slots.size())];
            if (consider(random_candidate(n, kind, rng), false, n)) break;
        }
        if (outcome.status != SearchStatus::witness_found) out_of_budget = true;
    }

done:
    if (outcome.status != SearchStatus::witness_found) {
        outcome.status = out_of_budget ? SearchStatus::budget_exhausted : SearchStatus::exhausted_no_witness;
    }
    std::string kinds;
    for (CandidateKind k : target.kinds) {
        kinds += (kinds.empty() ? "" : ", ") + std::string(to_string(k)) + " n<=" +
                 std::to_string(std::min(target.max_n, exhaustive_cap(k)));
    }
    outcome.summary = std::string(to_string(outcome.status)) + " after " + std::to_string(outcome.candidates) +
                      " candidates (exhaustive: " + kinds + "; randomized draws: " +
                      std::to_string(outcome.randomized) + ")";
    return outcome;
}

bool replay(const ModelFile& witness, const Caps& caps) {
    if (!witness.replay || witness.replay->calls.empty()) {
        throw Error(ErrorKind::malformed_witness, "witness has no replay calls");
    }
    Model model = [&] {
        try {
            return build_model(witness, caps);
        } catch (const Error& e) {
            throw Error(ErrorKind::malformed_witness, std::string("witness model does not build: ") + e.what());
        }
    }();
    for (const auto& call : witness.replay->calls) {
        if (execute_call(model, call) != call.expect) return false;
    }
    return true;
}

bool replay(const SearchOutcome& outcome) {
    if (outcome.status != SearchStatus::witness_found || !outcome.witness) {
        throw Error(ErrorKind::malformed_witness, "outcome carries no witness");
    }
    return replay(parse_model(serialize_model(*outcome.witness)));
}

}  // namespace hyperprox
