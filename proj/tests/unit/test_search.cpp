#include <gtest/gtest.h>

#include "helpers.hpp"
#include "hyperprox/model_ops.hpp"
#include "hyperprox/search.hpp"

using namespace hyperprox;
using namespace hyperprox::testing;

namespace {

constexpr std::uint64_t kBudget = 50'000'000;

SearchTarget only(TargetName name, int max_n, std::vector<CandidateKind> kinds) {
    SearchTarget t = SearchTarget::defaults(name, max_n);
    t.kinds = std::move(kinds);
    return t;
}

}  // namespace

TEST(EnumeratePointRelations, Counts) {
    EXPECT_EQ(enumerate_point_relations(1).size(), 1U);
    EXPECT_EQ(enumerate_point_relations(2).size(), 2U);
    EXPECT_EQ(enumerate_point_relations(3).size(), 8U);
    EXPECT_EQ(enumerate_point_relations(3, true).size(), 4U);
    // Graphs on 4 and 5 vertices up to isomorphism.
    EXPECT_EQ(enumerate_point_relations(4, true).size(), 11U);
    EXPECT_EQ(enumerate_point_relations(5, true).size(), 34U);
    EXPECT_THROW(enumerate_point_relations(7), CapExceeded);
    const auto two = enumerate_point_relations(2);
    EXPECT_FALSE(two[0].related(0, 1));
    EXPECT_TRUE(two[1].related(0, 1));
}

TEST(EnumerateTopologies, Counts) {
    const std::size_t expected[] = {1, 4, 29, 355, 6942};
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(enumerate_topologies(n).size(), expected[n - 1]) << n;
    EXPECT_THROW(enumerate_topologies(6), CapExceeded);
}

TEST(Targets, NamesRoundTrip) {
    for (TargetName t : {TargetName::lodato_not_ef, TargetName::far_not_strongly_far, TargetName::sf_not_hat,
                         TargetName::miss_inclusion_violation, TargetName::incomparable_topologies,
                         TargetName::basic_not_lodato}) {
        EXPECT_EQ(parse_target_name(to_string(t)), t);
    }
    try {
        parse_target_name("everything");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_target);
    }
    SearchTarget bad = SearchTarget::defaults(TargetName::sf_not_hat, 3);
    bad.min_n = 4;
    EXPECT_THROW(search(bad, kBudget, 0), Error);
    EXPECT_THROW(search(SearchTarget::defaults(TargetName::sf_not_hat, 7), kBudget, 0), CapExceeded);
}

// Every basic relation on at most two points is point-generated by an
// (automatically transitive) relation, so no raw table of size two is basic
// without being Lodato; the first witness appears at n = 3.
TEST(Search, BasicNotLodatoNeedsThreePoints) {
    const auto tables = search(only(TargetName::basic_not_lodato, 2, {CandidateKind::table}), kBudget, 0);
    EXPECT_EQ(tables.status, SearchStatus::exhausted_no_witness);
    EXPECT_EQ(tables.exhaustive_per_n, (std::vector<std::uint64_t>{2, 256}));

    const auto found = search(SearchTarget::defaults(TargetName::basic_not_lodato, 3), kBudget, 0);
    ASSERT_EQ(found.status, SearchStatus::witness_found);
    ASSERT_TRUE(found.witness.has_value());
    EXPECT_EQ(found.witness->n, 3);
    EXPECT_TRUE(replay(found));
    const Model m = build_model(*found.witness);
    EXPECT_EQ(check_axioms(m.prox).classification, ProximityClass::basic);
}

TEST(Search, SfNotHatExhaustsOnCompatibleLodato) {
    const auto r = search(SearchTarget::defaults(TargetName::sf_not_hat, 3), kBudget, 0);
    EXPECT_EQ(r.status, SearchStatus::exhausted_no_witness);
    EXPECT_FALSE(r.witness.has_value());
}

TEST(Search, FarNotStronglyFarExhaustsOnPointGenerated) {
    const auto r = search(only(TargetName::far_not_strongly_far, 3, {CandidateKind::point_relation}), kBudget, 0);
    EXPECT_EQ(r.status, SearchStatus::exhausted_no_witness);
    EXPECT_EQ(r.exhaustive_per_n, (std::vector<std::uint64_t>{1, 8, 232}));
}

TEST(Search, LodatoNotEfExhausts) {
    const auto r = search(SearchTarget::defaults(TargetName::lodato_not_ef, 3), kBudget, 0);
    EXPECT_EQ(r.status, SearchStatus::exhausted_no_witness);
}

TEST(Search, IncomparableTopologiesCompletesAtFour) {
    const auto r = search(SearchTarget::defaults(TargetName::incomparable_topologies, 4), kBudget, 0);
    EXPECT_NE(r.status, SearchStatus::budget_exhausted);
    EXPECT_EQ(r.randomized, 0U);
    if (r.status == SearchStatus::witness_found) EXPECT_TRUE(replay(r));
}

TEST(Search, MissInclusionViolationWithoutHypothesesIsFound) {
    SearchTarget t = only(TargetName::miss_inclusion_violation, 3, {CandidateKind::overlap});
    t.require_t1 = false;
    t.require_lodato = false;
    t.require_compatible = false;
    const auto r = search(t, kBudget, 0);
    ASSERT_EQ(r.status, SearchStatus::witness_found);
    EXPECT_TRUE(replay(r));
    EXPECT_FALSE(build_model(*r.witness).space.is_t1());

    EXPECT_EQ(search(SearchTarget::defaults(TargetName::miss_inclusion_violation, 3), kBudget, 0).status,
              SearchStatus::exhausted_no_witness);
}

TEST(Search, DeterministicAndSeeded) {
    const auto t = SearchTarget::defaults(TargetName::far_not_strongly_far, 6);
    const auto a = search(t, 2'000'000, 11);
    const auto b = search(t, 2'000'000, 11);
    EXPECT_EQ(a.status, SearchStatus::budget_exhausted);
    EXPECT_GT(a.randomized, 0U);
    EXPECT_EQ(a.candidates, b.candidates);
    EXPECT_EQ(a.evaluations, b.evaluations);
    EXPECT_EQ(a.summary, b.summary);

    // Exhaustive runs ignore the seed.
    const auto e1 = search(SearchTarget::defaults(TargetName::basic_not_lodato, 3), kBudget, 1);
    const auto e2 = search(SearchTarget::defaults(TargetName::basic_not_lodato, 3), kBudget, 99);
    EXPECT_EQ(serialize_model(*e1.witness), serialize_model(*e2.witness));
}

TEST(Search, TinyBudgetStops) {
    const auto r = search(SearchTarget::defaults(TargetName::sf_not_hat, 3), 10, 0);
    EXPECT_EQ(r.status, SearchStatus::budget_exhausted);
}

TEST(Replay, PerturbedWitnessFails) {
    const auto found = search(SearchTarget::defaults(TargetName::basic_not_lodato, 3), kBudget, 0);
    ASSERT_TRUE(found.witness.has_value());
    ModelFile flipped = *found.witness;
    auto& pairs = flipped.proximity.point_pairs;
    // Flip the first point pair.
    const std::pair<int, int> first{0, 1};
    if (auto it = std::find(pairs.begin(), pairs.end(), first); it != pairs.end()) {
        pairs.erase(it);
    } else {
        pairs.insert(pairs.begin(), first);
    }
    EXPECT_FALSE(replay(flipped));

    // A table witness with one near-pair bit flipped.
    ModelFile table = parse_model(R"(points: 2
subsets:
  A: [0]
  B: [1]
proximity:
  kind: table
  near:
    - [[0], [0]]
    - [[1], [1]]
    - [[0], [0, 1]]
    - [[1], [0, 1]]
    - [[0, 1], [0, 1]]
replay:
  calls:
    - op: far
      args: ["A", "B"]
      expect: "true"
    - op: classification
      expect: "ef"
)");
    EXPECT_TRUE(replay(table));
    table.proximity.near_pairs.emplace_back(S({0}), S({1}));
    EXPECT_FALSE(replay(table));
}

TEST(Replay, MalformedWitness) {
    auto expect_malformed = [](const std::string& text) {
        try {
            replay(parse_model(text));
            FAIL() << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::malformed_witness);
        }
    };
    expect_malformed("points: 2\n");
    expect_malformed("points: 2\nreplay:\n  calls:\n    - op: teleport\n      expect: \"true\"\n");
    expect_malformed("points: 2\nreplay:\n  calls:\n    - op: far\n      args: [\"A\", \"B\"]\n      expect: \"true\"\n");
    expect_malformed("points: 2\nreplay:\n  calls:\n    - op: axiom\n      args: [\"P9\"]\n      expect: \"pass\"\n");
    SearchOutcome empty;
    EXPECT_THROW(replay(empty), Error);
}

TEST(ModelOps, TopologySpecNames) {
    const Model m = build_model(parse_model("points: 3\nsubsets:\n  K: [0, 1]\nideal:\n  bound: [0]\n"));
    EXPECT_EQ(resolve_topology_spec(m, "vietoris").kind, TopologySpec::Kind::vietoris);
    EXPECT_EQ(resolve_topology_spec(m, "fell").ideal->bound(), S({0}));
    EXPECT_EQ(resolve_topology_spec(m, "fell:all").ideal->bound(), S({0, 1, 2}));
    EXPECT_EQ(resolve_topology_spec(m, "hitmiss:K+{2}").closed_family, (std::vector<Subset>{S({0, 1}), S({2})}));
    EXPECT_EQ(resolve_topology_spec(m, "sf_miss_only").kind, TopologySpec::Kind::sf_miss_only);
    EXPECT_THROW(resolve_topology_spec(m, "zariski"), Error);
    const Model no_ideal = build_model(parse_model("points: 2\n"));
    EXPECT_THROW(resolve_topology_spec(no_ideal, "fell"), Error);
}
