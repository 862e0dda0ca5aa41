#include <gtest/gtest.h>

#include "helpers.hpp"
#include "hyperprox/strong.hpp"

using namespace hyperprox;
using namespace hyperprox::testing;

TEST(StronglyIncluded, Examples) {
    const auto overlap3 = overlap_proximity(discrete(3));
    EXPECT_TRUE(strongly_included(overlap3, S({1}), S({0, 1, 2})));
    EXPECT_TRUE(strongly_included(overlap3, S({0}), S({0, 1})));
    EXPECT_TRUE(strongly_included(overlap_proximity(discrete(2)), S({0}), S({0})));
    EXPECT_FALSE(strongly_included(overlap3, S({0, 1}), S({0})));
}

TEST(StronglyFar, Examples) {
    const auto r = strongly_far(overlap_proximity(discrete(2)), S({0}), S({1}));
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.witness, (std::vector<Subset>{S({0})}));

    const auto near = strongly_far(overlap_proximity(discrete(3)), S({0, 1}), S({1, 2}));
    EXPECT_FALSE(near.holds);
    EXPECT_TRUE(near.witness.empty());

    const auto line = line_gap(10, 1);
    const auto fig = strongly_far(line, S({0}), S({9}));
    EXPECT_TRUE(fig.holds);
    ASSERT_EQ(fig.witness.size(), 1U);
    EXPECT_EQ(fig.witness[0], S({0, 1}));
    EXPECT_TRUE(line.far(S({0}), S({2, 3, 4, 5, 6, 7, 8, 9})));
    EXPECT_TRUE(line.far(S({0, 1}), S({9})));
}

TEST(StronglyFar, DegenerateInputsAreFlagged) {
    const auto prox = overlap_proximity(discrete(2));
    const auto r = strongly_far(prox, S({}), S({1}));
    EXPECT_TRUE(r.degenerate);
    EXPECT_TRUE(r.holds);
    EXPECT_TRUE(r.trivial_witness(prox.space()));
    EXPECT_FALSE(strongly_far(prox, S({0}), S({1})).degenerate);
}

TEST(StronglyFar, Cap) {
    EXPECT_THROW(strongly_far(line_gap(11, 1), S({0}), S({10})), CapExceeded);
}

TEST(HatStronglyFar, Examples) {
    const auto d = hat_strongly_far(discrete(3), S({0}), S({2}));
    EXPECT_TRUE(d.holds);
    EXPECT_EQ(d.witness, (std::vector<Subset>{S({0}), S({2})}));
    EXPECT_EQ(d.regions, (std::vector<Subset>{S({0}), S({2})}));

    EXPECT_FALSE(hat_strongly_far(indiscrete(2), S({0}), S({1})).holds);
    for (const auto& space : {discrete(3), chain3(), indiscrete(3)}) {
        for (Mask m = 1; m < 8; ++m) EXPECT_FALSE(hat_strongly_far(space, Subset(m), Subset(m)).holds);
    }
}

TEST(DerivedNear, Examples) {
    const auto derived = derived_near_from_sf(overlap_proximity(discrete(3)));
    const auto r = check_axioms(derived);
    for (Axiom a : {Axiom::p0, Axiom::p1, Axiom::p2, Axiom::p3}) EXPECT_TRUE(r.passed(a));
    EXPECT_EQ(derived.kind(), ProximityKind::derived_strongly_far);
    EXPECT_TRUE(derived.near(S({0, 1}), S({1, 2})));

    const GroundSpace space = discrete(4);
    const auto alex = derived_near_from_sf(alexandroff_proximity(space, CompactnessIdeal::principal(space, S({0, 1}))));
    EXPECT_TRUE(check_axioms(alex).is_basic());
}

TEST(SfImpliesHat, Examples) {
    const auto d = check_sf_implies_hat(overlap_proximity(discrete(3)));
    EXPECT_TRUE(d.precondition_met);
    EXPECT_EQ(d.pairs_checked, 49U);
    EXPECT_TRUE(d.violations.empty());
    EXPECT_GT(d.strongly_far_pairs, 0U);

    EXPECT_FALSE(check_sf_implies_hat(overlap_proximity(chain3())).precondition_met);

    // Partition topology {0,1} | {2} with its own equivalence is compatible.
    const GroundSpace blocks = from_opens(3, {S({}), S({0, 1}), S({2}), S({0, 1, 2})});
    const auto c = check_sf_implies_hat(point_generated_proximity(blocks, PointRelation::from_pairs(3, {{0, 1}})));
    EXPECT_TRUE(c.precondition_met);
    EXPECT_TRUE(c.violations.empty());
    EXPECT_GT(c.strongly_far_pairs, 0U);

    const auto gap = check_sf_implies_hat(line_gap(4, 1));
    EXPECT_FALSE(gap.precondition_met);
    EXPECT_EQ(gap.pairs_checked, 0U);
    EXPECT_NE(gap.precondition_note.find("not Lodato"), std::string::npos);
}

TEST(FarVsSf, Examples) {
    const auto ef = check_far_vs_sf(overlap_proximity(discrete(3)));
    EXPECT_EQ(ef.far_not_strongly_far, 0U);
    EXPECT_EQ(ef.strongly_far, ef.far_pairs);

    const GroundSpace space = discrete(4);
    const auto alex = alexandroff_proximity(space, CompactnessIdeal::principal(space, S({0, 1})));
    const auto r = check_far_vs_sf(alex, 100);
    EXPECT_EQ(r.far_pairs, r.strongly_far + r.far_not_strongly_far);
    for (auto [a, b] : r.far_not_strongly_far_examples) {
        EXPECT_TRUE(alex.far(a, b));
        EXPECT_FALSE(strongly_far(alex, a, b).holds);
        EXPECT_FALSE(a.intersects(b));
    }
    for (auto [a, b] : r.strongly_far_examples) EXPECT_FALSE(a.intersects(b));
}

// ---------------------------------------------------------------------------
// Properties

namespace {

std::vector<ProximityRelation> corpus() {
    std::vector<ProximityRelation> out;
    for (int n = 1; n <= 3; ++n) {
        for (const auto& space : all_spaces(n)) {
            out.push_back(overlap_proximity(space));
            for (Subset bound : space.closed_sets()) {
                out.push_back(alexandroff_proximity(space, CompactnessIdeal::principal(space, bound)));
            }
            for (const auto& r : enumerate_point_relations(n, true)) out.push_back(point_generated_proximity(space, r));
        }
    }
    out.push_back(line_gap(4, 1));
    out.push_back(line_gap(4, 2));
    return out;
}

}  // namespace

TEST(StrongProperties, SfImpliesFarSymmetricAndReplays) {
    for (const auto& prox : corpus()) {
        const GroundSpace& space = prox.space();
        for_each_pair(space, [&](Subset a, Subset b) {
            const auto ab = strongly_far(prox, a, b);
            if (ab.holds) {
                EXPECT_TRUE(prox.far(a, b));
                const Subset c = ab.witness.front();
                EXPECT_TRUE(prox.far(a, space.complement(c)));
                EXPECT_TRUE(prox.far(c, b));
            }
            EXPECT_EQ(ab.holds, strongly_far(prox, b, a).holds);
            const auto hat = hat_strongly_far(space, a, b);
            if (hat.holds) {
                const Subset re = space.interior(space.closure(hat.witness[0]));
                const Subset rc = space.interior(space.closure(hat.witness[1]));
                EXPECT_TRUE(a.subset_of(re));
                EXPECT_TRUE(b.subset_of(rc));
                EXPECT_FALSE(re.intersects(rc));
            }
        });
    }
}

TEST(StrongProperties, DerivedNearIsBasicOnLodatoModels) {
    std::size_t lodato = 0;
    for (const auto& prox : corpus()) {
        if (!check_axioms(prox).is_lodato()) continue;
        ++lodato;
        EXPECT_TRUE(check_axioms(derived_near_from_sf(prox)).is_basic()) << prox.description();
    }
    EXPECT_GT(lodato, 100U);
}

TEST(StrongProperties, SfImpliesHatOnCompatibleLodato) {
    for (const auto& prox : corpus()) {
        const auto r = check_sf_implies_hat(prox);
        if (r.precondition_met) EXPECT_TRUE(r.violations.empty()) << prox.description();
    }
}

TEST(StrongProperties, EfCollapse) {
    for (const auto& prox : corpus()) {
        if (check_axioms(prox).classification != ProximityClass::ef) continue;
        EXPECT_EQ(check_far_vs_sf(prox).far_not_strongly_far, 0U) << prox.description();
    }
}
