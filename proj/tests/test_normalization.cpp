#include "einfty/normalization.hpp"
#include "einfty/surjection.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

using namespace einfty;

namespace {

PropElement gen(Kind k, Ring r) { return element(r, generator(k)); }
PropElement id(int n, Ring r) { return element(r, identity_term(n)); }

// coproduct, then product on its two outputs (crossed if swap)
Graph involution_graph(bool swap) {
    Graph g;
    g.n = 1;
    g.m = 1;
    int d = g.add_vertex(Kind::Coproduct);
    int p = g.add_vertex(Kind::Product);
    g.inputs[d][0] = {kExternal, 0};
    g.inputs[p] = swap ? std::array<Source, 2>{Source{d, 1}, Source{d, 0}}
                       : std::array<Source, 2>{Source{d, 0}, Source{d, 1}};
    g.outputs = {Source{p, 0}};
    return canonicalize(g);
}

// product of the two inputs followed by a coproduct
Graph leibniz_lhs() {
    Graph g;
    g.n = 2;
    g.m = 2;
    int p = g.add_vertex(Kind::Product);
    int d = g.add_vertex(Kind::Coproduct);
    g.inputs[p] = {Source{kExternal, 0}, Source{kExternal, 1}};
    g.inputs[d][0] = {p, 0};
    g.outputs = {Source{d, 0}, Source{d, 1}};
    return canonicalize(g);
}

// (a1, a2 b) + (a b1, b2)
PropElement leibniz_rhs() {
    PropElement out(Ring::F2);
    Graph t1;
    t1.n = 2;
    t1.m = 2;
    int d = t1.add_vertex(Kind::Coproduct);
    int p = t1.add_vertex(Kind::Product);
    t1.inputs[d][0] = {kExternal, 0};
    t1.inputs[p] = {Source{d, 1}, Source{kExternal, 1}};
    t1.outputs = {Source{d, 0}, Source{p, 0}};
    add_raw(out, t1, 1);
    Graph t2;
    t2.n = 2;
    t2.m = 2;
    d = t2.add_vertex(Kind::Coproduct);
    p = t2.add_vertex(Kind::Product);
    t2.inputs[d][0] = {kExternal, 1};
    t2.inputs[p] = {Source{kExternal, 0}, Source{d, 0}};
    t2.outputs = {Source{p, 0}, Source{d, 1}};
    add_raw(out, t2, 1);
    return out;
}

PropElement counit_on_leg(int leg, Ring r) {
    PropElement e = gen(Kind::Counit, r);
    return leg == 0 ? horizontal_compose(e, id(1, r)) : horizontal_compose(id(1, r), e);
}

Graph random_term(std::mt19937_64& rng, int max_vertices, int max_inputs = 2) {
    RandomGraphOptions opt;
    opt.max_vertices = max_vertices;
    opt.max_inputs = max_inputs;
    return random_graph(rng, opt);
}

}  // namespace

TEST(ReduceS, ProductCounitVanishes) {
    for (Ring r : {Ring::Z, Ring::F2}) {
        PropElement x = vertical_compose(gen(Kind::Counit, r), gen(Kind::Product, r));
        EXPECT_TRUE(reduce(x, Scope::S).empty());
    }
}

TEST(ReduceS, CounitalityGivesIdentityStrand) {
    for (int leg : {0, 1}) {
        PropElement x = vertical_compose(counit_on_leg(leg, Ring::Z), gen(Kind::Coproduct, Ring::Z));
        EXPECT_FALSE(x == id(1, Ring::Z));
        EXPECT_EQ(reduce(x, Scope::S), id(1, Ring::Z));
    }
    PropElement left = vertical_compose(counit_on_leg(0, Ring::Z), gen(Kind::Coproduct, Ring::Z));
    PropElement right = vertical_compose(counit_on_leg(1, Ring::Z), gen(Kind::Coproduct, Ring::Z));
    EXPECT_TRUE(equal_mod_relations(left, right, Scope::S));
    EXPECT_FALSE(equal_mod_relations(left, PropElement(Ring::Z), Scope::S));
}

TEST(ReduceS, KeepsSignsOverZ) {
    // product on the second leg after a capped coproduct on the first
    PropElement capped = vertical_compose(counit_on_leg(0, Ring::Z), gen(Kind::Coproduct, Ring::Z));
    PropElement x = vertical_compose(gen(Kind::Product, Ring::Z), horizontal_compose(capped, id(1, Ring::Z)));
    x = lin_scale(Coefficient(Ring::Z, -3), x);
    EXPECT_EQ(reduce_S(x), lin_scale(Coefficient(Ring::Z, -3), gen(Kind::Product, Ring::Z)));
}

TEST(ReduceMS, RejectsIntegers) {
    EXPECT_THROW(Reducer(Scope::MS, Ring::Z), std::invalid_argument);
    EXPECT_THROW(reduce(id(1, Ring::Z), Scope::MS), std::invalid_argument);
}

TEST(ReduceMS, InvolutionsVanish) {
    EXPECT_TRUE(reduce(PropElement(Ring::F2, involution_graph(false)), Scope::MS).empty());
    EXPECT_TRUE(reduce(PropElement(Ring::F2, involution_graph(true)), Scope::MS).empty());
    // but not in S
    EXPECT_EQ(reduce(PropElement(Ring::F2, involution_graph(false)), Scope::S).size(), 1u);
}

TEST(ReduceMS, LeibnizSidesAgree) {
    PropElement lhs(Ring::F2, leibniz_lhs());
    EXPECT_TRUE(equal_mod_relations(lhs, leibniz_rhs(), Scope::MS));
    EXPECT_FALSE(equal_mod_relations(lhs, leibniz_rhs(), Scope::S));
}

TEST(ReduceMS, ProductIsCommutativeAndAssociative) {
    PropElement mu = gen(Kind::Product, Ring::F2);
    PropElement swapped = act({1, 0}, {0}, mu);
    EXPECT_TRUE(equal_mod_relations(mu, swapped, Scope::MS));
    PropElement left = vertical_compose(mu, horizontal_compose(mu, id(1, Ring::F2)));
    PropElement right = vertical_compose(mu, horizontal_compose(id(1, Ring::F2), mu));
    EXPECT_TRUE(equal_mod_relations(left, right, Scope::MS));
    EXPECT_FALSE(equal_mod_relations(left, right, Scope::S));
}

TEST(ReduceMS, CoproductIsCoassociative) {
    PropElement d = gen(Kind::Coproduct, Ring::F2);
    PropElement left = vertical_compose(horizontal_compose(d, id(1, Ring::F2)), d);
    PropElement right = vertical_compose(horizontal_compose(id(1, Ring::F2), d), d);
    EXPECT_TRUE(equal_mod_relations(left, right, Scope::MS));
    EXPECT_EQ(reduce(right, Scope::MS), PropElement(Ring::F2, coproduct_comb(3)));
}

TEST(SurjectionLike, Recognition) {
    EXPECT_TRUE(is_surjection_like(from_surjection(Surjection{1, 2, 1})));
    EXPECT_TRUE(is_surjection_like(coproduct_graph()));
    EXPECT_TRUE(is_surjection_like(identity_term(1)));
    EXPECT_EQ(*surjection_sequence(coproduct_graph()), (std::vector<int>{1, 2}));
    PropElement on_top = vertical_compose(gen(Kind::Coproduct, Ring::F2), PropElement(Ring::F2, involution_graph(false)));
    EXPECT_FALSE(is_surjection_like(on_top.begin()->first));
    EXPECT_FALSE(is_surjection_like(involution_graph(true)));
    EXPECT_TRUE(contains_involution(involution_graph(true)));
    EXPECT_FALSE(contains_involution(from_surjection(Surjection{1, 2, 1})));
}

TEST(CombElement, SmallCases) {
    EXPECT_EQ(comb_element({0, 0, 0}), product_comb(3));
    EXPECT_EQ(comb_element({1}), coproduct_graph());
    EXPECT_EQ(comb_element({0}), identity_term(1));
    EXPECT_EQ(comb_sequences(2, 2), (std::vector<std::vector<int>>{{0, 1}, {1, 0}}));
    EXPECT_THROW(comb_element({-1}), GraphError);
    EXPECT_EQ(comb_element({2, 1}).m, 4);
}

TEST(CombElement, SplittingIdentity) {
    for (int k = 1; k <= 4; ++k)
        for (int n = 1; n <= 4; ++n) {
            PropElement lhs = vertical_compose(PropElement(Ring::F2, coproduct_comb(n)),
                                               PropElement(Ring::F2, product_comb(k)));
            PropElement rhs(Ring::F2);
            for (const auto& a : comb_sequences(k, n)) rhs.add(comb_element(a), 1);
            EXPECT_EQ(reduce(lhs, Scope::MS), reduce(rhs, Scope::MS)) << "k=" << k << " n=" << n;
        }
}

TEST(Termination, MeasureDecreasesOnEveryStep) {
    std::mt19937_64 rng(11);
    for (Scope scope : {Scope::S, Scope::MS}) {
        Reducer red(scope, Ring::F2);
        red.set_check_measure(true);
        for (int t = 0; t < 300; ++t) EXPECT_NO_THROW(red.reduce(random_term(rng, 12)));
    }
}

TEST(Confluence, RandomStrategiesAgree) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 400; ++t) {
        Graph g = random_term(rng, 10);
        Reducer det(Scope::MS, Ring::F2);
        PropElement nf = det.reduce(g);
        for (int k = 0; k < 2; ++k) {
            std::mt19937_64 pick(1000 * t + k);
            Reducer rnd(Scope::MS, Ring::F2);
            rnd.set_random(&pick);
            ASSERT_EQ(rnd.reduce(g), nf) << describe(g);
        }
    }
}

TEST(Confluence, OverlappingSitesAreJoinable) {
    std::mt19937_64 rng(6);
    Reducer red(Scope::MS, Ring::F2);
    int pairs = 0;
    for (int t = 0; t < 300; ++t) {
        Graph g = random_term(rng, 8);
        for (const auto& cp : critical_pairs(g, red)) {
            ++pairs;
            ASSERT_TRUE(cp.joinable()) << describe(g) << " " << rule_name(cp.first.rule) << "/"
                                       << rule_name(cp.second.rule);
        }
    }
    EXPECT_GT(pairs, 100);
}

TEST(NormalForms, OneInputNormalFormsAreSurjectionLike) {
    std::mt19937_64 rng(8);
    int nonzero = 0;
    for (int t = 0; t < 300; ++t) {
        Graph g = random_term(rng, 9, 1);
        for (const auto& [h, c] : reduce(PropElement(Ring::F2, g), Scope::MS)) {
            if (h.m == 0) continue;
            ++nonzero;
            EXPECT_TRUE(is_surjection_like(h)) << describe(h);
            EXPECT_FALSE(contains_involution(h));
        }
    }
    EXPECT_GT(nonzero, 50);
}

TEST(NormalForms, RelationsFormADifferentialIdeal) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        Graph g = random_term(rng, 8);
        PropElement xz(Ring::Z, g);
        EXPECT_EQ(reduce_S(differential(xz)), reduce_S(differential(reduce_S(xz))));
        PropElement x2(Ring::F2, g);
        EXPECT_EQ(reduce(differential(x2), Scope::MS), reduce(differential(reduce(x2, Scope::MS)), Scope::MS))
            << describe(g);
    }
}

TEST(Trace, ReportsEachStep) {
    Reducer red(Scope::S, Ring::Z);
    std::vector<TraceStep> steps;
    red.set_trace([&](const TraceStep& s) { steps.push_back(s); });
    PropElement x = vertical_compose(counit_on_leg(0, Ring::Z), gen(Kind::Coproduct, Ring::Z));
    red.reduce(x);
    ASSERT_EQ(steps.size(), 1u);
    EXPECT_EQ(steps[0].rule, Rule::LeftCounit);
    EXPECT_EQ(steps[0].after, std::vector<std::string>{graph_hash(identity_term(1))});
}

TEST(MSRelations, ShippedIntegralFormsVanishModTwo) {
    std::ifstream in(std::string(EINFTY_DATA) + "/ms_relations_z.json");
    ASSERT_TRUE(in);
    auto rels = nlohmann::json::parse(in);
    ASSERT_EQ(rels.size(), 5u);
    for (const auto& r : rels) {
        PropElement x = element_from_json(r["element"]);
        EXPECT_EQ(x.ring(), Ring::Z);
        PropElement y(Ring::F2);
        for (const auto& [g, c] : x) y.add(g, c);
        EXPECT_TRUE(reduce(y, Scope::MS).empty()) << r["name"];
        EXPECT_FALSE(reduce_S(x).empty()) << r["name"];
    }
}
