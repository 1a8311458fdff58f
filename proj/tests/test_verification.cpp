#include "einfty/verification.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace einfty;

namespace {

PropElement z(const Graph& g) { return PropElement(Ring::Z, g); }

std::vector<PropElement> random_reduced(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RandomGraphOptions opt;
    opt.max_vertices = 6;
    std::vector<PropElement> out;
    while (static_cast<int>(out.size()) < count) {
        Graph g = random_graph(rng, opt);
        if (g.m < 1) continue;
        PropElement x = reduce_S(z(g));
        if (!x.empty()) out.push_back(x);
    }
    return out;
}

}  // namespace

TEST(HomotopyMaps, Examples) {
    EXPECT_EQ(i_map(z(identity_term(1))), z(coproduct_graph()));
    EXPECT_EQ(r_map(z(coproduct_graph())), z(identity_term(1)));
    EXPECT_THROW(i_map(z(identity_term(0))), GraphError);
    EXPECT_THROW(r_map(z(identity_term(0))), GraphError);
    EXPECT_THROW(h_map(z(counit_graph())), GraphError);
    Graph h = h_raw(product_graph());
    EXPECT_EQ(h.degree(), 2);
    EXPECT_EQ(h.n, 2);
    EXPECT_EQ(h.m, 1);
}

TEST(HomotopyMaps, RetractionAfterInclusion) {
    for (const auto& x : random_reduced(100, 41)) {
        EXPECT_EQ(r_map(i_map(x)), x);
        EXPECT_EQ(i_map(x).begin()->first.degree(), x.begin()->first.degree());
    }
}

TEST(HomotopyMaps, SignIsFrozen) {
    // r(product) = 0, so dH + Hd returns the product itself with sign +1
    PropElement mu = z(product_graph());
    EXPECT_TRUE(r_map(mu).empty());
    EXPECT_EQ(reduce_S(differential(h_map(mu)) + h_map(differential(mu))), mu);
}

TEST(HomotopyMaps, IdentityOnRandomTerms) {
    for (const auto& x : random_reduced(100, 43)) {
        EXPECT_TRUE(homotopy_defect(x).empty());
        PropElement x2(Ring::F2);
        for (const auto& [g, c] : x) x2.add(g, c);
        EXPECT_TRUE(homotopy_defect(x2).empty());
        for (const auto& [g, c] : h_map(x)) EXPECT_EQ(g.degree(), x.begin()->first.degree() + 1);
    }
}

TEST(CupCoherence, CombDefectAndHomotopyFamily) {
    PropElement d0(Ring::F2, cup_i_element(0)), d1(Ring::F2, cup_i_element(1)), d2(Ring::F2, cup_i_element(2));
    EXPECT_TRUE(coherence_defect(d1, d0).empty());
    EXPECT_EQ(coherence_defect(d2, d1).size(), 2u);
    for (int i = 1; i <= 4; ++i) {
        PropElement c = coherent_cup_element(i);
        EXPECT_TRUE(coherence_defect(c, coherent_cup_element(i - 1)).empty()) << i;
        EXPECT_TRUE(equal_mod_relations(c, PropElement(Ring::F2, cup_i_element(i)), Scope::MS)) << i;
        EXPECT_EQ(c.size(), std::size_t{1} << i);
    }
}

TEST(NamedElements, SigmaFixedAndFree) {
    EXPECT_TRUE(sigma_fixed_counterexample());
    PropElement mu = z(product_graph());
    EXPECT_FALSE(reduce_S(act({1, 0}, {0}, mu)) == reduce_S(mu));
    EXPECT_EQ(output_swap_fixed_terms(3), 0);
}

TEST(NamedElements, LeibnizWitness) {
    Chain v = leibniz_witness_value();
    Chain frozen(Ring::F2);
    frozen.add(Tensor{{0, 1}, {1, 2}}, 1);
    frozen.add(Tensor{{0, 1, 2}, {1}}, 1);
    frozen.add(Tensor{{0, 1, 2}, {2}}, 1);
    frozen.add(Tensor{{0, 2}, {1, 2}}, 1);
    EXPECT_EQ(v, frozen);
    // it does vanish on an ordered input
    EXPECT_TRUE(evaluate(leibniz_difference(), chain_of(Ring::F2, Tensor{{0, 1}, {1, 2}})).empty());
}

TEST(BoundedHomology, SmallBiarities) {
    HomologyReport a = bounded_homology(1, 0, 2);
    EXPECT_EQ(a.status, "pass");
    EXPECT_EQ(a.betti, (std::vector<int>{1, 0, 0}));
    EXPECT_EQ(a.basis_sizes, (std::vector<int>{1, 0, 0, 0}));
    HomologyReport b = bounded_homology(1, 1, 2);
    EXPECT_EQ(b.betti, (std::vector<int>{1, 0, 0}));
    EXPECT_EQ(b.basis_sizes, (std::vector<int>{1, 2, 28, 848}));
    HomologyReport c = bounded_homology(1, 2, 1);
    EXPECT_EQ(c.betti, (std::vector<int>{1, 0}));
    HomologyReport d = bounded_homology(2, 1, 1);
    EXPECT_EQ(d.betti, (std::vector<int>{1, 0}));
    HomologyReport e = bounded_homology(0, 2, 2);
    EXPECT_EQ(e.betti, (std::vector<int>{0, 0, 0}));
    EXPECT_EQ(e.basis_sizes, (std::vector<int>{0, 0, 0, 0}));
    for (const auto& r : {a, b, c, d})
        for (std::size_t k = 0; k < r.betti.size(); ++k) EXPECT_LE(r.betti[k], r.basis_sizes[k]);
    EXPECT_THROW(bounded_homology(1, -1, 2), std::invalid_argument);
}

TEST(Suites, ProductCases) {
    EXPECT_EQ(product_case({0}, {1}), 1);
    EXPECT_EQ(product_case({1}, {1}), 2);
    EXPECT_EQ(product_case({1}, {0, 1}), 3);
    EXPECT_EQ(product_case({0}, {1, 2}), 4);
    EXPECT_EQ(product_case({0, 1}, {1, 2}), 5);
    EXPECT_EQ(product_case({0, 1}, {2, 3}), 6);
}

TEST(Suites, PicturedOverlapsAreConfluent) {
    Reducer red(Scope::MS, Ring::F2);
    for (const auto& [name, g] : pictured_overlaps()) {
        std::set<std::string> rules;
        long checks = 0;
        EXPECT_TRUE(locally_confluent_closure(g, red, rules, checks)) << name;
        EXPECT_TRUE(rules.count("leibniz")) << name;
        for (const auto& cp : critical_pairs(g, red)) EXPECT_TRUE(cp.joinable()) << name;
    }
}

TEST(Suites, ReportShape) {
    SuiteReport r = run_suite("leibniz_witness");
    nlohmann::json j = report_to_json(r);
    EXPECT_EQ(j["suite"], "leibniz_witness");
    EXPECT_EQ(j["status"], "pass");
    EXPECT_EQ(j["cases"], 1);
    EXPECT_TRUE(j["counterexamples"].is_array());
    EXPECT_THROW(run_suite("nope"), std::invalid_argument);
    SuiteOptions bad;
    bad.bound = {1, 2};
    EXPECT_THROW(run_suite("homology", bad), std::invalid_argument);
}

TEST(Suites, QuickRunsPass) {
    SuiteOptions o;
    o.random_terms = 40;
    o.max_d = 2;
    auto reports = run_suites({"relations", "chain_map", "augmented", "homotopy", "iso", "diagram_A", "sur_operad"}, o);
    ASSERT_EQ(reports.size(), 7u);
    EXPECT_EQ(reports[0].suite, "relations");
    for (const auto& r : reports) {
        EXPECT_TRUE(r.passed()) << report_to_json(r).dump();
        EXPECT_GT(r.cases, 0);
    }
}

TEST(Suites, CupCoherenceFailsForTheComb) {
    SuiteReport r = run_suite("cup_coherence");
    EXPECT_EQ(r.status, "fail");
    EXPECT_EQ(r.counterexamples.size(), 3u);
    for (const auto& f : r.details["homotopy_family"]) {
        EXPECT_TRUE(f["coherent"].get<bool>());
        EXPECT_TRUE(f["equals_comb_in_MS"].get<bool>());
    }
}

TEST(Suites, HomologyBound) {
    SuiteOptions o;
    o.bound = {1, 1, 2};
    SuiteReport r = run_suite("homology", o);
    EXPECT_EQ(r.status, "pass");
    EXPECT_EQ(r.details["runs"][0]["betti"], nlohmann::json({1, 0, 0}));
}
