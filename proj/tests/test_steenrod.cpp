#include "einfty/steenrod.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

using namespace einfty;

namespace {

SimplicialSet fixture(const std::string& name) {
    std::ifstream in(std::string(EINFTY_FIXTURES) + "/" + name);
    return simplicial_set_from_json(nlohmann::json::parse(in));
}

XChain cell(const SimplicialSet& X, const std::string& name, Ring r) { return XChain(r, CellTensor{X.id(name)}); }

XChain words(const SimplicialSet& X, Ring r, std::vector<std::pair<std::vector<std::string>, int>> terms) {
    XChain out(r);
    for (auto& [w, c] : terms) {
        CellTensor t;
        for (auto& n : w) t.push_back(X.id(n));
        out.add(t, c);
    }
    return out;
}

Cochain random_cochain(const SimplicialSet& X, int q, std::mt19937_64& rng) {
    Cochain a{q, {}};
    for (int c : X.cells(q))
        if (rng() & 1) a.support.insert(c);
    return a;
}

// front q-face times back p-face, on a complex whose cells are named by vertex lists
Cochain classical_cup(const SimplicialSet& X, const Cochain& a, const Cochain& b) {
    Cochain out{a.degree + b.degree, {}};
    for (int z : X.cells(out.degree)) {
        std::vector<int> front(a.degree + 1), back(b.degree + 1);
        for (int k = 0; k <= a.degree; ++k) front[k] = k;
        for (int k = 0; k <= b.degree; ++k) back[k] = a.degree + k;
        Restricted f = X.restrict(z, front), g = X.restrict(z, back);
        if (!f.degenerate() && !g.degenerate() && a.support.count(f.cell) && b.support.count(g.cell))
            out.support.insert(z);
    }
    return out;
}

Cochain sum(std::initializer_list<Cochain> xs) {
    Cochain out = *xs.begin();
    for (auto it = xs.begin() + 1; it != xs.end(); ++it) out = cochain_add(out, *it);
    return out;
}

}  // namespace

TEST(CupElements, Shapes) {
    EXPECT_EQ(cup_i_element(0), coproduct_graph());
    EXPECT_EQ(to_surjection(cup_i_element(1)), (Surjection{1, 2, 1}));
    for (int i = 0; i <= 6; ++i) {
        EXPECT_EQ(cup_i_element(i).degree(), i);
        EXPECT_EQ(to_surjection(cup_i_element(i)), alternating_surjection(i));
    }
    EXPECT_THROW(alternating_surjection(-1), std::invalid_argument);
}

TEST(CupElements, PicturedDeltaTwoAgreesWithComb) {
    PropElement pic2 = pictured_delta2_element(Ring::F2);
    PropElement comb2(Ring::F2, cup_i_element(2));
    EXPECT_FALSE(pic2 == comb2);
    EXPECT_TRUE(equal_mod_relations(pic2, comb2, Scope::MS));
    PropElement pic = pictured_delta2_element(Ring::Z);
    PropElement comb(Ring::Z, cup_i_element(2));
    for (int d = 0; d <= 4; ++d) {
        Chain x = chain_of(Ring::Z, Tensor{fundamental_simplex(d)});
        // the drawn product order carries the opposite orientation
        EXPECT_EQ(evaluate(pic, x), evaluate(lin_scale(Coefficient(Ring::Z, -1), comb), x)) << d;
    }
}

TEST(CupCoproduct, DeltaOneOnTriangle) {
    SimplicialSet X = standard_simplex(2);
    XChain got = cup_i_coproduct(1, X, cell(X, "0,1,2", Ring::Z));
    XChain frozen = words(X, Ring::Z, {{{"0,1,2", "0,1"}, -1}, {{"0,2", "0,1,2"}, 1}, {{"0,1,2", "1,2"}, -1}});
    EXPECT_EQ(got, frozen);
    XChain printed_mod2 = words(X, Ring::F2, {{{"0,1,2", "0,1"}, 1}, {{"0,2", "0,1,2"}, 1}, {{"0,1,2", "1,2"}, 1}});
    EXPECT_EQ(cup_i_coproduct(1, X, cell(X, "0,1,2", Ring::F2)), printed_mod2);
}

TEST(CupCoproduct, DeltaZeroIsAlexanderWhitney) {
    SimplicialSet X = standard_simplex(1);
    XChain aw01 = words(X, Ring::Z, {{{"0", "0,1"}, 1}, {{"0,1", "1"}, 1}});
    EXPECT_EQ(cup_i_coproduct(0, X, cell(X, "0,1", Ring::Z)), aw01);
}

TEST(CupCoproduct, DeltaTwoMatchesSurjectionCoaction) {
    SimplicialSet X = standard_simplex(2);
    XChain c = cell(X, "0,1,2", Ring::F2);
    EXPECT_EQ(cup_i_coproduct(2, X, c), sur_coact(Surjection{1, 2, 1, 2}, X, c));
    EXPECT_THROW(cup_i_coproduct(3, X, cell(X, "0,1,2", Ring::Z)), std::invalid_argument);
    EXPECT_NO_THROW(cup_i_coproduct(3, X, c));
}

TEST(SurCoaction, Examples) {
    Chain aw = sur_coact(Surjection{1, 2}, Simplex{0, 1});
    Chain expected(Ring::F2);
    expected.add(Tensor{{0}, {0, 1}}, 1);
    expected.add(Tensor{{0, 1}, {1}}, 1);
    EXPECT_EQ(aw, expected);
    EXPECT_EQ(sur_coact(Surjection{1}, Simplex{0, 2, 3}), chain_of(Ring::F2, Tensor{{0, 2, 3}}));
    Chain d1(Ring::F2);
    d1.add(Tensor{{0, 1, 2}, {0, 1}}, 1);
    d1.add(Tensor{{0, 2}, {0, 1, 2}}, 1);
    d1.add(Tensor{{0, 1, 2}, {1, 2}}, 1);
    EXPECT_EQ(sur_coact(Surjection{1, 2, 1}, Simplex{0, 1, 2}), d1);
}

TEST(SurCoaction, AgreesWithTermCoaction) {
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= n; ++m)
            for (const auto& s : surjections(n, m)) {
                PropElement g(Ring::F2, from_surjection(s));
                for (int d = 0; d <= 3; ++d)
                    for (const Simplex& sigma : all_simplices(d)) {
                        Chain x = chain_of(Ring::F2, Tensor{sigma});
                        ASSERT_EQ(evaluate(g, x), sur_coact(s, sigma)) << to_string(s) << " on " << render(sigma);
                    }
            }
}

TEST(CupProduct, DegreeZeroIsClassical) {
    std::mt19937_64 rng(3);
    for (const char* f : {"rp2.json", "delta3.json"}) {
        SimplicialSet X = fixture(f);
        for (int t = 0; t < 20; ++t)
            for (int p = 0; p <= X.dimension(); ++p)
                for (int q = 0; p + q <= X.dimension(); ++q) {
                    Cochain a = random_cochain(X, p, rng), b = random_cochain(X, q, rng);
                    EXPECT_EQ(cup_i_product(0, X, a, b), classical_cup(X, a, b));
                }
    }
}

TEST(CupProduct, CoboundaryFormula) {
    std::mt19937_64 rng(4);
    SimplicialSet X = standard_simplex(4);
    for (int t = 0; t < 10; ++t)
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q) {
                Cochain a = random_cochain(X, p, rng), b = random_cochain(X, q, rng);
                // cup_0 satisfies the Leibniz rule
                EXPECT_EQ(coboundary(X, cup_i_product(0, X, a, b)),
                          sum({cup_i_product(0, X, coboundary(X, a), b), cup_i_product(0, X, a, coboundary(X, b))}));
                for (int i = 1; i <= 3; ++i) {
                    Cochain lhs = coboundary(X, cup_i_product(i, X, a, b));
                    Cochain rhs = sum({cup_i_product(i, X, a, coboundary(X, b)), cup_i_product(i, X, coboundary(X, a), b),
                                       cup_i_product(i - 1, X, a, b), cup_i_product(i - 1, X, b, a)});
                    EXPECT_EQ(lhs, rhs) << "i=" << i << " p=" << p << " q=" << q;
                }
            }
}

TEST(CupProduct, AgreesWithSurjectionRoute) {
    for (int d = 0; d <= 3; ++d) {
        SimplicialSet X = standard_simplex(d);
        for (int i = 0; i <= 3; ++i)
            for (int p = 0; p <= d; ++p)
                for (int q = 0; q <= d; ++q)
                    for (int x : X.cells(p))
                        for (int y : X.cells(q)) {
                            Cochain a{p, {x}}, b{q, {y}};
                            EXPECT_EQ(cup_i_product(i, X, a, b), cup_i_product_sur(i, X, a, b));
                        }
    }
}

TEST(CupProduct, SelfProductOfEdgeCochain) {
    SimplicialSet X = standard_simplex(2);
    Cochain a{1, {X.id("0,2")}};
    EXPECT_EQ(cup_i_product(1, X, a, a), a);
    EXPECT_TRUE(cup_i_product(2, X, a, a).support.empty());
    Cochain b{1, {X.id("0,1"), X.id("1,2")}};
    EXPECT_EQ(cup_i_product(0, X, b, b), (Cochain{2, {X.id("0,1,2")}}));
    EXPECT_EQ(cup_i_product(1, X, b, b), (Cochain{1, {X.id("0,1"), X.id("1,2")}}));
}

TEST(Cohomology, Ranks) {
    EXPECT_EQ(Cohomology(fixture("delta2.json")).ranks(), (std::vector<int>{1, 0, 0}));
    EXPECT_EQ(Cohomology(fixture("circle.json")).ranks(), (std::vector<int>{1, 1}));
    EXPECT_EQ(Cohomology(fixture("rp2.json")).ranks(), (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(Cohomology(fixture("sphere2_sset.json")).ranks(), (std::vector<int>{1, 0, 1}));
}

TEST(Cohomology, CoordinatesIgnoreCoboundaries) {
    std::mt19937_64 rng(2);
    SimplicialSet X = fixture("rp2.json");
    Cohomology H(X);
    for (int q = 0; q <= 2; ++q)
        for (std::size_t k = 0; k < H.representatives(q).size(); ++k) {
            std::vector<int> unit(H.rank(q), 0);
            unit[k] = 1;
            for (int t = 0; t < 5; ++t) {
                Cochain a = H.representatives(q)[k];
                if (q > 0) a = cochain_add(a, coboundary(X, random_cochain(X, q - 1, rng)));
                EXPECT_EQ(H.coordinates(a), unit);
            }
        }
    EXPECT_THROW(H.coordinates(Cochain{1, {X.id("0,1")}}), std::invalid_argument);
}

TEST(Steenrod, SquareZeroIsIdentity) {
    for (const char* f : {"circle.json", "rp2.json"}) {
        SimplicialSet X = fixture(f);
        Cohomology H(X);
        for (const auto& t : steenrod_tables(0, X, H))
            for (std::size_t c = 0; c < t.columns.size(); ++c)
                for (std::size_t r = 0; r < t.columns[c].size(); ++r) EXPECT_EQ(t.columns[c][r], r == c ? 1 : 0);
    }
}

TEST(Steenrod, SquareOneOnProjectivePlane) {
    SimplicialSet X = fixture("rp2.json");
    Cohomology H(X);
    auto tables = steenrod_tables(1, X, H);
    auto oracle = steenrod_tables(1, X, H, true);
    ASSERT_EQ(tables.size(), 3u);
    EXPECT_EQ(tables[1].columns, (std::vector<std::vector<int>>{{1}}));
    EXPECT_EQ(oracle[1].columns, tables[1].columns);
    EXPECT_FALSE(tables[0].nonzero());
}

TEST(Steenrod, WellDefinedOnClasses) {
    std::mt19937_64 rng(12);
    SimplicialSet X = fixture("rp2.json");
    Cohomology H(X);
    const Cochain& a = H.representatives(1)[0];
    for (int t = 0; t < 10; ++t) {
        Cochain b = cochain_add(a, coboundary(X, random_cochain(X, 0, rng)));
        for (int k = 0; k <= 1; ++k)
            EXPECT_EQ(H.coordinates(steenrod_square(k, X, b)), H.coordinates(steenrod_square(k, X, a)));
    }
}

TEST(Steenrod, TopSquareIsCupSquare) {
    std::mt19937_64 rng(13);
    SimplicialSet X = standard_simplex(4);
    for (int q = 0; q <= 2; ++q) {
        Cochain a = random_cochain(X, q, rng);
        EXPECT_EQ(steenrod_square(q, X, a), cup_i_product(0, X, a, a));
        EXPECT_TRUE(steenrod_square(q + 1, X, a).support.empty());
    }
}

TEST(Steenrod, ContractibleAndLowDimensionalSquaresVanish) {
    for (const char* f : {"delta2.json", "delta3.json", "circle.json"}) {
        SimplicialSet X = fixture(f);
        Cohomology H(X);
        for (int k = 1; k <= 3; ++k)
            for (const auto& t : steenrod_tables(k, X, H)) EXPECT_FALSE(t.nonzero()) << f << " k=" << k;
    }
}
