#pragma once

// Homotopy maps on S, bounded homology of S(n,m), and the verification
// suites behind the acceptance checks.

#include "einfty/normalization.hpp"
#include "einfty/simplicial.hpp"
#include "einfty/steenrod.hpp"
#include "einfty/surjection.hpp"

#include <json.hpp>

#include <chrono>
#include <future>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace einfty {

// ---------------------------------------------------------------------------
// Homotopy maps.

/// Coproduct on input 1; its left leg becomes output 1, its right leg feeds
/// the old input 1.
inline PropElement i_map(const PropElement& x) {
    PropElement out(x.ring());
    for (const auto& [g, c] : x) {
        if (g.n < 1) throw GraphError("i_map needs at least one input");
        Graph top = horizontal_raw(identity_term(1), g);
        Graph bottom = horizontal_raw(coproduct_graph(), identity_term(g.n - 1));
        add_raw(out, vertical_raw(top, bottom), c);
    }
    return out;
}

/// Caps output 1 with a counit and reduces in S.
inline PropElement r_map(const PropElement& x) {
    PropElement out(x.ring());
    for (const auto& [g, c] : x) {
        if (g.m < 1) throw GraphError("r_map needs at least one output");
        Graph top = horizontal_raw(counit_graph(), identity_term(g.m - 1));
        add_raw(out, vertical_raw(top, g), c);
    }
    return reduce_S(out);
}

/// Coproduct on input 1 with legs (a, b): b feeds the old input 1 and the
/// old output 1 is replaced by product(a, old output 1).
inline Graph h_raw(const Graph& g) {
    if (g.n < 1 || g.m < 1) throw GraphError("h_map needs at least one input and one output");
    Graph h;
    h.n = g.n;
    h.m = g.m;
    const int p = h.add_vertex(Kind::Product);
    const int d = h.add_vertex(Kind::Coproduct);
    const int off = h.vertex_count();
    auto shift = [&](Source s) {
        if (s.external()) return s.port == 0 ? Source{d, 1} : s;
        if (s.vertex != kUnused) s.vertex += off;
        return s;
    };
    for (int v = 0; v < g.vertex_count(); ++v) {
        h.kinds.push_back(g.kinds[v]);
        h.inputs.push_back({shift(g.inputs[v][0]), shift(g.inputs[v][1])});
    }
    h.inputs[d][0] = {kExternal, 0};
    h.inputs[p] = {Source{d, 0}, shift(g.outputs[0])};
    for (const Source& s : g.outputs) h.outputs.push_back(shift(s));
    h.outputs[0] = {p, 0};
    return h;
}

inline PropElement h_map(const PropElement& x) {
    PropElement out(x.ring());
    for (const auto& [g, c] : x) add_raw(out, h_raw(g), c);
    return out;
}

/// dH + Hd - (id - ir), reduced in S; zero when the homotopy identity holds.
inline PropElement homotopy_defect(const PropElement& x) {
    PropElement lhs = differential(h_map(x)) + h_map(differential(x));
    PropElement rhs = x - i_map(r_map(x));
    return reduce_S(lhs - rhs);
}

/// Output swap on a (1,2) element.
inline PropElement transpose_outputs(const PropElement& x) { return act({0}, {1, 0}, x); }

/// A family in S(1,2) over F2 with d D_i = D_{i-1} + tau D_{i-1}, built from
/// the coproduct by the contracting homotopy.
inline PropElement coherent_cup_element(int i) {
    static std::map<int, PropElement> memo;
    if (i < 0) throw std::invalid_argument("cup-i needs i >= 0");
    if (i == 0) return PropElement(Ring::F2, coproduct_graph());
    auto it = memo.find(i);
    if (it != memo.end()) return it->second;
    PropElement prev = coherent_cup_element(i - 1);
    PropElement x = reduce_S(prev + transpose_outputs(prev));
    PropElement out = reduce_S(h_map(x) + i_map(h_map(r_map(x))));
    memo.emplace(i, out);
    return out;
}

/// reduce_S(d D) - (D' + tau D') for a candidate D and its predecessor D'.
inline PropElement coherence_defect(const PropElement& d_i, const PropElement& d_prev) {
    return reduce_S(differential(d_i) - d_prev - transpose_outputs(d_prev));
}

// ---------------------------------------------------------------------------
// Named elements.

/// counit (x) counit (x) id in S(3,1).
inline PropElement two_counits_element(Ring r = Ring::Z) {
    Graph g = horizontal_raw(horizontal_raw(counit_graph(), counit_graph()), identity_term(1));
    return element(r, g);
}

/// True when swapping inputs 1 and 2 fixes two_counits_element.
inline bool sigma_fixed_counterexample() {
    PropElement x = two_counits_element();
    return reduce_S(act({1, 0, 2}, {0}, x)) == reduce_S(x);
}

/// Number of S-normal basis terms of S(1,2) within the vertex bound that the
/// output swap sends to plus or minus themselves.
inline int output_swap_fixed_terms(int max_vertices) {
    EnumerationBounds b;
    b.max_counits = 1;
    b.max_coproducts = max_vertices;
    b.max_products = max_vertices;
    b.max_vertices = max_vertices;
    b.counits_on_inputs_only = true;
    int fixed = 0;
    for (const Graph& g : enumerate_graphs(1, 2, b)) {
        if (!find_sites(g, Scope::S).empty()) continue;
        PropElement x(Ring::Z, g);
        PropElement y = reduce_S(transpose_outputs(x));
        if (y == x || y == lin_scale(Coefficient(Ring::Z, -1), x)) ++fixed;
    }
    return fixed;
}

/// product followed by coproduct, minus the two Leibniz terms, over F2.
inline PropElement leibniz_difference() {
    PropElement out(Ring::F2);
    Graph lhs;
    lhs.n = lhs.m = 2;
    int p = lhs.add_vertex(Kind::Product);
    int d = lhs.add_vertex(Kind::Coproduct);
    lhs.inputs[p] = {Source{kExternal, 0}, Source{kExternal, 1}};
    lhs.inputs[d][0] = {p, 0};
    lhs.outputs = {Source{d, 0}, Source{d, 1}};
    add_raw(out, lhs, 1);
    for (int side = 0; side < 2; ++side) {
        Graph t;
        t.n = t.m = 2;
        d = t.add_vertex(Kind::Coproduct);
        p = t.add_vertex(Kind::Product);
        t.inputs[d][0] = {kExternal, side};
        if (side == 0) {
            t.inputs[p] = {Source{d, 1}, Source{kExternal, 1}};
            t.outputs = {Source{d, 0}, Source{p, 0}};
        } else {
            t.inputs[p] = {Source{kExternal, 0}, Source{d, 0}};
            t.outputs = {Source{p, 0}, Source{d, 1}};
        }
        add_raw(out, t, 1);
    }
    return out;
}

/// The Leibniz difference on [0,2] (x) [1] in C(Delta^2).
inline Chain leibniz_witness_value() {
    return evaluate(leibniz_difference(), chain_of(Ring::F2, Tensor{{0, 2}, {1}}));
}

// ---------------------------------------------------------------------------
// Bounded homology of S(n,m) over F2.

struct HomologyReport {
    int n = 0, m = 0, max_degree = 0;
    std::string status;  // "pass", "fail" or "inconclusive"
    std::vector<int> betti;
    std::vector<int> basis_sizes;  // degrees 0..max_degree+1
    int enumerated = 0;
    std::string note;
};

inline nlohmann::json homology_to_json(const HomologyReport& h) {
    return {{"biarity", {h.n, h.m}}, {"max_degree", h.max_degree}, {"status", h.status},
            {"betti", h.betti},      {"basis_sizes", h.basis_sizes}, {"enumerated", h.enumerated},
            {"note", h.note}};
}

/// Enumerates every S-normal form of degree <= D+1. In a normal form counits
/// sit on external inputs only, so #coproducts = m - n + #products + #counits
/// is bounded; the closure check then confirms that boundaries stay inside.
inline HomologyReport bounded_homology(int n, int m, int D) {
    HomologyReport rep;
    rep.n = n;
    rep.m = m;
    rep.max_degree = D;
    if (n < 0 || m < 0 || D < 0) throw std::invalid_argument("bounded_homology needs n, m, D >= 0");
    EnumerationBounds b;
    b.max_counits = n;
    b.max_products = D + 1;
    b.max_coproducts = std::max(0, m + D + 1);
    b.counits_on_inputs_only = true;
    std::vector<std::vector<Graph>> basis(D + 2);
    std::vector<std::map<Graph, std::size_t>> index(D + 2);
    auto all = enumerate_graphs(n, m, b);
    rep.enumerated = static_cast<int>(all.size());
    for (const Graph& g : all) {
        if (!find_sites(g, Scope::S).empty()) continue;
        if (g.count(Kind::Coproduct) != m - n + g.degree() + g.count(Kind::Counit)) {
            rep.status = "inconclusive";
            rep.note = "wire count identity violated by " + describe(g);
            return rep;
        }
        const int k = g.degree();
        index[k].emplace(g, basis[k].size());
        basis[k].push_back(g);
    }
    for (const auto& bk : basis) rep.basis_sizes.push_back(static_cast<int>(bk.size()));
    // boundary ranks; rank[k] is the rank of d : C_k -> C_{k-1}
    std::vector<int> rank(D + 2, 0);
    Reducer red(Scope::S, Ring::F2);
    for (int k = 1; k <= D + 1; ++k) {
        Echelon e(basis[k - 1].size());
        for (const Graph& g : basis[k]) {
            PropElement dg = red.reduce(differential(PropElement(Ring::F2, g)));
            Bits v(basis[k - 1].size());
            for (const auto& [h, c] : dg) {
                auto it = index[k - 1].find(h);
                if (it == index[k - 1].end()) {
                    rep.status = "inconclusive";
                    rep.note = "boundary leaves the enumerated set: " + describe(h);
                    return rep;
                }
                v.flip(it->second);
            }
            e.insert(v, Bits());
        }
        rank[k] = static_cast<int>(e.rank());
    }
    for (int k = 0; k <= D; ++k) {
        const int dim = static_cast<int>(basis[k].size());
        const int kernel = dim - (k > 0 ? rank[k] : 0);
        rep.betti.push_back(kernel - rank[k + 1]);
    }
    std::vector<int> expected(D + 1, 0);
    if (n >= 1) expected[0] = 1;
    rep.status = rep.betti == expected ? "pass" : "fail";
    if (n == 0) rep.note = "no inputs";
    return rep;
}

// ---------------------------------------------------------------------------
// Suites.

struct SuiteOptions {
    std::uint64_t seed = 1;
    int max_d = 3;
    int random_terms = 500;
    int max_vertices = 6;
    std::vector<int> bound;  // homology: n, m, D
};

struct SuiteReport {
    std::string suite;
    std::string status = "pass";
    long cases = 0;
    nlohmann::json counterexamples = nlohmann::json::array();
    nlohmann::json details = nlohmann::json::object();
    double seconds = 0;

    void fail(nlohmann::json why) {
        status = "fail";
        if (counterexamples.size() < 10) counterexamples.push_back(std::move(why));
    }
    bool passed() const { return status == "pass"; }
};

inline nlohmann::json report_to_json(const SuiteReport& r) {
    nlohmann::json j = {{"suite", r.suite},
                        {"status", r.status},
                        {"cases", r.cases},
                        {"counterexamples", r.counterexamples}};
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

/// Words of `arity` basis simplices of Delta^d.
inline std::vector<Tensor> basis_words(int d, int arity, Grading gr = Grading::Normalized) {
    std::vector<Tensor> out{Tensor{}};
    const auto basis = all_simplices(d, gr);
    for (int k = 0; k < arity; ++k) {
        std::vector<Tensor> next;
        for (const auto& w : out)
            for (const auto& s : basis) {
                next.push_back(w);
                next.back().push_back(s);
            }
        out = std::move(next);
    }
    return out;
}

/// (d f)(x) - d(f(x)) + (-1)^|f| f(dx) for a homogeneous f.
inline Chain chain_map_defect(const PropElement& f, int degree, const Chain& x, Grading gr = Grading::Normalized) {
    const bool aug = gr == Grading::Augmented;
    auto ev = [&](const PropElement& g, const Chain& y) { return aug ? evaluate_augmented(g, y) : evaluate(g, y); };
    Chain out = ev(differential(f), x);
    out -= boundary(ev(f, x), gr);
    out.axpy(degree % 2 ? -1 : 1, ev(f, boundary(x, gr)));
    return out;
}

/// Which of the six vertex configurations a product input falls into.
inline int product_case(const Simplex& a, const Simplex& b) {
    bool share = false;
    for (int v : a)
        if (std::find(b.begin(), b.end(), v) != b.end()) share = true;
    const int zeros = (a.size() == 1) + (b.size() == 1);
    if (zeros == 2) return share ? 2 : 1;
    if (zeros == 1) return share ? 3 : 4;
    return share ? 5 : 6;
}

inline std::vector<PropElement> s_relations(Ring r) {
    PropElement eps = element(r, counit_graph());
    PropElement delta = element(r, coproduct_graph());
    PropElement mu = element(r, product_graph());
    PropElement id1 = element(r, identity_term(1));
    return {vertical_compose(eps, mu), vertical_compose(horizontal_compose(eps, id1), delta) - id1,
            vertical_compose(horizontal_compose(id1, eps), delta) - id1};
}

inline SuiteReport suite_chain_map(const SuiteOptions& o) {
    SuiteReport rep{"chain_map"};
    std::mt19937_64 rng(o.seed);
    RandomGraphOptions opt;
    opt.max_vertices = o.max_vertices;
    for (int t = 0; t < o.random_terms; ++t) {
        Graph g = random_graph(rng, opt);
        PropElement f(Ring::Z, g);
        for (int d = 0; d <= o.max_d; ++d)
            for (const Tensor& w : basis_words(d, g.n)) {
                ++rep.cases;
                Chain bad = chain_map_defect(f, g.degree(), chain_of(Ring::Z, w));
                if (!bad.empty()) rep.fail({{"term", graph_to_json(g)}, {"input", w}, {"defect", chain_to_json(bad)}});
            }
    }
    std::array<long, 7> seen{};
    PropElement mu(Ring::Z, product_graph());
    for (const Tensor& w : basis_words(std::max(o.max_d, 3), 2)) {
        ++seen[product_case(w[0], w[1])];
        ++rep.cases;
        Chain bad = chain_map_defect(mu, 1, chain_of(Ring::Z, w));
        if (!bad.empty()) rep.fail({{"term", "product"}, {"input", w}, {"defect", chain_to_json(bad)}});
    }
    for (int c = 1; c <= 6; ++c) {
        rep.details["product_cases"][std::to_string(c)] = seen[c];
        if (seen[c] == 0) rep.fail({{"uncovered_case", c}});
    }
    return rep;
}

inline SuiteReport suite_relations(const SuiteOptions& o) {
    SuiteReport rep{"relations"};
    const char* names[] = {"productcounit", "left_counitality", "right_counitality"};
    auto rels = s_relations(Ring::Z);
    for (std::size_t k = 0; k < rels.size(); ++k)
        for (int d = 0; d <= std::max(o.max_d, 4); ++d)
            for (const Tensor& w : basis_words(d, k == 0 ? 2 : 1)) {
                ++rep.cases;
                Chain v = evaluate(rels[k], chain_of(Ring::Z, w));
                if (!v.empty()) rep.fail({{"relation", names[k]}, {"input", w}, {"value", chain_to_json(v)}});
            }
    return rep;
}

inline SuiteReport suite_d_squared(const SuiteOptions& o) {
    SuiteReport rep{"d_squared"};
    std::mt19937_64 rng(o.seed);
    RandomGraphOptions opt;
    opt.max_vertices = std::max(o.max_vertices, 8);
    opt.max_inputs = 3;
    for (int t = 0; t < std::max(o.random_terms, 1000); ++t) {
        Graph g = random_graph(rng, opt);
        ++rep.cases;
        PropElement dd = differential(differential(PropElement(Ring::Z, g)));
        if (!dd.empty()) rep.fail({{"term", graph_to_json(g)}});
    }
    return rep;
}

inline Graph raw_graph(int n, int m) {
    Graph g;
    g.n = n;
    g.m = m;
    g.outputs.assign(m, Source{});
    return g;
}

/// The overlaps drawn in the confluence argument.
inline std::vector<std::pair<std::string, Graph>> pictured_overlaps() {
    std::vector<std::pair<std::string, Graph>> out;
    {  // coproduct, product of its legs, coproduct
        Graph g = raw_graph(1, 2);
        int d0 = g.add_vertex(Kind::Coproduct), p = g.add_vertex(Kind::Product), d1 = g.add_vertex(Kind::Coproduct);
        g.inputs[d0][0] = {kExternal, 0};
        g.inputs[p] = {Source{d0, 0}, Source{d0, 1}};
        g.inputs[d1][0] = {p, 0};
        g.outputs = {Source{d1, 0}, Source{d1, 1}};
        out.emplace_back("leibniz/involution", g);
    }
    {  // product, coproduct, product of its legs
        Graph g = raw_graph(2, 1);
        int p0 = g.add_vertex(Kind::Product), d = g.add_vertex(Kind::Coproduct), p1 = g.add_vertex(Kind::Product);
        g.inputs[p0] = {Source{kExternal, 0}, Source{kExternal, 1}};
        g.inputs[d][0] = {p0, 0};
        g.inputs[p1] = {Source{d, 0}, Source{d, 1}};
        g.outputs = {Source{p1, 0}};
        out.emplace_back("leibniz/involution", g);
    }
    {  // counit on the first leg of coproduct(product)
        Graph g = raw_graph(2, 1);
        int p = g.add_vertex(Kind::Product), d = g.add_vertex(Kind::Coproduct), e = g.add_vertex(Kind::Counit);
        g.inputs[p] = {Source{kExternal, 0}, Source{kExternal, 1}};
        g.inputs[d][0] = {p, 0};
        g.inputs[e][0] = {d, 0};
        g.outputs = {Source{d, 1}};
        out.emplace_back("counitality/leibniz", g);
    }
    {  // coproduct on the second leg of coproduct(product)
        Graph g = raw_graph(2, 3);
        int p = g.add_vertex(Kind::Product), d0 = g.add_vertex(Kind::Coproduct), d1 = g.add_vertex(Kind::Coproduct);
        g.inputs[p] = {Source{kExternal, 0}, Source{kExternal, 1}};
        g.inputs[d0][0] = {p, 0};
        g.inputs[d1][0] = {d0, 1};
        g.outputs = {Source{d0, 0}, Source{d1, 0}, Source{d1, 1}};
        out.emplace_back("coassociativity/leibniz", g);
    }
    {  // coproduct of product(a, product(b, c))
        Graph g = raw_graph(3, 2);
        int p0 = g.add_vertex(Kind::Product), p1 = g.add_vertex(Kind::Product), d = g.add_vertex(Kind::Coproduct);
        g.inputs[p0] = {Source{kExternal, 1}, Source{kExternal, 2}};
        g.inputs[p1] = {Source{kExternal, 0}, Source{p0, 0}};
        g.inputs[d][0] = {p1, 0};
        g.outputs = {Source{d, 0}, Source{d, 1}};
        out.emplace_back("associativity/leibniz", g);
    }
    for (auto& [name, g] : out) g = canonicalize(g);
    return out;
}

/// Checks that every single rewrite of every term reachable from g leads to
/// the same normal form; records the rules met. Returns false on a mismatch.
inline bool locally_confluent_closure(const Graph& g, Reducer& red, std::set<std::string>& rules, long& checks) {
    std::set<Graph> seen{g};
    std::vector<Graph> todo{g};
    while (!todo.empty()) {
        Graph h = todo.back();
        todo.pop_back();
        const PropElement nf = red.reduce(h);
        for (const Site& site : find_sites(h, red.scope())) {
            rules.insert(rule_name(site.rule));
            PropElement step = rewrite_once(h, site, red.ring());
            ++checks;
            if (!(red.reduce(step) == nf)) return false;
            for (const auto& [k, c] : step)
                if (seen.insert(k).second) todo.push_back(k);
        }
    }
    return true;
}

inline SuiteReport suite_confluence(const SuiteOptions& o) {
    SuiteReport rep{"confluence"};
    Reducer red(Scope::MS, Ring::F2);
    std::map<std::string, long> kinds;
    auto check = [&](const Graph& g, const std::string& origin) {
        long found = 0;
        for (const auto& cp : critical_pairs(g, red)) {
            ++rep.cases;
            ++found;
            std::string a = rule_name(cp.first.rule), b = rule_name(cp.second.rule);
            ++kinds[a < b ? a + "/" + b : b + "/" + a];
            if (!cp.joinable())
                rep.fail({{"origin", origin}, {"term", graph_to_json(g)}, {"rules", {a, b}},
                          {"via_first", element_to_json(cp.via_first)}, {"via_second", element_to_json(cp.via_second)}});
        }
        return found;
    };
    for (const auto& [name, g] : pictured_overlaps()) {
        const long found = check(g, "pictured " + name);
        std::set<std::string> rules;
        long checks = 0;
        const bool ok = locally_confluent_closure(g, red, rules, checks);
        rep.cases += checks;
        rep.details["pictured"].push_back(
            {{"pair", name}, {"critical_pairs", found}, {"rules_met", rules}, {"rewrites_checked", checks}});
        if (!ok) rep.fail({{"origin", "pictured " + name}, {"reason", "rewrite paths disagree"}});
        if (!rules.count("leibniz")) rep.fail({{"origin", "pictured " + name}, {"reason", "Leibniz never applies"}});
    }
    // every term with one input and at most 5 vertices, two inputs and at most 4
    for (auto [n, v] : {std::pair{1, 5}, std::pair{2, 4}}) {
        EnumerationBounds b;
        b.max_counits = b.max_coproducts = b.max_products = b.max_vertices = v;
        auto all = enumerate_graphs(n, -1, b);
        rep.details["exhaustive"].push_back({{"inputs", n}, {"max_vertices", v}, {"terms", all.size()}});
        for (const Graph& g : all) check(g, "exhaustive");
    }
    std::mt19937_64 rng(o.seed);
    RandomGraphOptions opt;
    opt.max_vertices = 10;
    opt.min_vertices = 6;
    opt.max_inputs = 3;
    const int samples = 3000;
    for (int t = 0; t < samples; ++t) check(random_graph(rng, opt), "random");
    rep.details["random"] = {{"terms", samples}, {"max_vertices", 10}};
    for (const auto& [k, c] : kinds) rep.details["rule_pairs"][k] = c;
    return rep;
}

inline std::vector<Surjection> surjection_basis(int max_n, int max_m) {
    std::vector<Surjection> out;
    for (int n = 1; n <= max_n; ++n)
        for (int m = 1; m <= std::min(n, max_m); ++m)
            for (const auto& s : surjections(n, m)) out.push_back(s);
    return out;
}

inline std::vector<Permutation> all_permutations(int m) {
    std::vector<Permutation> out;
    Permutation p = identity_permutation(m);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline SurElement sur_one(const Surjection& s) {
    SurElement e(Ring::F2);
    e.add(s, 1);
    return e;
}

inline SuiteReport suite_sur_operad(const SuiteOptions&) {
    SuiteReport rep{"sur_operad"};
    auto compose = [](const SurElement& x, int r, const SurElement& y) {
        SurElement out(Ring::F2);
        for (const auto& [a, ca] : x)
            for (const auto& [b, cb] : y) out += sur_compose(a, r, b);
        return out;
    };
    for (const auto& s : surjection_basis(6, 6)) {
        ++rep.cases;
        if (!sur_differential(sur_differential(s)).empty()) rep.fail({{"d_squared", to_string(s)}});
    }
    auto basis = surjection_basis(5, 5);
    for (const auto& s : basis)
        for (const auto& t : basis) {
            if (s.n() + t.n() > 7) continue;
            for (int r = 1; r <= s.m; ++r) {
                SurElement st = sur_compose(s, r, t);
                const int M = s.m + t.m - 1;
                for (const auto& u : basis) {
                    if (s.n() + t.n() + u.n() > 7) continue;
                    for (int q = 1; q <= M; ++q) {
                        ++rep.cases;
                        SurElement lhs = compose(st, q, sur_one(u)), rhs(Ring::F2);
                        if (q < r)
                            rhs = compose(sur_compose(s, q, u), r + u.m - 1, sur_one(t));
                        else if (q < r + t.m)
                            rhs = compose(sur_one(s), r, sur_compose(t, q - r + 1, u));
                        else
                            rhs = compose(sur_compose(s, q - t.m + 1, u), r, sur_one(t));
                        if (!(lhs == rhs))
                            rep.fail({{"associativity", {to_string(s), r, to_string(t), q, to_string(u)}}});
                    }
                }
                for (const auto& tau : all_permutations(s.m)) {
                    ++rep.cases;
                    const int tr = tau[r - 1] + 1;
                    Permutation big(M);
                    for (int w = 1; w <= M; ++w) {
                        int img;
                        if (w >= r && w < r + t.m) {
                            img = tr + (w - r);
                        } else {
                            int v = w < r ? w : w - t.m + 1;
                            int x = tau[v - 1] + 1;
                            img = x < tr ? x : x + t.m - 1;
                        }
                        big[w - 1] = img - 1;
                    }
                    if (!(sur_compose(sur_act(tau, s), tr, t) == sur_act(big, st)))
                        rep.fail({{"equivariance_outer", {to_string(s), r, to_string(t), tau}}});
                }
                for (const auto& rho : all_permutations(t.m)) {
                    ++rep.cases;
                    Permutation big = identity_permutation(M);
                    for (int u = 0; u < t.m; ++u) big[r - 1 + u] = r - 1 + rho[u];
                    if (!(sur_compose(s, r, sur_act(rho, t)) == sur_act(big, st)))
                        rep.fail({{"equivariance_inner", {to_string(s), r, to_string(t), rho}}});
                }
            }
        }
    return rep;
}

inline SuiteReport suite_iso(const SuiteOptions&) {
    SuiteReport rep{"iso"};
    Reducer red(Scope::MS, Ring::F2);
    auto basis = surjection_basis(6, 4);
    for (const auto& s : basis) {
        PropElement g(Ring::F2, from_surjection(s));
        ++rep.cases;
        if (!(to_surjection(from_surjection(s)) == s) || !(red.reduce(g) == g))
            rep.fail({{"not_normal_or_round_trip", to_string(s)}});
        ++rep.cases;
        if (!(to_sur_element(red.reduce(differential(g))) == sur_differential(s)))
            rep.fail({{"differential", to_string(s)}});
        for (const auto& tau : all_permutations(s.m)) {
            ++rep.cases;
            if (!(to_sur_element(red.reduce(act({0}, tau, g))) == sur_one(sur_act(tau, s))))
                rep.fail({{"action", to_string(s)}, {"tau", tau}});
        }
        for (const auto& t : basis) {
            if (s.n() + t.n() > 7) continue;
            for (int r = 1; r <= s.m; ++r) {
                ++rep.cases;
                PropElement c = red.reduce(graft(g, r, PropElement(Ring::F2, from_surjection(t)), s.m));
                if (!(to_sur_element(c) == sur_compose(s, r, t)))
                    rep.fail({{"composition", {to_string(s), r, to_string(t)}}});
            }
        }
    }
    return rep;
}

/// Last vertex of each simplex at most the first vertex of the next.
inline bool weakly_ordered(const Tensor& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].back() > w[i + 1].front()) return false;
    return true;
}

inline SuiteReport suite_splitting(const SuiteOptions& o) {
    SuiteReport rep{"splitting"};
    Reducer red(Scope::MS, Ring::F2);
    long unordered = 0, unordered_differ = 0;
    for (int k = 1; k <= 4; ++k)
        for (int n = 1; n <= 4; ++n) {
            PropElement lhs = vertical_compose(PropElement(Ring::F2, coproduct_comb(n)),
                                               PropElement(Ring::F2, product_comb(k)));
            PropElement rhs(Ring::F2);
            for (const auto& a : comb_sequences(k, n)) rhs.add(comb_element(a), 1);
            ++rep.cases;
            if (!(red.reduce(lhs) == red.reduce(rhs))) rep.fail({{"k", k}, {"n", n}, {"where", "MS"}});
            // as operations on C(Delta^d) through the one-input part
            PropElement split(Ring::F2, coproduct_comb(k));
            PropElement lhs1 = vertical_compose(lhs, split), rhs1 = vertical_compose(rhs, split);
            for (int d = 0; d <= o.max_d; ++d) {
                for (const Simplex& sigma : all_simplices(d)) {
                    ++rep.cases;
                    Chain x = chain_of(Ring::F2, Tensor{sigma});
                    if (!(evaluate(lhs1, x) == evaluate(rhs1, x)))
                        rep.fail({{"k", k}, {"n", n}, {"where", "simplex"}, {"input", sigma}});
                }
                for (const Tensor& w : basis_words(d, k)) {
                    Chain x = chain_of(Ring::F2, w);
                    const bool same = evaluate(lhs, x) == evaluate(rhs, x);
                    if (weakly_ordered(w)) {
                        ++rep.cases;
                        if (!same) rep.fail({{"k", k}, {"n", n}, {"where", "ordered word"}, {"input", w}});
                    } else {
                        ++unordered;
                        unordered_differ += !same;
                    }
                }
            }
        }
    rep.details["unordered_words"] = {{"checked", unordered}, {"differ", unordered_differ}};
    return rep;
}

inline SuiteReport suite_diagram_A(const SuiteOptions& o) {
    SuiteReport rep{"diagram_A"};
    const int max_d = std::max(o.max_d, 4);
    for (const auto& s : surjection_basis(5, 5)) {
        PropElement g(Ring::F2, from_surjection(s));
        for (int d = 0; d <= max_d; ++d)
            for (const Simplex& sigma : all_simplices(d)) {
                ++rep.cases;
                if (!(evaluate(g, chain_of(Ring::F2, Tensor{sigma})) == sur_coact(s, sigma)))
                    rep.fail({{"surjection", to_string(s)}, {"simplex", sigma}});
            }
    }
    return rep;
}

inline SuiteReport suite_leibniz_witness(const SuiteOptions&) {
    SuiteReport rep{"leibniz_witness"};
    Chain v = leibniz_witness_value();
    rep.cases = 1;
    rep.details["value"] = chain_to_json(v);
    if (v.empty()) rep.fail({{"reason", "the Leibniz difference vanishes on [0,2] (x) [1]"}});
    return rep;
}

inline SuiteReport suite_augmented(const SuiteOptions& o) {
    SuiteReport rep{"augmented"};
    const char* names[] = {"productcounit", "left_counitality", "right_counitality"};
    auto rels = s_relations(Ring::Z);
    for (std::size_t k = 0; k < rels.size(); ++k) {
        const int arity = rels[k].begin()->first.m;
        for (int d = 0; d <= o.max_d; ++d)
            for (const Tensor& w : basis_words(d, arity, Grading::Augmented)) {
                ++rep.cases;
                Chain v = evaluate_augmented(rels[k], chain_of(Ring::Z, w));
                if (!v.empty()) rep.fail({{"relation", names[k]}, {"input", w}, {"value", chain_to_json(v)}});
            }
    }
    std::mt19937_64 rng(o.seed);
    RandomGraphOptions opt;
    opt.max_vertices = std::min(o.max_vertices, 5);
    int done = 0;
    while (done < o.random_terms / 2) {
        Graph g = random_graph(rng, opt);
        if (g.m > 3) continue;
        ++done;
        PropElement f(Ring::Z, g);
        for (int d = 0; d <= o.max_d; ++d)
            for (const Tensor& w : basis_words(d, g.m, Grading::Augmented)) {
                ++rep.cases;
                Chain bad = chain_map_defect(f, g.degree(), chain_of(Ring::Z, w), Grading::Augmented);
                if (!bad.empty()) rep.fail({{"term", graph_to_json(g)}, {"input", w}});
            }
    }
    return rep;
}

inline SuiteReport suite_homotopy(const SuiteOptions& o) {
    SuiteReport rep{"homotopy"};
    std::mt19937_64 rng(o.seed);
    RandomGraphOptions opt;
    opt.max_vertices = o.max_vertices;
    int done = 0;
    while (done < 200) {
        Graph g = random_graph(rng, opt);
        if (g.m < 1) continue;
        ++done;
        PropElement x = reduce_S(PropElement(Ring::Z, g));
        rep.cases += 2;
        if (!(r_map(i_map(x)) == x)) rep.fail({{"identity", "r i = id"}, {"term", graph_to_json(g)}});
        PropElement bad = homotopy_defect(x);
        if (!bad.empty()) rep.fail({{"identity", "dH + Hd = id - ir"}, {"term", graph_to_json(g)}});
    }
    ++rep.cases;
    if (!sigma_fixed_counterexample()) rep.fail({{"reason", "two counits element is not fixed"}});
    return rep;
}

inline SuiteReport suite_homology(const SuiteOptions& o) {
    SuiteReport rep{"homology"};
    std::vector<std::array<int, 3>> runs;
    if (o.bound.size() == 3)
        runs.push_back({o.bound[0], o.bound[1], o.bound[2]});
    else if (o.bound.empty())
        runs = {{1, 0, 2}, {1, 1, 2}, {1, 2, 2}};
    else
        throw std::invalid_argument("--bound takes n,m,D");
    for (auto [n, m, D] : runs) {
        HomologyReport h = bounded_homology(n, m, D);
        ++rep.cases;
        rep.details["runs"].push_back(homology_to_json(h));
        if (h.status == "inconclusive") {
            rep.status = "inconclusive";
            rep.counterexamples.push_back(homology_to_json(h));
        } else if (h.status != "pass") {
            rep.fail(homology_to_json(h));
        }
    }
    return rep;
}

inline SuiteReport suite_cup_coherence(const SuiteOptions&) {
    SuiteReport rep{"cup_coherence"};
    for (int i = 1; i <= 4; ++i) {
        ++rep.cases;
        PropElement bad =
            coherence_defect(PropElement(Ring::F2, cup_i_element(i)), PropElement(Ring::F2, cup_i_element(i - 1)));
        rep.details["comb"].push_back({{"i", i}, {"defect_terms", bad.size()}});
        if (!bad.empty()) rep.fail({{"i", i}, {"element", "comb"}, {"defect", element_to_json(bad)}});
        PropElement c = coherent_cup_element(i);
        bool ok = coherence_defect(c, coherent_cup_element(i - 1)).empty();
        bool same = equal_mod_relations(c, PropElement(Ring::F2, cup_i_element(i)), Scope::MS);
        rep.details["homotopy_family"].push_back({{"i", i}, {"coherent", ok}, {"equals_comb_in_MS", same}});
    }
    return rep;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "chain_map", "relations", "d_squared",       "confluence", "sur_operad", "iso",           "splitting",
        "diagram_A", "leibniz_witness", "augmented", "homotopy",   "homology",   "cup_coherence"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& o = {}) {
    static const std::map<std::string, SuiteReport (*)(const SuiteOptions&)> table = {
        {"chain_map", suite_chain_map},
        {"relations", suite_relations},
        {"d_squared", suite_d_squared},
        {"confluence", suite_confluence},
        {"sur_operad", suite_sur_operad},
        {"iso", suite_iso},
        {"splitting", suite_splitting},
        {"diagram_A", suite_diagram_A},
        {"leibniz_witness", suite_leibniz_witness},
        {"augmented", suite_augmented},
        {"homotopy", suite_homotopy},
        {"homology", suite_homology},
        {"cup_coherence", suite_cup_coherence},
    };
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown suite: " + name);
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep = it->second(o);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Runs independent suites concurrently; results in input order.
inline std::vector<SuiteReport> run_suites(const std::vector<std::string>& names, const SuiteOptions& o = {}) {
    std::vector<std::future<SuiteReport>> jobs;
    for (const auto& n : names) jobs.push_back(std::async(std::launch::async, [n, o] { return run_suite(n, o); }));
    std::vector<SuiteReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace einfty
