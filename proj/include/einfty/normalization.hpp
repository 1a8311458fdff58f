#pragma once

// Rewriting modulo the relations of S (three counit rules) and of its
// quotient MS (commutative, associative product; coassociative coproduct;
// Leibniz compatibility; vanishing involution).
//
// MS rewriting is implemented over F2 only. Product trees and coproduct trees
// are rewritten as whole trees: a maximal coproduct tree is reshaped into a
// left comb with the same planar leaf order, and a maximal product tree into a
// left comb whose leaves are sorted by their address (the path from an
// external input through coproduct ports).

#include "einfty/coefficients.hpp"
#include "einfty/graph_terms.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace einfty {

enum class Scope { S, MS };

inline const char* scope_name(Scope s) { return s == Scope::S ? "S" : "MS"; }

inline Scope parse_scope(const std::string& s) {
    if (s == "S") return Scope::S;
    if (s == "MS") return Scope::MS;
    throw std::invalid_argument("unknown scope '" + s + "' (expected S or MS)");
}

enum class Rule {
    ProductCounit,
    LeftCounit,
    RightCounit,
    Involution,
    CrossedInvolution,
    DegenerateAdjacency,
    Leibniz,
    Coassociativity,
    Associativity,
    Commutativity,
};

inline const char* rule_name(Rule r) {
    switch (r) {
        case Rule::ProductCounit: return "productcounit";
        case Rule::LeftCounit: return "left_counit";
        case Rule::RightCounit: return "right_counit";
        case Rule::Involution: return "involution";
        case Rule::CrossedInvolution: return "crossed_involution";
        case Rule::DegenerateAdjacency: return "degenerate_adjacency";
        case Rule::Leibniz: return "leibniz";
        case Rule::Coassociativity: return "coassociativity";
        case Rule::Associativity: return "associativity";
        case Rule::Commutativity: return "commutativity";
    }
    return "?";
}

inline bool rule_in_scope(Rule r, Scope s) {
    return s == Scope::MS || r == Rule::ProductCounit || r == Rule::LeftCounit || r == Rule::RightCounit;
}

/// A place where a rule applies: the vertex it is anchored at (the counit,
/// the coproduct, or the root of the tree) and, for degenerate adjacency,
/// the index of the first of the two adjacent leaves.
struct Site {
    Rule rule;
    int vertex = -1;
    int aux = -1;
    auto operator<=>(const Site&) const = default;
};

/// Structural data shared by the rule matchers.
class GraphView {
public:
    explicit GraphView(const Graph& g) : g_(g), consumers_(g) {}

    const Graph& graph() const { return g_; }
    const Sink& consumer(const Source& s) const { return consumers_[s]; }
    bool is(int v, Kind k) const { return v >= 0 && g_.kinds[v] == k; }

    bool sink_is(const Sink& s, Kind k) const { return !s.external() && g_.kinds[s.vertex] == k; }

    /// Root of the maximal product tree containing product v.
    int product_root(int v) const {
        for (;;) {
            const Sink& c = consumer(Source{v, 0});
            if (!sink_is(c, Kind::Product)) return v;
            v = c.vertex;
        }
    }
    bool is_product_root(int v) const { return is(v, Kind::Product) && product_root(v) == v; }

    bool is_coproduct_root(int v) const {
        if (!is(v, Kind::Coproduct)) return false;
        const Source& s = g_.inputs[v][0];
        return s.external() || !is(s.vertex, Kind::Coproduct);
    }

    /// Leaves of a product tree in left-to-right order, and its vertices.
    void product_tree(int root, std::vector<Source>& leaves, std::vector<int>& vertices) const {
        vertices.push_back(root);
        for (int p = 0; p < 2; ++p) {
            const Source& s = g_.inputs[root][p];
            if (!s.external() && g_.kinds[s.vertex] == Kind::Product)
                product_tree(s.vertex, leaves, vertices);
            else
                leaves.push_back(s);
        }
    }

    /// Leaves of a coproduct tree in planar order, and its vertices.
    void coproduct_tree(int root, std::vector<Source>& leaves, std::vector<int>& vertices) const {
        vertices.push_back(root);
        for (int p = 0; p < 2; ++p) {
            const Sink& c = consumer(Source{root, p});
            if (sink_is(c, Kind::Coproduct))
                coproduct_tree(c.vertex, leaves, vertices);
            else
                leaves.push_back(Source{root, p});
        }
    }

    bool product_left_comb(int root) const {
        int v = root;
        for (;;) {
            const Source& r = g_.inputs[v][1];
            if (!r.external() && g_.kinds[r.vertex] == Kind::Product) return false;
            const Source& l = g_.inputs[v][0];
            if (l.external() || g_.kinds[l.vertex] != Kind::Product) return true;
            v = l.vertex;
        }
    }

    bool coproduct_left_comb(int root) const {
        int v = root;
        for (;;) {
            if (sink_is(consumer(Source{v, 1}), Kind::Coproduct)) return false;
            const Sink& l = consumer(Source{v, 0});
            if (!sink_is(l, Kind::Coproduct)) return true;
            v = l.vertex;
        }
    }

    /// Address of a source: external input i is (i); a coproduct output port
    /// p extends the address of the coproduct's input by p; a product output
    /// takes the smaller address of its inputs.
    const std::vector<int>& address(const Source& s) const {
        auto it = addr_.find(s);
        if (it != addr_.end()) return it->second;
        std::vector<int> a;
        if (s.external()) {
            a = {s.port};
        } else if (g_.kinds[s.vertex] == Kind::Coproduct) {
            a = address(g_.inputs[s.vertex][0]);
            a.push_back(s.port);
        } else {
            a = std::min(address(g_.inputs[s.vertex][0]), address(g_.inputs[s.vertex][1]));
        }
        return addr_.emplace(s, std::move(a)).first->second;
    }

    /// True when s is reached from an external input through coproducts only.
    bool product_free(Source s) const {
        while (!s.external()) {
            if (g_.kinds[s.vertex] != Kind::Coproduct) return false;
            s = g_.inputs[s.vertex][0];
        }
        return true;
    }

    bool leaves_sorted(const std::vector<Source>& leaves) const {
        for (std::size_t i = 0; i + 1 < leaves.size(); ++i)
            if (address(leaves[i + 1]) < address(leaves[i])) return false;
        return true;
    }

private:
    const Graph& g_;
    ConsumerTable consumers_;
    mutable std::map<Source, std::vector<int>> addr_;
};

/// All sites of rules in the given scope, in priority order: rules that
/// produce zero, then counitality, Leibniz, and the tree reshaping rules;
/// within a rule by vertex index.
inline std::vector<Site> find_sites(const Graph& g, Scope scope) {
    GraphView gv(g);
    const int V = g.vertex_count();
    std::vector<Site> out;
    auto each = [&](Rule r, auto&& pred) {
        if (!rule_in_scope(r, scope)) return;
        for (int v = 0; v < V; ++v) pred(r, v);
    };
    each(Rule::ProductCounit, [&](Rule r, int v) {
        if (!gv.is(v, Kind::Counit)) return;
        const Source& s = g.inputs[v][0];
        if (!s.external() && gv.is(s.vertex, Kind::Product)) out.push_back({r, v});
    });
    auto involution = [&](Rule r, int v, int first) {
        if (!gv.is(v, Kind::Coproduct)) return;
        const Sink& a = gv.consumer(Source{v, 0});
        const Sink& b = gv.consumer(Source{v, 1});
        if (gv.sink_is(a, Kind::Product) && a.vertex == b.vertex && a.port == first) out.push_back({r, v});
    };
    each(Rule::Involution, [&](Rule r, int v) { involution(r, v, 0); });
    each(Rule::CrossedInvolution, [&](Rule r, int v) { involution(r, v, 1); });
    each(Rule::DegenerateAdjacency, [&](Rule r, int v) {
        if (!gv.is_coproduct_root(v)) return;
        std::vector<Source> leaves;
        std::vector<int> verts;
        gv.coproduct_tree(v, leaves, verts);
        for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
            const Sink& a = gv.consumer(leaves[i]);
            const Sink& b = gv.consumer(leaves[i + 1]);
            if (!gv.sink_is(a, Kind::Product) || !gv.sink_is(b, Kind::Product)) continue;
            if (gv.product_root(a.vertex) == gv.product_root(b.vertex))
                out.push_back({r, v, static_cast<int>(i)});
        }
    });
    auto counit_side = [&](Rule r, int v, int port) {
        if (!gv.is(v, Kind::Coproduct)) return;
        if (gv.sink_is(gv.consumer(Source{v, port}), Kind::Counit)) out.push_back({r, v});
    };
    each(Rule::LeftCounit, [&](Rule r, int v) { counit_side(r, v, 0); });
    each(Rule::RightCounit, [&](Rule r, int v) { counit_side(r, v, 1); });
    each(Rule::Leibniz, [&](Rule r, int v) {
        if (!gv.is(v, Kind::Coproduct)) return;
        const Source& s = g.inputs[v][0];
        if (s.external() || !gv.is(s.vertex, Kind::Product)) return;
        // only on a sorted product comb whose leaves are plain coproduct
        // leaves, so that the split inputs are ordered
        if (!gv.product_left_comb(s.vertex)) return;
        std::vector<Source> leaves;
        std::vector<int> verts;
        gv.product_tree(s.vertex, leaves, verts);
        for (const Source& l : leaves)
            if (!gv.product_free(l)) return;
        if (gv.leaves_sorted(leaves)) out.push_back({r, v});
    });
    each(Rule::Coassociativity, [&](Rule r, int v) {
        if (gv.is_coproduct_root(v) && !gv.coproduct_left_comb(v)) out.push_back({r, v});
    });
    each(Rule::Associativity, [&](Rule r, int v) {
        if (gv.is_product_root(v) && !gv.product_left_comb(v)) out.push_back({r, v});
    });
    each(Rule::Commutativity, [&](Rule r, int v) {
        if (!gv.is_product_root(v) || !gv.product_left_comb(v)) return;
        std::vector<Source> leaves;
        std::vector<int> verts;
        gv.product_tree(v, leaves, verts);
        if (!gv.leaves_sorted(leaves)) out.push_back({r, v});
    });
    return out;
}

/// Removes the listed vertices (whose wires must already be detached) and
/// renumbers the rest, keeping their relative order.
inline Graph drop_vertices(const Graph& g, const std::vector<int>& dead) {
    std::vector<int> idx(g.vertex_count(), 0);
    int next = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        idx[v] = std::find(dead.begin(), dead.end(), v) != dead.end() ? -1 : next++;
    auto re = [&](Source s) {
        if (!s.external() && s.vertex != kUnused) s.vertex = idx[s.vertex];
        return s;
    };
    Graph out;
    out.n = g.n;
    out.m = g.m;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (idx[v] < 0) continue;
        out.kinds.push_back(g.kinds[v]);
        out.inputs.push_back({re(g.inputs[v][0]), re(g.inputs[v][1])});
    }
    for (const Source& s : g.outputs) out.outputs.push_back(re(s));
    return out;
}

using RawTerms = std::vector<std::pair<Integer, Graph>>;

/// Rewrites one site. The results are raw graphs whose vertex order is
/// inherited from g (so canonicalizing them yields the orientation sign).
inline RawTerms apply_rule(const Graph& g, const Site& site) {
    GraphView gv(g);
    const int v = site.vertex;
    switch (site.rule) {
        case Rule::ProductCounit:
        case Rule::Involution:
        case Rule::CrossedInvolution:
        case Rule::DegenerateAdjacency:
            return {};
        case Rule::LeftCounit:
        case Rule::RightCounit: {
            const int capped = site.rule == Rule::LeftCounit ? 0 : 1;
            const int counit = gv.consumer(Source{v, capped}).vertex;
            const Sink keep = gv.consumer(Source{v, 1 - capped});
            Graph h = g;
            h.connect(g.inputs[v][0], keep);
            return {{1, drop_vertices(h, {v, counit})}};
        }
        case Rule::Leibniz: {
            const int p = g.inputs[v][0].vertex;
            const Source a = g.inputs[p][0], b = g.inputs[p][1];
            const Sink o1 = gv.consumer(Source{v, 0}), o2 = gv.consumer(Source{v, 1});
            Graph t1 = g;
            t1.inputs[v][0] = a;
            t1.inputs[p] = {Source{v, 1}, b};
            t1.connect(Source{v, 0}, o1);
            t1.connect(Source{p, 0}, o2);
            Graph t2 = g;
            t2.inputs[v][0] = b;
            t2.inputs[p] = {a, Source{v, 0}};
            t2.connect(Source{p, 0}, o1);
            t2.connect(Source{v, 1}, o2);
            return {{1, t1}, {1, t2}};
        }
        case Rule::Coassociativity: {
            std::vector<Source> leaves;
            std::vector<int> verts;
            gv.coproduct_tree(v, leaves, verts);
            std::vector<Sink> sinks;
            for (const Source& l : leaves) sinks.push_back(gv.consumer(l));
            std::sort(verts.begin(), verts.end());
            const int k = static_cast<int>(leaves.size());
            Graph h = g;
            h.inputs[verts[0]][0] = g.inputs[v][0];
            for (int i = 0; i + 1 < k - 1; ++i) h.inputs[verts[i + 1]][0] = Source{verts[i], 0};
            h.connect(Source{verts[k - 2], 0}, sinks[0]);
            for (int j = 1; j < k; ++j) h.connect(Source{verts[k - 1 - j], 1}, sinks[j]);
            return {{1, h}};
        }
        case Rule::Associativity:
        case Rule::Commutativity: {
            std::vector<Source> leaves;
            std::vector<int> verts;
            gv.product_tree(v, leaves, verts);
            if (site.rule == Rule::Commutativity)
                std::stable_sort(leaves.begin(), leaves.end(),
                                 [&](const Source& x, const Source& y) { return gv.address(x) < gv.address(y); });
            const Sink root_sink = gv.consumer(Source{v, 0});
            std::sort(verts.begin(), verts.end());
            const int k = static_cast<int>(leaves.size());
            Graph h = g;
            h.inputs[verts[0]] = {leaves[0], leaves[1]};
            for (int i = 1; i < k - 1; ++i) h.inputs[verts[i]] = {Source{verts[i - 1], 0}, leaves[i + 1]};
            h.connect(Source{verts[k - 2], 0}, root_sink);
            return {{1, h}};
        }
    }
    return {};
}

/// Lexicographic termination measure of a graph.
inline std::array<int, 5> termination_measure(const Graph& g) {
    GraphView gv(g);
    const int V = g.vertex_count();
    std::vector<std::set<int>> above(V);
    for (int v : topological_order(g))
        for (int p = 0; p < in_arity(g.kinds[v]); ++p) {
            const Source& s = g.inputs[v][p];
            if (s.external()) continue;
            above[v].insert(above[s.vertex].begin(), above[s.vertex].end());
            above[v].insert(s.vertex);
        }
    int pairs = 0, coassoc = 0, assoc = 0, unsorted = 0;
    for (int v = 0; v < V; ++v) {
        if (g.kinds[v] == Kind::Coproduct)
            for (int u : above[v]) pairs += g.kinds[u] == Kind::Product;
        if (gv.is_coproduct_root(v) && !gv.coproduct_left_comb(v)) ++coassoc;
        if (gv.is_product_root(v)) {
            if (!gv.product_left_comb(v)) {
                ++assoc;
            } else {
                std::vector<Source> leaves;
                std::vector<int> verts;
                gv.product_tree(v, leaves, verts);
                unsorted += !gv.leaves_sorted(leaves);
            }
        }
    }
    return {V, pairs, coassoc, assoc, unsorted};
}

/// Short stable hash of a graph's canonical JSON, for traces.
inline std::string graph_hash(const Graph& g) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : graph_to_json(g).dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

struct TraceStep {
    Rule rule;
    Site site;
    std::string before;
    std::vector<std::string> after;
};

class NonTermination : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rewrites to normal form. The default strategy takes the first site in
/// priority order and memoizes normal forms of basis graphs; with a random
/// generator it picks sites uniformly and does not memoize.
class Reducer {
public:
    Reducer(Scope scope, Ring ring) : scope_(scope), ring_(ring) {
        if (scope == Scope::MS && ring != Ring::F2)
            throw std::invalid_argument("MS rewriting is only available over F2");
    }

    void set_random(std::mt19937_64* rng) { rng_ = rng; }
    void set_trace(std::function<void(const TraceStep&)> t) { trace_ = std::move(t); }
    void set_check_measure(bool on) { check_measure_ = on; }
    Scope scope() const { return scope_; }
    Ring ring() const { return ring_; }

    PropElement reduce(const PropElement& x) {
        if (x.ring() != ring_) throw RingMismatch();
        PropElement out(ring_);
        for (const auto& [g, c] : x) out.axpy(c, reduce(g));
        return out;
    }

    PropElement reduce(const Graph& g) {
        if (!rng_) {
            auto it = memo_.find(g);
            if (it != memo_.end()) return it->second;
        }
        PropElement out = reduce_uncached(g);
        if (!rng_) memo_.emplace(g, out);
        return out;
    }

private:
    PropElement reduce_uncached(const Graph& g) {
        if (++depth_ > 10000) throw NonTermination("rewriting did not terminate");
        struct Guard {
            int& d;
            ~Guard() { --d; }
        } guard{depth_};
        auto sites = find_sites(g, scope_);
        if (sites.empty()) return PropElement(ring_, g);
        std::size_t pick = 0;
        if (rng_) pick = std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(*rng_);
        const Site& site = sites[pick];
        RawTerms terms = apply_rule(g, site);
        PropElement step(ring_);
        for (auto& [c, h] : terms) add_raw(step, h, c);
        if (check_measure_) {
            auto before = termination_measure(g);
            for (const auto& [h, c] : step)
                if (!(termination_measure(h) < before))
                    throw NonTermination(std::string("rule ") + rule_name(site.rule) + " did not decrease the measure");
        }
        if (trace_) {
            TraceStep t{site.rule, site, graph_hash(g), {}};
            for (const auto& [h, c] : step) t.after.push_back(graph_hash(h));
            trace_(t);
        }
        PropElement out(ring_);
        for (const auto& [h, c] : step) out.axpy(c, reduce(h));
        return out;
    }

    Scope scope_;
    Ring ring_;
    std::mt19937_64* rng_ = nullptr;
    std::function<void(const TraceStep&)> trace_;
    bool check_measure_ = false;
    int depth_ = 0;
    std::map<Graph, PropElement> memo_;
};

inline PropElement reduce(const PropElement& x, Scope scope) {
    Reducer r(scope, x.ring());
    return r.reduce(x);
}

inline PropElement reduce_S(const PropElement& x) { return reduce(x, Scope::S); }

inline bool equal_mod_relations(const PropElement& x, const PropElement& y, Scope scope) {
    return reduce(x - y, scope).empty();
}

/// Vertices read or rewritten by a site.
inline std::vector<int> site_footprint(const Graph& g, const Site& site) {
    GraphView gv(g);
    const int v = site.vertex;
    std::vector<Source> leaves;
    std::vector<int> verts;
    switch (site.rule) {
        case Rule::ProductCounit:
            return {v, g.inputs[v][0].vertex};
        case Rule::LeftCounit:
        case Rule::RightCounit: {
            const int port = site.rule == Rule::LeftCounit ? 0 : 1;
            return {v, gv.consumer(Source{v, port}).vertex};
        }
        case Rule::Involution:
        case Rule::CrossedInvolution:
            return {v, gv.consumer(Source{v, 0}).vertex};
        case Rule::DegenerateAdjacency: {
            gv.coproduct_tree(v, leaves, verts);
            std::vector<Source> pl;
            gv.product_tree(gv.product_root(gv.consumer(leaves[site.aux]).vertex), pl, verts);
            break;
        }
        case Rule::Leibniz:
            verts.push_back(v);
            gv.product_tree(g.inputs[v][0].vertex, leaves, verts);
            break;
        case Rule::Coassociativity:
            gv.coproduct_tree(v, leaves, verts);
            break;
        case Rule::Associativity:
        case Rule::Commutativity:
            gv.product_tree(v, leaves, verts);
            break;
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

inline PropElement rewrite_once(const Graph& g, const Site& site, Ring ring) {
    PropElement out(ring);
    for (const auto& [c, h] : apply_rule(g, site)) add_raw(out, h, c);
    return out;
}

/// Two sites of one graph sharing a vertex, with the normal forms reached by
/// rewriting first at each of them.
struct CriticalPair {
    Graph graph;
    Site first, second;
    PropElement via_first, via_second;
    bool joinable() const { return via_first == via_second; }
};

/// All overlapping site pairs of g.
inline std::vector<CriticalPair> critical_pairs(const Graph& g, Reducer& reducer) {
    auto sites = find_sites(g, reducer.scope());
    std::vector<std::vector<int>> feet;
    for (const Site& s : sites) feet.push_back(site_footprint(g, s));
    std::vector<CriticalPair> out;
    std::vector<PropElement> nf(sites.size(), PropElement(reducer.ring()));
    std::vector<char> done(sites.size(), 0);
    auto normal = [&](std::size_t i) -> const PropElement& {
        if (!done[i]) {
            nf[i] = reducer.reduce(rewrite_once(g, sites[i], reducer.ring()));
            done[i] = 1;
        }
        return nf[i];
    };
    for (std::size_t i = 0; i < sites.size(); ++i)
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(feet[i].begin(), feet[i].end(), feet[j].begin(), feet[j].end(),
                                  std::back_inserter(common));
            if (common.empty()) continue;
            out.push_back({g, sites[i], sites[j], normal(i), normal(j)});
        }
    return out;
}

// ---------------------------------------------------------------------------
// Combs and surjection-like graphs.

/// Left comb of coproducts on one input with k leaves; leaves are the
/// outputs in planar order.
inline Graph coproduct_comb(int k) {
    if (k < 1) throw GraphError("a coproduct comb needs at least one leaf");
    Graph g;
    g.n = 1;
    g.m = k;
    Source cur{kExternal, 0};
    std::vector<Source> rights;
    for (int i = 0; i < k - 1; ++i) {
        int d = g.add_vertex(Kind::Coproduct);
        g.inputs[d][0] = cur;
        rights.push_back(Source{d, 1});
        cur = Source{d, 0};
    }
    g.outputs.push_back(cur);
    for (auto it = rights.rbegin(); it != rights.rend(); ++it) g.outputs.push_back(*it);
    return canonicalize(g);
}

/// Left comb of products on k inputs with one output.
inline Graph product_comb(int k) {
    if (k < 1) throw GraphError("a product comb needs at least one input");
    Graph g;
    g.n = k;
    g.m = 1;
    Source cur{kExternal, 0};
    for (int i = 1; i < k; ++i) {
        int p = g.add_vertex(Kind::Product);
        g.inputs[p] = {cur, Source{kExternal, i}};
        cur = Source{p, 0};
    }
    g.outputs.push_back(cur);
    return canonicalize(g);
}

namespace detail {

/// Joins the given sources with a left comb of products and returns the root.
inline Source product_left_comb(Graph& g, const std::vector<Source>& leaves) {
    Source cur = leaves.at(0);
    for (std::size_t i = 1; i < leaves.size(); ++i) {
        int p = g.add_vertex(Kind::Product);
        g.inputs[p] = {cur, leaves[i]};
        cur = Source{p, 0};
    }
    return cur;
}

/// Attaches a left coproduct comb with k leaves to `input`; returns the
/// leaves in planar order.
inline std::vector<Source> coproduct_left_comb(Graph& g, Source input, int k) {
    Source cur = input;
    std::vector<Source> rights;
    for (int i = 0; i < k - 1; ++i) {
        int d = g.add_vertex(Kind::Coproduct);
        g.inputs[d][0] = cur;
        rights.push_back(Source{d, 1});
        cur = Source{d, 0};
    }
    std::vector<Source> leaves{cur};
    for (auto it = rights.rbegin(); it != rights.rend(); ++it) leaves.push_back(*it);
    return leaves;
}

}  // namespace detail

/// The element <a> of MS(k, n) with n = 1 + sum a_i: input i is split by a
/// coproduct comb into a_i + 1 branches, and the last branch of each input is
/// multiplied with the first branch of the next.
inline Graph comb_element(const std::vector<int>& a) {
    if (a.empty()) throw GraphError("comb element needs at least one entry");
    for (int x : a)
        if (x < 0) throw GraphError("comb element entries must be non-negative");
    Graph g;
    g.n = static_cast<int>(a.size());
    std::vector<std::vector<Source>> groups;
    for (int i = 0; i < g.n; ++i) groups.push_back(detail::coproduct_left_comb(g, Source{kExternal, i}, a[i] + 1));
    std::vector<Source> pending;
    for (int i = 0; i < g.n; ++i) {
        const auto& grp = groups[i];
        for (std::size_t j = 0; j < grp.size(); ++j) {
            pending.push_back(grp[j]);
            const bool last = j + 1 == grp.size();
            if (!last || i + 1 == g.n) {
                g.outputs.push_back(detail::product_left_comb(g, pending));
                pending.clear();
            }
        }
    }
    g.m = static_cast<int>(g.outputs.size());
    return canonicalize(g);
}

/// Sequences of k non-negative integers summing to n - 1.
inline std::vector<std::vector<int>> comb_sequences(int k, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int rem) {
        if (left == 0) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        for (int x = 0; x <= rem; ++x) {
            cur.push_back(x);
            rec(left - 1, rem - x);
            cur.pop_back();
        }
    };
    if (k >= 1 && n >= 1) rec(k, n - 1);
    return out;
}

/// Planar leaf order of the single coproduct comb of a (1,m)-graph and the
/// output each leaf reaches, if the graph is surjection-like.
inline std::optional<std::vector<int>> surjection_sequence(const Graph& g) {
    if (g.n != 1 || g.m < 1) return std::nullopt;
    if (g.count(Kind::Counit) > 0) return std::nullopt;
    GraphView gv(g);
    std::vector<Source> leaves;
    const Sink& first = gv.consumer(Source{kExternal, 0});
    int ncop = 0;
    if (gv.sink_is(first, Kind::Coproduct)) {
        std::vector<int> verts;
        gv.coproduct_tree(first.vertex, leaves, verts);
        if (!gv.coproduct_left_comb(first.vertex)) return std::nullopt;
        ncop = static_cast<int>(verts.size());
    } else {
        leaves.push_back(Source{kExternal, 0});
    }
    if (ncop != g.count(Kind::Coproduct)) return std::nullopt;
    std::map<Source, int> leaf_index;
    for (std::size_t i = 0; i < leaves.size(); ++i) leaf_index[leaves[i]] = static_cast<int>(i);
    std::vector<int> seq(leaves.size(), -1);
    int products_seen = 0;
    for (int j = 0; j < g.m; ++j) {
        const Source& s = g.outputs[j];
        std::vector<Source> tl;
        if (!s.external() && g.kinds[s.vertex] == Kind::Product) {
            std::vector<int> verts;
            gv.product_tree(s.vertex, tl, verts);
            if (!gv.product_left_comb(s.vertex)) return std::nullopt;
            products_seen += static_cast<int>(verts.size());
        } else {
            tl.push_back(s);
        }
        int prev = -1;
        for (const Source& l : tl) {
            auto it = leaf_index.find(l);
            if (it == leaf_index.end() || it->second <= prev) return std::nullopt;
            prev = it->second;
            seq[it->second] = j + 1;
        }
    }
    if (products_seen != g.count(Kind::Product)) return std::nullopt;
    for (int x : seq)
        if (x < 0) return std::nullopt;
    return seq;
}

inline bool is_surjection_like(const Graph& g) { return surjection_sequence(g).has_value(); }

/// Whether product p is fed by both outputs of a single coproduct.
inline bool contains_involution(const Graph& g) {
    GraphView gv(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.kinds[v] != Kind::Coproduct) continue;
        const Sink& a = gv.consumer(Source{v, 0});
        const Sink& b = gv.consumer(Source{v, 1});
        if (gv.sink_is(a, Kind::Product) && a.vertex == b.vertex) return true;
    }
    return false;
}

}  // namespace einfty
