#pragma once

// The free prop on the three generators counit (1,0)_0, coproduct (1,2)_0
// and product (2,1)_1.
//
// A basis element is an isomorphism class of labeled directed acyclic
// graphs whose vertices carry generators. The stored representative is
// canonical: vertices are numbered in breadth-first discovery order starting
// from the external inputs. Because the product has odd degree, a basis graph
// also stands for an ordering of its product vertices; that ordering is
// always the canonical vertex order, and every operation that builds a graph
// with some other ordering multiplies by the sign of the reordering.

#include "einfty/coefficients.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace einfty {

enum class Kind : std::uint8_t { Counit = 0, Coproduct = 1, Product = 2 };

constexpr int in_arity(Kind k) { return k == Kind::Product ? 2 : 1; }
constexpr int out_arity(Kind k) {
    return k == Kind::Counit ? 0 : (k == Kind::Coproduct ? 2 : 1);
}
constexpr int kind_degree(Kind k) { return k == Kind::Product ? 1 : 0; }

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Counit: return "counit";
        case Kind::Coproduct: return "coproduct";
        case Kind::Product: return "product";
    }
    return "?";
}

inline Kind parse_kind(const std::string& s) {
    if (s == "counit") return Kind::Counit;
    if (s == "coproduct") return Kind::Coproduct;
    if (s == "product") return Kind::Product;
    throw std::invalid_argument("unknown generator '" + s + "'");
}

inline constexpr int kExternal = -1;
inline constexpr int kUnused = -2;

/// Origin of a wire: an external input (vertex == kExternal, port = label)
/// or an output port of a vertex. Ports and labels are 0-based internally.
struct Source {
    int vertex = kUnused;
    int port = kUnused;
    auto operator<=>(const Source&) const = default;
    bool external() const { return vertex == kExternal; }
};

/// End of a wire: an external output or an input port of a vertex.
struct Sink {
    int vertex = kUnused;
    int port = kUnused;
    auto operator<=>(const Sink&) const = default;
    bool external() const { return vertex == kExternal; }
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An (n,m)-graph. Wiring is stored on the sink side: every vertex input
/// port and every external output records the source feeding it.
struct Graph {
    int n = 0;
    int m = 0;
    std::vector<Kind> kinds;
    std::vector<std::array<Source, 2>> inputs;
    std::vector<Source> outputs;

    auto operator<=>(const Graph&) const = default;

    int vertex_count() const { return static_cast<int>(kinds.size()); }
    int degree() const {
        return static_cast<int>(std::count(kinds.begin(), kinds.end(), Kind::Product));
    }
    int count(Kind k) const {
        return static_cast<int>(std::count(kinds.begin(), kinds.end(), k));
    }
    int add_vertex(Kind k) {
        kinds.push_back(k);
        inputs.push_back({Source{}, Source{}});
        return vertex_count() - 1;
    }
    const Source& source_of(const Sink& s) const {
        return s.external() ? outputs[s.port] : inputs[s.vertex][s.port];
    }
    void connect(const Source& src, const Sink& dst) {
        if (dst.external())
            outputs[dst.port] = src;
        else
            inputs[dst.vertex][dst.port] = src;
    }
};

inline int degree(const Graph& g) { return g.degree(); }

/// For each source, the sink it feeds.
class ConsumerTable {
public:
    explicit ConsumerTable(const Graph& g) : ext_(g.n), vout_(g.kinds.size()) {
        auto record = [&](const Source& s, Sink k) {
            Sink* slot = lookup(s, g);
            if (!slot) throw GraphError(describe(k) + " is fed by a nonexistent " + describe(s));
            if (slot->vertex != kUnused)
                throw GraphError(describe(s) + " is wired twice (" + describe(*slot) + " and " +
                                 describe(k) + ")");
            *slot = k;
        };
        for (int v = 0; v < g.vertex_count(); ++v)
            for (int p = 0; p < in_arity(g.kinds[v]); ++p) record(g.inputs[v][p], Sink{v, p});
        for (int j = 0; j < g.m; ++j) record(g.outputs[j], Sink{kExternal, j});
        for (int i = 0; i < g.n; ++i)
            if (ext_[i].vertex == kUnused) throw GraphError("dangling " + describe(Source{kExternal, i}));
        for (int v = 0; v < g.vertex_count(); ++v)
            for (int p = 0; p < out_arity(g.kinds[v]); ++p)
                if (vout_[v][p].vertex == kUnused) throw GraphError("dangling " + describe(Source{v, p}));
    }

    const Sink& operator[](const Source& s) const {
        return s.external() ? ext_[s.port] : vout_[s.vertex][s.port];
    }

    static std::string describe(const Source& s) {
        if (s.external()) return "external input " + std::to_string(s.port + 1);
        return "output port " + std::to_string(s.port + 1) + " of vertex " + std::to_string(s.vertex);
    }
    static std::string describe(const Sink& s) {
        if (s.external()) return "external output " + std::to_string(s.port + 1);
        return "input port " + std::to_string(s.port + 1) + " of vertex " + std::to_string(s.vertex);
    }

private:
    Sink* lookup(const Source& s, const Graph& g) {
        if (s.external()) return (s.port >= 0 && s.port < g.n) ? &ext_[s.port] : nullptr;
        if (s.vertex < 0 || s.vertex >= g.vertex_count()) return nullptr;
        if (s.port < 0 || s.port >= out_arity(g.kinds[s.vertex])) return nullptr;
        return &vout_[s.vertex][s.port];
    }
    std::vector<Sink> ext_;
    std::vector<std::array<Sink, 2>> vout_;
};

/// Topological order of the vertices (Kahn's algorithm). Among available
/// vertices the one with the smallest index is taken first unless a random
/// generator is supplied. Throws GraphError on a directed cycle.
template <class Rng = std::mt19937_64>
std::vector<int> topological_order(const Graph& g, Rng* rng = nullptr) {
    const int V = g.vertex_count();
    std::vector<int> pending(V, 0);
    std::vector<std::vector<int>> succ(V);
    for (int v = 0; v < V; ++v)
        for (int p = 0; p < in_arity(g.kinds[v]); ++p) {
            const Source& s = g.inputs[v][p];
            if (!s.external()) {
                ++pending[v];
                succ[s.vertex].push_back(v);
            }
        }
    std::vector<int> ready, order;
    for (int v = 0; v < V; ++v)
        if (pending[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        std::size_t pick = 0;
        if (rng) {
            pick = std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(*rng);
        } else {
            pick = static_cast<std::size_t>(std::min_element(ready.begin(), ready.end()) - ready.begin());
        }
        int v = ready[pick];
        ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
        order.push_back(v);
        for (int w : succ[v])
            if (--pending[w] == 0) ready.push_back(w);
    }
    if (static_cast<int>(order.size()) != V) {
        for (int v = 0; v < V; ++v)
            if (pending[v] > 0)
                throw GraphError("directed cycle through input port of vertex " + std::to_string(v));
    }
    return order;
}

/// Checks arities, the perfect matching of half-edges and acyclicity.
inline void validate(const Graph& g) {
    if (g.n < 0 || g.m < 0) throw GraphError("negative arity");
    if (g.inputs.size() != g.kinds.size()) throw GraphError("vertex table size mismatch");
    if (static_cast<int>(g.outputs.size()) != g.m) throw GraphError("output table size mismatch");
    ConsumerTable table(g);
    (void)table;
    topological_order(g);
}

struct SignedGraph {
    Graph graph;
    int sign = 1;
};

/// Canonical representative of the isomorphism class of `raw` together with
/// the sign relating the product ordering of `raw` (its vertex order) to the
/// canonical one.
inline SignedGraph canonicalize_signed(const Graph& raw) {
    validate(raw);
    ConsumerTable consumers(raw);
    const int V = raw.vertex_count();
    std::vector<int> order;
    std::vector<int> new_index(V, -1);
    std::deque<Source> queue;
    for (int i = 0; i < raw.n; ++i) queue.push_back(Source{kExternal, i});
    while (!queue.empty()) {
        Source s = queue.front();
        queue.pop_front();
        const Sink& k = consumers[s];
        if (k.external() || new_index[k.vertex] >= 0) continue;
        new_index[k.vertex] = static_cast<int>(order.size());
        order.push_back(k.vertex);
        for (int p = 0; p < out_arity(raw.kinds[k.vertex]); ++p) queue.push_back(Source{k.vertex, p});
    }
    if (static_cast<int>(order.size()) != V) {
        for (int v = 0; v < V; ++v)
            if (new_index[v] < 0)
                throw GraphError("vertex " + std::to_string(v) + " is not reachable from the external inputs");
    }
    auto remap = [&](const Source& s) {
        return s.external() ? s : Source{new_index[s.vertex], s.port};
    };
    SignedGraph out;
    Graph& g = out.graph;
    g.n = raw.n;
    g.m = raw.m;
    g.kinds.reserve(V);
    g.inputs.reserve(V);
    for (int v : order) {
        g.kinds.push_back(raw.kinds[v]);
        std::array<Source, 2> in{Source{}, Source{}};
        for (int p = 0; p < in_arity(raw.kinds[v]); ++p) in[p] = remap(raw.inputs[v][p]);
        g.inputs.push_back(in);
    }
    g.outputs.reserve(raw.m);
    for (const Source& s : raw.outputs) g.outputs.push_back(remap(s));
    std::vector<int> product_positions;
    for (int v = 0; v < V; ++v)
        if (raw.kinds[v] == Kind::Product) product_positions.push_back(new_index[v]);
    out.sign = sign_of_parity(inversion_parity(product_positions));
    return out;
}

inline Graph canonicalize(const Graph& raw) { return canonicalize_signed(raw).graph; }

inline Graph identity_term(int n) {
    if (n < 0) throw GraphError("negative arity");
    Graph g;
    g.n = g.m = n;
    for (int i = 0; i < n; ++i) g.outputs.push_back(Source{kExternal, i});
    return g;
}

/// The single-vertex graph of a generator.
inline Graph generator(Kind k) {
    Graph g;
    g.n = in_arity(k);
    g.m = out_arity(k);
    int v = g.add_vertex(k);
    for (int p = 0; p < g.n; ++p) g.inputs[v][p] = Source{kExternal, p};
    for (int p = 0; p < g.m; ++p) g.outputs.push_back(Source{v, p});
    return g;
}

inline Graph counit_graph() { return generator(Kind::Counit); }
inline Graph coproduct_graph() { return generator(Kind::Coproduct); }
inline Graph product_graph() { return generator(Kind::Product); }

/// Disjoint union; b's labels are shifted past a's. Vertex order: a then b.
inline Graph horizontal_raw(const Graph& a, const Graph& b) {
    Graph g = a;
    const int off = a.vertex_count();
    auto shift = [&](Source s) {
        if (s.external())
            s.port += a.n;
        else if (s.vertex != kUnused)
            s.vertex += off;
        return s;
    };
    for (int v = 0; v < b.vertex_count(); ++v) {
        g.kinds.push_back(b.kinds[v]);
        g.inputs.push_back({shift(b.inputs[v][0]), shift(b.inputs[v][1])});
    }
    for (const Source& s : b.outputs) g.outputs.push_back(shift(s));
    g.n = a.n + b.n;
    g.m = a.m + b.m;
    return g;
}

/// Grafts output j of `bottom` onto input j of `top`. Vertex order: top then
/// bottom, matching the convention that a composite carries its top factor's
/// decorations first.
inline Graph vertical_raw(const Graph& top, const Graph& bottom) {
    if (top.n != bottom.m)
        throw GraphError("vertical composition arity mismatch: top has " + std::to_string(top.n) +
                         " inputs, bottom has " + std::to_string(bottom.m) + " outputs");
    Graph g;
    g.n = bottom.n;
    g.m = top.m;
    const int off = top.vertex_count();
    auto from_bottom = [&](Source s) {
        if (!s.external() && s.vertex != kUnused) s.vertex += off;
        return s;
    };
    auto from_top = [&](Source s) {
        if (s.external()) return from_bottom(bottom.outputs[s.port]);
        return s;
    };
    for (int v = 0; v < top.vertex_count(); ++v) {
        g.kinds.push_back(top.kinds[v]);
        std::array<Source, 2> in{Source{}, Source{}};
        for (int p = 0; p < in_arity(top.kinds[v]); ++p) in[p] = from_top(top.inputs[v][p]);
        g.inputs.push_back(in);
    }
    for (int v = 0; v < bottom.vertex_count(); ++v) {
        g.kinds.push_back(bottom.kinds[v]);
        g.inputs.push_back({from_bottom(bottom.inputs[v][0]), from_bottom(bottom.inputs[v][1])});
    }
    for (const Source& s : top.outputs) g.outputs.push_back(from_top(s));
    return g;
}

/// Elements of the free prop: linear combinations of canonical graphs.
using PropElement = LinCombo<Graph>;

/// The element sign * canonical(raw).
inline PropElement element(Ring r, const Graph& raw, const Integer& coeff = 1) {
    SignedGraph c = canonicalize_signed(raw);
    return PropElement(r, c.graph, coeff * c.sign);
}

inline void add_raw(PropElement& acc, const Graph& raw, const Integer& coeff) {
    SignedGraph c = canonicalize_signed(raw);
    acc.add(std::move(c.graph), coeff * c.sign);
}

inline PropElement horizontal_compose(const PropElement& a, const PropElement& b) {
    if (a.ring() != b.ring()) throw RingMismatch();
    PropElement out(a.ring());
    for (const auto& [ga, ca] : a)
        for (const auto& [gb, cb] : b) add_raw(out, horizontal_raw(ga, gb), ca * cb);
    return out;
}

inline PropElement vertical_compose(const PropElement& top, const PropElement& bottom) {
    if (top.ring() != bottom.ring()) throw RingMismatch();
    PropElement out(top.ring());
    for (const auto& [gt, ct] : top)
        for (const auto& [gb, cb] : bottom) add_raw(out, vertical_raw(gt, gb), ct * cb);
    return out;
}

/// Relabels external legs: input i becomes input sigma[i], output j becomes
/// output tau[j]. act(s, t, act(s', t', x)) == act(s*s', t*t', x).
inline Graph act_raw(const Permutation& sigma, const Permutation& tau, const Graph& g) {
    if (static_cast<int>(sigma.size()) != g.n || static_cast<int>(tau.size()) != g.m ||
        !is_permutation(sigma) || !is_permutation(tau))
        throw GraphError("permutation size does not match biarity");
    Graph out = g;
    auto relabel = [&](Source s) {
        if (s.external()) s.port = sigma[s.port];
        return s;
    };
    for (auto& in : out.inputs)
        for (auto& s : in) s = relabel(s);
    for (int j = 0; j < g.m; ++j) out.outputs[tau[j]] = relabel(g.outputs[j]);
    return out;
}

inline PropElement act(const Permutation& sigma, const Permutation& tau, const PropElement& x) {
    PropElement out(x.ring());
    for (const auto& [g, c] : x) add_raw(out, act_raw(sigma, tau, g), c);
    return out;
}

/// The derivation extending d(counit) = d(coproduct) = 0 and
/// d(product) = (counit (x) id) - (id (x) counit). The summand for the k-th
/// product vertex in canonical order carries (-1)^k.
inline PropElement differential(const Graph& g, Ring r) {
    PropElement out(r);
    int k = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.kinds[v] != Kind::Product) continue;
        const Source a = g.inputs[v][0];
        const Source b = g.inputs[v][1];
        const Sink target = ConsumerTable(g)[Source{v, 0}];
        const Integer sgn = (k % 2) ? -1 : 1;
        for (int side = 0; side < 2; ++side) {
            Graph h = g;
            h.kinds[v] = Kind::Counit;
            h.inputs[v] = {side == 0 ? a : b, Source{}};
            h.connect(side == 0 ? b : a, target);
            add_raw(out, h, side == 0 ? sgn : Integer(-sgn));
        }
        ++k;
    }
    return out;
}

inline PropElement differential(const PropElement& x) {
    PropElement out(x.ring());
    for (const auto& [g, c] : x) out.axpy(c, differential(g, x.ring()));
    return out;
}

/// Component of homogeneous degree d.
inline PropElement degree_part(const PropElement& x, int d) {
    PropElement out(x.ring());
    for (const auto& [g, c] : x)
        if (g.degree() == d) out.add(g, c);
    return out;
}

// ---------------------------------------------------------------------------
// Random terms for property tests and verification suites.

struct RandomGraphOptions {
    int max_inputs = 2;
    int max_vertices = 6;
    int min_vertices = 0;
    int min_outputs = 0;
    int min_inputs = 1;
    /// Relative weights of counit, coproduct and product.
    std::array<int, 3> weights{1, 3, 3};
};

/// Grows a graph vertex by vertex, each new vertex consuming open wires.
template <class Rng>
Graph random_graph(Rng& rng, const RandomGraphOptions& opt = {}) {
    for (;;) {
        Graph g;
        g.n = std::uniform_int_distribution<int>(opt.min_inputs, opt.max_inputs)(rng);
        std::vector<Source> open;
        for (int i = 0; i < g.n; ++i) open.push_back(Source{kExternal, i});
        int target = std::uniform_int_distribution<int>(opt.min_vertices, opt.max_vertices)(rng);
        std::discrete_distribution<int> pick_kind(opt.weights.begin(), opt.weights.end());
        for (int step = 0; step < target * 4 && g.vertex_count() < target; ++step) {
            Kind k = static_cast<Kind>(pick_kind(rng));
            if (static_cast<int>(open.size()) < in_arity(k)) continue;
            if (k == Kind::Counit && static_cast<int>(open.size()) <= opt.min_outputs) continue;
            int v = g.add_vertex(k);
            for (int p = 0; p < in_arity(k); ++p) {
                std::size_t idx = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
                g.inputs[v][p] = open[idx];
                open.erase(open.begin() + static_cast<std::ptrdiff_t>(idx));
            }
            for (int p = 0; p < out_arity(k); ++p) open.push_back(Source{v, p});
        }
        if (static_cast<int>(open.size()) < opt.min_outputs) continue;
        if (g.vertex_count() < opt.min_vertices) continue;
        std::shuffle(open.begin(), open.end(), rng);
        g.m = static_cast<int>(open.size());
        g.outputs = open;
        return canonicalize(g);
    }
}

/// Bounds for exhaustive enumeration.
struct EnumerationBounds {
    int max_counits = 0;
    int max_coproducts = 0;
    int max_products = 0;
    int max_vertices = 1 << 20;
    /// Counits only on external input wires.
    bool counits_on_inputs_only = false;
};

/// Every canonical (n,m)-graph within the bounds (m < 0: any number of
/// outputs), grown vertex by vertex
/// from the open wires. Sorted.
inline std::vector<Graph> enumerate_graphs(int n, int m, const EnumerationBounds& b) {
    std::set<Graph> seen;
    std::set<Graph> found;
    std::vector<int> perm;
    std::function<void(const Graph&)> visit = [&](const Graph& g) {
        const int open = g.m;
        if (open == m || m < 0) {
            perm.resize(open);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                Graph h = g;
                for (int j = 0; j < open; ++j) h.outputs[j] = g.outputs[perm[j]];
                found.insert(canonicalize(h));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        if (g.vertex_count() >= b.max_vertices) return;
        auto grow = [&](Kind k, const std::vector<int>& used) {
            Graph h = g;
            int v = h.add_vertex(k);
            std::vector<Source> rest;
            for (int p = 0; p < static_cast<int>(used.size()); ++p) h.inputs[v][p] = g.outputs[used[p]];
            for (int j = 0; j < open; ++j)
                if (std::find(used.begin(), used.end(), j) == used.end()) rest.push_back(g.outputs[j]);
            for (int p = 0; p < out_arity(k); ++p) rest.push_back(Source{v, p});
            h.outputs = rest;
            h.m = static_cast<int>(rest.size());
            Graph c = canonicalize(h);
            if (seen.insert(c).second) visit(c);
        };
        if (g.count(Kind::Counit) < b.max_counits)
            for (int j = 0; j < open; ++j)
                if (!b.counits_on_inputs_only || g.outputs[j].external()) grow(Kind::Counit, {j});
        if (g.count(Kind::Coproduct) < b.max_coproducts)
            for (int j = 0; j < open; ++j) grow(Kind::Coproduct, {j});
        if (g.count(Kind::Product) < b.max_products)
            for (int j = 0; j < open; ++j)
                for (int k = 0; k < open; ++k)
                    if (j != k) grow(Kind::Product, {j, k});
    };
    Graph start = identity_term(n);
    seen.insert(start);
    visit(start);
    return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// JSON. Half-edges: ["in",i], ["out",j], ["v",k,"in"|"out",p] with i, j, p
// counted from 1 and k the vertex index. Wires are [source, sink] pairs,
// written in sorted order.

inline nlohmann::json source_to_json(const Source& s) {
    if (s.external()) return nlohmann::json::array({"in", s.port + 1});
    return nlohmann::json::array({"v", s.vertex, "out", s.port + 1});
}

inline nlohmann::json sink_to_json(const Sink& s) {
    if (s.external()) return nlohmann::json::array({"out", s.port + 1});
    return nlohmann::json::array({"v", s.vertex, "in", s.port + 1});
}

inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json vertices = nlohmann::json::array();
    for (Kind k : g.kinds) vertices.push_back(kind_name(k));
    std::vector<std::pair<Source, Sink>> wires;
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int p = 0; p < in_arity(g.kinds[v]); ++p) wires.emplace_back(g.inputs[v][p], Sink{v, p});
    for (int j = 0; j < g.m; ++j) wires.emplace_back(g.outputs[j], Sink{kExternal, j});
    std::sort(wires.begin(), wires.end());
    nlohmann::json w = nlohmann::json::array();
    for (const auto& [a, b] : wires) w.push_back(nlohmann::json::array({source_to_json(a), sink_to_json(b)}));
    return {{"n", g.n}, {"m", g.m}, {"vertices", vertices}, {"wires", w}};
}

/// Parses a graph; the result is validated but not canonicalized.
inline Graph graph_from_json_raw(const nlohmann::json& j) {
    auto fail = [](const std::string& msg) { throw GraphError("graph JSON: " + msg); };
    if (!j.is_object()) fail("expected an object");
    Graph g;
    g.n = j.at("n").get<int>();
    g.m = j.at("m").get<int>();
    if (g.n < 0 || g.m < 0) fail("negative arity");
    for (const auto& k : j.at("vertices")) g.add_vertex(parse_kind(k.get<std::string>()));
    g.outputs.assign(g.m, Source{});
    struct End {
        bool is_source;
        Source src;
        Sink snk;
    };
    auto half = [&](const nlohmann::json& h) -> End {
        if (!h.is_array() || h.empty()) fail("malformed half-edge " + h.dump());
        const std::string tag = h[0].get<std::string>();
        if (tag == "in" && h.size() == 2) {
            int i = h[1].get<int>();
            if (i < 1 || i > g.n) fail("external input out of range in " + h.dump());
            return {true, Source{kExternal, i - 1}, {}};
        }
        if (tag == "out" && h.size() == 2) {
            int o = h[1].get<int>();
            if (o < 1 || o > g.m) fail("external output out of range in " + h.dump());
            return {false, {}, Sink{kExternal, o - 1}};
        }
        if (tag == "v" && h.size() == 4) {
            int k = h[1].get<int>();
            int p = h[3].get<int>();
            if (k < 0 || k >= g.vertex_count()) fail("vertex index out of range in " + h.dump());
            const std::string dir = h[2].get<std::string>();
            if (dir == "in") {
                if (p < 1 || p > in_arity(g.kinds[k])) fail("input port out of range in " + h.dump());
                return {false, {}, Sink{k, p - 1}};
            }
            if (dir == "out") {
                if (p < 1 || p > out_arity(g.kinds[k])) fail("output port out of range in " + h.dump());
                return {true, Source{k, p - 1}, {}};
            }
        }
        fail("malformed half-edge " + h.dump());
        return {};
    };
    for (const auto& w : j.at("wires")) {
        if (!w.is_array() || w.size() != 2) fail("each wire joins two half-edges");
        End a = half(w[0]), b = half(w[1]);
        if (a.is_source == b.is_source) fail("wire " + w.dump() + " does not join a source to a sink");
        const Source& src = a.is_source ? a.src : b.src;
        const Sink& snk = a.is_source ? b.snk : a.snk;
        if (g.source_of(snk).vertex != kUnused) fail(ConsumerTable::describe(snk) + " is wired twice");
        g.connect(src, snk);
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int p = 0; p < in_arity(g.kinds[v]); ++p)
            if (g.inputs[v][p].vertex == kUnused) fail("dangling " + ConsumerTable::describe(Sink{v, p}));
    for (int o = 0; o < g.m; ++o)
        if (g.outputs[o].vertex == kUnused) fail("dangling " + ConsumerTable::describe(Sink{kExternal, o}));
    validate(g);
    return g;
}

inline nlohmann::json element_to_json(const PropElement& x) { return lin_to_json(x, graph_to_json); }

/// Parses either a bare graph (coefficient 1) or a linear combination.
inline PropElement element_from_json(const nlohmann::json& j, Ring default_ring = Ring::Z) {
    if (j.is_object() && j.contains("terms")) {
        PropElement raw = lin_from_json<Graph>(j, graph_from_json_raw);
        PropElement out(raw.ring());
        for (const auto& [g, c] : raw) add_raw(out, g, c);
        return out;
    }
    return element(default_ring, graph_from_json_raw(j));
}

/// A short human-readable rendering, e.g. "(1,2)[coproduct;...]".
inline std::string describe(const Graph& g) {
    auto src = [](const Source& s) {
        std::ostringstream os;
        if (s.external())
            os << "i" << s.port + 1;
        else
            os << "v" << s.vertex << "." << s.port + 1;
        return os.str();
    };
    std::ostringstream os;
    os << "(" << g.n << "," << g.m << ")[";
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (v) os << "; ";
        os << "v" << v << "=" << kind_name(g.kinds[v]) << "(";
        for (int p = 0; p < in_arity(g.kinds[v]); ++p) os << (p ? "," : "") << src(g.inputs[v][p]);
        os << ")";
    }
    os << " | out:";
    for (const Source& s : g.outputs) os << " " << src(s);
    os << "]";
    return os.str();
}

}  // namespace einfty
