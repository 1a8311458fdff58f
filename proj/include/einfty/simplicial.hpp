#pragma once

// Normalized chains on standard simplices and on finite simplicial sets, and
// the action of graph terms on them.
//
// A simplex of the standard simplex is its strictly increasing vertex list.
// Chains of tensor arity k are linear combinations of words of k simplices.
// Two gradings are used: the usual one (dimension = #vertices - 1) and the
// augmented one, where the empty simplex is allowed and the degree of a
// simplex is its number of vertices.

#include "einfty/coefficients.hpp"
#include "einfty/graph_terms.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace einfty {

using Simplex = std::vector<int>;
using Tensor = std::vector<Simplex>;
using Chain = LinCombo<Tensor>;

enum class Grading { Normalized, Augmented };

inline int simplex_degree(const Simplex& s, Grading gr) {
    return gr == Grading::Normalized ? static_cast<int>(s.size()) - 1 : static_cast<int>(s.size());
}

inline int tensor_degree(const Tensor& t, Grading gr) {
    int d = 0;
    for (const auto& s : t) d += simplex_degree(s, gr);
    return d;
}

inline Chain chain_of(Ring r, Tensor t, const Integer& c = 1) { return Chain(r, std::move(t), c); }

/// All increasing q-simplices of the standard d-simplex (q = -1 gives the empty simplex).
inline std::vector<Simplex> faces_of_dimension(int d, int q) {
    std::vector<Simplex> out;
    if (q < -1 || q > d) return out;
    Simplex cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == q + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= d; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

inline std::vector<Simplex> all_simplices(int d, Grading gr = Grading::Normalized) {
    std::vector<Simplex> out;
    for (int q = gr == Grading::Augmented ? -1 : 0; q <= d; ++q) {
        auto f = faces_of_dimension(d, q);
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

inline Simplex fundamental_simplex(int d) {
    Simplex s(d + 1);
    for (int i = 0; i <= d; ++i) s[i] = i;
    return s;
}

/// Alternating sum of faces. In the augmented grading a vertex has the empty
/// simplex as its boundary.
inline LinCombo<Simplex> simplex_boundary(const Simplex& s, Ring r, Grading gr = Grading::Normalized) {
    LinCombo<Simplex> out(r);
    if (s.empty()) return out;
    if (s.size() == 1 && gr == Grading::Normalized) return out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        out.add(std::move(f), (i % 2) ? -1 : 1);
    }
    return out;
}

/// Boundary of tensor words with the Koszul rule.
inline Chain boundary(const Chain& x, Grading gr = Grading::Normalized) {
    Chain out(x.ring());
    for (const auto& [t, c] : x) {
        int passed = 0;
        for (std::size_t k = 0; k < t.size(); ++k) {
            for (const auto& [f, fc] : simplex_boundary(t[k], x.ring(), gr)) {
                Tensor u = t;
                u[k] = f;
                out.add(std::move(u), (passed % 2 ? -1 : 1) * c * fc);
            }
            passed += simplex_degree(t[k], gr);
        }
    }
    return out;
}

// Generator maps on single words. Each returns signed output words.

using WordTerms = std::vector<std::pair<Integer, Tensor>>;

/// Alexander-Whitney diagonal: sum of front face (x) back face.
inline WordTerms aw_terms(const Simplex& s) {
    WordTerms out;
    for (std::size_t i = 0; i < s.size(); ++i)
        out.push_back({1, Tensor{Simplex(s.begin(), s.begin() + i + 1), Simplex(s.begin() + i, s.end())}});
    return out;
}

inline Chain aw(const Simplex& s, Ring r = Ring::Z) {
    Chain out(r);
    for (auto& [c, t] : aw_terms(s)) out.add(t, c);
    return out;
}

/// Sorted union with the sign of the sorting permutation, or nothing when the
/// simplices meet.
inline std::optional<std::pair<int, Simplex>> signed_union(const Simplex& a, const Simplex& b) {
    Simplex u = a;
    u.insert(u.end(), b.begin(), b.end());
    int parity = inversion_parity(u);
    std::sort(u.begin(), u.end());
    if (std::adjacent_find(u.begin(), u.end()) != u.end()) return std::nullopt;
    return std::make_pair(sign_of_parity(parity), u);
}

/// Join: (-1)^{dim a} sign(pi) [sorted union], zero if a and b share a vertex.
inline WordTerms join_terms(const Simplex& a, const Simplex& b) {
    auto u = signed_union(a, b);
    if (!u) return {};
    int sign = u->first * ((a.size() - 1) % 2 ? -1 : 1);
    return {{sign, Tensor{u->second}}};
}

inline Chain join(const Simplex& a, const Simplex& b, Ring r = Ring::Z) {
    Chain out(r);
    for (auto& [c, t] : join_terms(a, b)) out.add(t, c);
    return out;
}

inline Integer augment(const Simplex& s) { return s.size() == 1 ? 1 : 0; }

inline WordTerms augment_terms(const Simplex& s) {
    if (s.size() != 1) return {};
    return {{1, Tensor{}}};
}

// Opposite maps on augmented chains.

inline WordTerms aug_counit_terms() { return {{1, Tensor{Simplex{}}}}; }

inline WordTerms aug_coproduct_terms(const Simplex& a, const Simplex& b) {
    auto u = signed_union(a, b);
    if (!u) return {};
    return {{u->first, Tensor{u->second}}};
}

inline WordTerms aug_product_terms(const Simplex& s) {
    WordTerms out;
    for (std::size_t i = 0; i < s.size(); ++i)
        out.push_back({(i % 2) ? -1 : 1,
                       Tensor{Simplex(s.begin(), s.begin() + i + 1), Simplex(s.begin() + i, s.end())}});
    return out;
}

namespace detail {

/// Koszul sign of reordering a word so that position order[k] lands at k.
inline int koszul_sign(const Tensor& w, const std::vector<int>& order, Grading gr) {
    int parity = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (order[i] > order[j])
                parity ^= (simplex_degree(w[order[i]], gr) & simplex_degree(w[order[j]], gr) & 1);
    return sign_of_parity(parity);
}

/// Sign relating the order in which odd vertices were applied to the
/// canonical orientation: the applied order is read backwards.
inline int orientation_sign(const Graph& g, const std::vector<int>& applied) {
    std::vector<int> rev;
    for (auto it = applied.rbegin(); it != applied.rend(); ++it)
        if (g.kinds[*it] == Kind::Product) rev.push_back(*it);
    return sign_of_parity(inversion_parity(rev));
}

/// Runs the graph on words. Wires are identified by their source. In the
/// forward direction vertices consume their input wires and produce output
/// wires; in the opposite direction it is the reverse.
template <class Apply>
Chain run(const Graph& g, const Chain& x, bool opposite, const std::vector<int>& order, Grading gr,
          Apply&& apply) {
    std::vector<Source> open;
    if (!opposite)
        for (int i = 0; i < g.n; ++i) open.push_back(Source{kExternal, i});
    else
        open = g.outputs;
    Chain state = x;
    for (int v : order) {
        std::vector<Source> consumed, produced;
        const Kind k = g.kinds[v];
        if (!opposite) {
            for (int p = 0; p < in_arity(k); ++p) consumed.push_back(g.inputs[v][p]);
            for (int p = 0; p < out_arity(k); ++p) produced.push_back(Source{v, p});
        } else {
            for (int p = 0; p < out_arity(k); ++p) consumed.push_back(Source{v, p});
            for (int p = 0; p < in_arity(k); ++p) produced.push_back(g.inputs[v][p]);
        }
        std::vector<int> perm;
        for (const Source& s : consumed)
            perm.push_back(static_cast<int>(std::find(open.begin(), open.end(), s) - open.begin()));
        std::vector<Source> rest;
        for (int i = 0; i < static_cast<int>(open.size()); ++i)
            if (std::find(perm.begin(), perm.end(), i) == perm.end()) {
                rest.push_back(open[i]);
            }
        std::vector<int> full = perm;
        for (int i = 0; i < static_cast<int>(open.size()); ++i)
            if (std::find(perm.begin(), perm.end(), i) == perm.end()) full.push_back(i);
        Chain next(state.ring());
        for (const auto& [w, c] : state) {
            int sign = koszul_sign(w, full, gr);
            Tensor args;
            for (int i : perm) args.push_back(w[i]);
            Tensor tail;
            for (std::size_t i = perm.size(); i < full.size(); ++i) tail.push_back(w[full[i]]);
            for (auto& [gc, out] : apply(k, args)) {
                Tensor u = out;
                u.insert(u.end(), tail.begin(), tail.end());
                next.add(std::move(u), c * gc * sign);
            }
        }
        state = std::move(next);
        open = produced;
        open.insert(open.end(), rest.begin(), rest.end());
    }
    std::vector<Source> target;
    if (!opposite)
        target = g.outputs;
    else
        for (int i = 0; i < g.n; ++i) target.push_back(Source{kExternal, i});
    std::vector<int> full;
    for (const Source& s : target)
        full.push_back(static_cast<int>(std::find(open.begin(), open.end(), s) - open.begin()));
    Chain out(state.ring());
    const int osign = orientation_sign(g, order);
    for (const auto& [w, c] : state) {
        Tensor u;
        for (int i : full) u.push_back(w[i]);
        out.add(std::move(u), c * koszul_sign(w, full, gr) * osign);
    }
    return out;
}

inline WordTerms forward_generator(Kind k, const Tensor& args) {
    switch (k) {
        case Kind::Counit: return augment_terms(args[0]);
        case Kind::Coproduct: return aw_terms(args[0]);
        case Kind::Product: return join_terms(args[0], args[1]);
    }
    return {};
}

inline WordTerms opposite_generator(Kind k, const Tensor& args) {
    switch (k) {
        case Kind::Counit: return aug_counit_terms();
        case Kind::Coproduct: return aug_coproduct_terms(args[0], args[1]);
        case Kind::Product: return aug_product_terms(args[0]);
    }
    return {};
}

inline void check_words(const Chain& x, int arity, const char* what) {
    for (const auto& [w, c] : x)
        if (static_cast<int>(w.size()) != arity)
            throw GraphError(std::string(what) + ": tensor arity " + std::to_string(w.size()) +
                             " does not match " + std::to_string(arity));
}

}  // namespace detail

/// The chain operation of a single graph on words of arity g.n, using the
/// given topological order (or the default one).
inline Chain evaluate(const Graph& g, const Chain& x, const std::vector<int>* order = nullptr) {
    detail::check_words(x, g.n, "evaluate");
    std::vector<int> ord = order ? *order : topological_order(g);
    return detail::run(g, x, false, ord, Grading::Normalized, detail::forward_generator);
}

inline Chain evaluate(const PropElement& f, const Chain& x) {
    if (f.ring() != x.ring()) throw RingMismatch();
    Chain out(x.ring());
    for (const auto& [g, c] : f) out.axpy(c, evaluate(g, x));
    return out;
}

/// Opposite action on augmented chains: words of arity g.m go to words of
/// arity g.n. Vertices are applied from the outputs down.
inline Chain evaluate_augmented(const Graph& g, const Chain& x, const std::vector<int>* order = nullptr) {
    detail::check_words(x, g.m, "evaluate_augmented");
    std::vector<int> ord;
    if (order) {
        ord = *order;
    } else {
        ord = topological_order(g);
        std::reverse(ord.begin(), ord.end());
    }
    return detail::run(g, x, true, ord, Grading::Augmented, detail::opposite_generator);
}

inline Chain evaluate_augmented(const PropElement& f, const Chain& x) {
    if (f.ring() != x.ring()) throw RingMismatch();
    Chain out(x.ring());
    for (const auto& [g, c] : f) out.axpy(c, evaluate_augmented(g, x));
    return out;
}

/// Iterated diagonal (AW (x) id^{k-2}) ... AW, the left comb with k outputs.
inline Chain iterated_aw(const Simplex& s, int k, Ring r = Ring::Z) {
    Chain cur = chain_of(r, Tensor{s});
    for (int step = 1; step < k; ++step) {
        Chain next(r);
        for (const auto& [w, c] : cur)
            for (auto& [ac, t] : aw_terms(w[0])) {
                Tensor u = t;
                u.insert(u.end(), w.begin() + 1, w.end());
                next.add(std::move(u), c * ac);
            }
        cur = std::move(next);
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Finite simplicial sets.

/// A simplex of a simplicial set written as a degeneracy of a nondegenerate
/// cell: the composite cell o surj, where surj : [q] -> [dim cell] is monotone
/// and onto.
struct Restricted {
    int cell = -1;
    std::vector<int> surj;
    bool degenerate() const { return surj.size() != static_cast<std::size_t>(std::set<int>(surj.begin(), surj.end()).size()); }
};

/// Nondegenerate cells with face tables. A face entry names a cell together
/// with the degeneracy operators s_{j1} ... s_{jk} applied to it (empty when
/// the face is nondegenerate).
class SimplicialSet {
public:
    struct Face {
        int cell = -1;
        std::vector<int> degeneracies;
    };

    int add_cell(const std::string& name, int dim) {
        if (index_.count(name)) throw std::invalid_argument("duplicate cell '" + name + "'");
        int id = static_cast<int>(names_.size());
        names_.push_back(name);
        dims_.push_back(dim);
        faces_.emplace_back(dim > 0 ? dim + 1 : 0);
        index_[name] = id;
        if (static_cast<int>(by_dim_.size()) <= dim) by_dim_.resize(dim + 1);
        by_dim_[dim].push_back(id);
        return id;
    }
    void set_face(int cell, int i, Face f) { faces_.at(cell).at(i) = std::move(f); }

    int size() const { return static_cast<int>(names_.size()); }
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    int dim(int cell) const { return dims_.at(cell); }
    const std::string& name(int cell) const { return names_.at(cell); }
    int id(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown cell '" + name + "'");
        return it->second;
    }
    bool has(const std::string& name) const { return index_.count(name) > 0; }
    const std::vector<int>& cells(int dim) const {
        static const std::vector<int> none;
        return dim >= 0 && dim < static_cast<int>(by_dim_.size()) ? by_dim_[dim] : none;
    }
    const Face& face(int cell, int i) const { return faces_.at(cell).at(i); }

    /// Restriction of a cell along a monotone map [q] -> [dim cell].
    Restricted restrict(int cell, std::vector<int> f) const {
        for (;;) {
            const int p = dims_[cell];
            std::vector<char> hit(p + 1, 0);
            for (int v : f) hit.at(v) = 1;
            int missing = -1;
            for (int i = p; i >= 0; --i)
                if (!hit[i]) {
                    missing = i;
                    break;
                }
            if (missing < 0) return {cell, f};
            const Face& fc = faces_[cell][missing];
            std::vector<int> s = degeneracy_surjection(p - 1, fc.degeneracies);
            std::vector<int> nf;
            for (int v : f) nf.push_back(s[v < missing ? v : v - 1]);
            cell = fc.cell;
            f = std::move(nf);
        }
    }

    /// The face d_i of a cell as a restricted simplex.
    Restricted face_restricted(int cell, int i) const {
        std::vector<int> f;
        for (int k = 0; k <= dims_[cell]; ++k)
            if (k != i) f.push_back(k);
        return restrict(cell, f);
    }

    /// Checks d_i d_j = d_{j-1} d_i for i < j on every cell.
    void check_identities() const {
        for (int c = 0; c < size(); ++c) {
            const int p = dims_[c];
            if (p < 2) continue;
            for (int j = 0; j <= p; ++j)
                for (int i = 0; i < j; ++i) {
                    Restricted a = compose_face(face_restricted(c, j), i);
                    Restricted b = compose_face(face_restricted(c, i), j - 1);
                    if (a.cell != b.cell || a.surj != b.surj)
                        throw std::invalid_argument("simplicial identity fails on cell '" + names_[c] + "' (d" +
                                                    std::to_string(i) + " d" + std::to_string(j) + ")");
                }
        }
    }

    /// Surjection [q] -> [q - k] of the degeneracy word s_{j1} ... s_{jk}
    /// (s_{jk} applied first).
    static std::vector<int> degeneracy_surjection(int q, const std::vector<int>& word) {
        std::vector<int> s(q + 1);
        for (int k = 0; k <= q; ++k) s[k] = k;
        for (int j : word)
            for (int& v : s) v = v <= j ? v : v - 1;
        return s;
    }

private:
    Restricted compose_face(const Restricted& r, int i) const {
        std::vector<int> f;
        for (std::size_t k = 0; k < r.surj.size(); ++k)
            if (static_cast<int>(k) != i) f.push_back(r.surj[k]);
        return restrict(r.cell, f);
    }

    std::vector<std::string> names_;
    std::vector<int> dims_;
    std::vector<std::vector<Face>> faces_;
    std::vector<std::vector<int>> by_dim_;
    std::map<std::string, int> index_;
};

/// Ordered simplicial complex: simplices are vertex sets, listed in the order
/// of `vertices`. Faces of the given simplices are added automatically. Cells
/// are named by their vertex labels joined with commas.
inline SimplicialSet complex_from_simplices(const std::vector<std::string>& vertices,
                                            const std::vector<std::vector<std::string>>& simplices) {
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (pos.count(vertices[i])) throw std::invalid_argument("duplicate vertex '" + vertices[i] + "'");
        pos[vertices[i]] = static_cast<int>(i);
    }
    std::set<std::vector<int>> all;
    for (std::size_t i = 0; i < vertices.size(); ++i) all.insert({static_cast<int>(i)});
    for (const auto& s : simplices) {
        std::vector<int> idx;
        for (const auto& v : s) {
            auto it = pos.find(v);
            if (it == pos.end()) throw std::invalid_argument("simplex uses unknown vertex '" + v + "'");
            idx.push_back(it->second);
        }
        std::sort(idx.begin(), idx.end());
        if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
            throw std::invalid_argument("simplex repeats a vertex");
        const int k = static_cast<int>(idx.size());
        for (int mask = 1; mask < (1 << k); ++mask) {
            std::vector<int> sub;
            for (int b = 0; b < k; ++b)
                if (mask & (1 << b)) sub.push_back(idx[b]);
            all.insert(sub);
        }
    }
    auto label = [&](const std::vector<int>& s) {
        std::string out;
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + vertices[s[i]];
        return out;
    };
    std::vector<std::vector<int>> sorted(all.begin(), all.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    SimplicialSet X;
    for (const auto& s : sorted) X.add_cell(label(s), static_cast<int>(s.size()) - 1);
    for (const auto& s : sorted) {
        if (s.size() < 2) continue;
        int c = X.id(label(s));
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<int> f = s;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
            X.set_face(c, static_cast<int>(i), {X.id(label(f)), {}});
        }
    }
    return X;
}

inline SimplicialSet standard_simplex(int d) {
    std::vector<std::string> v;
    for (int i = 0; i <= d; ++i) v.push_back(std::to_string(i));
    return complex_from_simplices(v, {v});
}

/// Reads {"complex": {...}} or {"sset": {...}}. sset face entries are
/// [name, 0] for nondegenerate faces and [name, 1, [j1, ..., jk]] for the
/// degenerate face s_{j1} ... s_{jk}(name).
inline SimplicialSet simplicial_set_from_json(const nlohmann::json& j) {
    auto label = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (j.contains("complex")) {
        const auto& c = j.at("complex");
        std::vector<std::string> vertices;
        for (const auto& v : c.at("vertices")) vertices.push_back(label(v));
        std::vector<std::vector<std::string>> simplices;
        for (const auto& s : c.at("simplices")) {
            std::vector<std::string> sv;
            for (const auto& v : s) sv.push_back(label(v));
            simplices.push_back(sv);
        }
        return complex_from_simplices(vertices, simplices);
    }
    if (j.contains("sset")) {
        const auto& s = j.at("sset");
        SimplicialSet X;
        std::vector<std::pair<int, std::string>> cells;
        for (const auto& [dim, names] : s.at("cells").items())
            for (const auto& n : names) cells.emplace_back(std::stoi(dim), n.get<std::string>());
        std::stable_sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [d, n] : cells) X.add_cell(n, d);
        const auto& faces = s.contains("faces") ? s.at("faces") : nlohmann::json::object();
        for (const auto& [d, n] : cells) {
            if (d == 0) continue;
            if (!faces.contains(n)) throw std::invalid_argument("cell '" + n + "' has no face list");
            const auto& list = faces.at(n);
            if (static_cast<int>(list.size()) != d + 1)
                throw std::invalid_argument("cell '" + n + "' needs " + std::to_string(d + 1) + " faces");
            for (int i = 0; i <= d; ++i) {
                const auto& e = list[i];
                SimplicialSet::Face f;
                f.cell = X.id(e.at(0).get<std::string>());
                if (e.size() > 1 && e.at(1).get<int>() != 0) {
                    if (e.size() < 3) throw std::invalid_argument("degenerate face of '" + n + "' needs degeneracy indices");
                    f.degeneracies = e.at(2).get<std::vector<int>>();
                }
                int expected = d - 1 - static_cast<int>(f.degeneracies.size());
                if (X.dim(f.cell) != expected)
                    throw std::invalid_argument("face " + std::to_string(i) + " of '" + n + "' has the wrong dimension");
                X.set_face(X.id(n), i, f);
            }
        }
        X.check_identities();
        return X;
    }
    throw std::invalid_argument("simplicial set JSON needs a \"complex\" or \"sset\" key");
}

// Chains on a simplicial set: words of cell ids.

using CellTensor = std::vector<int>;
using XChain = LinCombo<CellTensor>;

inline XChain boundary(const SimplicialSet& X, const XChain& x) {
    XChain out(x.ring());
    for (const auto& [t, c] : x) {
        int passed = 0;
        for (std::size_t k = 0; k < t.size(); ++k) {
            const int p = X.dim(t[k]);
            if (p > 0)
                for (int i = 0; i <= p; ++i) {
                    Restricted f = X.face_restricted(t[k], i);
                    if (f.degenerate()) continue;
                    CellTensor u = t;
                    u[k] = f.cell;
                    out.add(std::move(u), ((passed + i) % 2 ? -1 : 1) * c);
                }
            passed += p;
        }
    }
    return out;
}

/// Pushes words of faces of the standard d-simplex into X along the
/// characteristic map of `cell`; degenerate images vanish.
inline XChain push_forward(const SimplicialSet& X, int cell, const Chain& words) {
    XChain out(words.ring());
    for (const auto& [w, c] : words) {
        CellTensor u;
        bool ok = true;
        for (const Simplex& s : w) {
            Restricted r = X.restrict(cell, s);
            if (r.degenerate()) {
                ok = false;
                break;
            }
            u.push_back(r.cell);
        }
        if (ok) out.add(std::move(u), c);
    }
    return out;
}

/// Action of a (1,m)-element on chains of X: evaluate on the fundamental
/// simplex of each cell's dimension, then push forward.
class Coaction {
public:
    Coaction(const SimplicialSet& X, PropElement g) : X_(X), g_(std::move(g)) {
        for (const auto& [t, c] : g_)
            if (t.n != 1) throw GraphError("coaction needs a term with one input");
    }
    XChain operator()(const XChain& c) const {
        XChain out(c.ring());
        for (const auto& [w, coeff] : c) {
            if (w.size() != 1) throw GraphError("coaction is applied to chains of tensor arity 1");
            out.axpy(coeff, push_forward(X_, w[0], on_standard(X_.dim(w[0]), c.ring())));
        }
        return out;
    }
    const Chain& on_standard(int d, Ring r) const {
        auto key = std::make_pair(d, r);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        PropElement g(r);
        for (const auto& [t, c] : g_) g.add(t, c);
        return cache_.emplace(key, evaluate(g, chain_of(r, Tensor{fundamental_simplex(d)}))).first->second;
    }

private:
    const SimplicialSet& X_;
    PropElement g_;
    mutable std::map<std::pair<int, Ring>, Chain> cache_;
};

inline XChain coact(const PropElement& g, const SimplicialSet& X, const XChain& c) { return Coaction(X, g)(c); }

// JSON for chains.

inline nlohmann::json tensor_to_json(const Tensor& t) { return t; }
inline Tensor tensor_from_json(const nlohmann::json& j) { return j.get<Tensor>(); }
inline nlohmann::json chain_to_json(const Chain& x) { return lin_to_json(x, tensor_to_json); }
inline Chain chain_from_json(const nlohmann::json& j) { return lin_from_json<Tensor>(j, tensor_from_json); }

inline nlohmann::json xchain_to_json(const SimplicialSet& X, const XChain& x) {
    return lin_to_json(x, [&](const CellTensor& t) {
        nlohmann::json a = nlohmann::json::array();
        for (int c : t) a.push_back(X.name(c));
        return a;
    });
}

/// Accepts words as arrays of cell names; a bare string is a word of length one.
inline XChain xchain_from_json(const SimplicialSet& X, const nlohmann::json& j) {
    return lin_from_json<CellTensor>(j, [&](const nlohmann::json& b) {
        CellTensor t;
        if (b.is_string()) {
            t.push_back(X.id(b.get<std::string>()));
        } else {
            for (const auto& n : b) t.push_back(X.id(n.get<std::string>()));
        }
        return t;
    });
}

inline std::string render(const Simplex& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "]";
}

inline std::string render(const Chain& x) {
    if (x.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : x) {
        std::string coeff = c.str();
        if (c < 0) {
            out += first ? "-" : " - ";
            coeff = coeff.substr(1);
        } else if (!first) {
            out += " + ";
        }
        if (coeff != "1") out += coeff + "*";
        for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "(x)" : "") + render(w[i]);
        first = false;
    }
    return out;
}

}  // namespace einfty
