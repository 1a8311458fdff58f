#pragma once

// Cup-i coproducts as terms of S(1,2), the surjection coaction on simplices,
// cup-i products of F2 cochains, mod 2 cohomology and Steenrod squares.

#include "einfty/simplicial.hpp"
#include "einfty/surjection.hpp"

#include <boost/dynamic_bitset.hpp>

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace einfty {

/// (1,2,1,2,...) of length i + 2.
inline Surjection alternating_surjection(int i) {
    if (i < 0) throw std::invalid_argument("cup-i needs i >= 0");
    std::vector<int> seq;
    for (int k = 0; k < i + 2; ++k) seq.push_back(k % 2 + 1);
    return Surjection(seq);
}

/// The cup-i coproduct as the surjection-like term of (1,2,1,...).
inline Graph cup_i_element(int i) { return from_surjection(alternating_surjection(i)); }

/// The degree 2 coproduct drawn with a coproduct on each branch of a first
/// coproduct and the middle legs crossed.
inline Graph pictured_delta2() {
    Graph g;
    g.n = 1;
    g.m = 2;
    int root = g.add_vertex(Kind::Coproduct);
    int left = g.add_vertex(Kind::Coproduct);
    int right = g.add_vertex(Kind::Coproduct);
    int p1 = g.add_vertex(Kind::Product);
    int p2 = g.add_vertex(Kind::Product);
    g.inputs[root][0] = {kExternal, 0};
    g.inputs[left][0] = {root, 0};
    g.inputs[right][0] = {root, 1};
    g.inputs[p1] = {Source{left, 0}, Source{right, 0}};
    g.inputs[p2] = {Source{left, 1}, Source{right, 1}};
    g.outputs = {Source{p1, 0}, Source{p2, 0}};
    return g;
}

/// The pictured term with its orientation sign, as an element.
inline PropElement pictured_delta2_element(Ring r) { return element(r, pictured_delta2()); }

inline PropElement cup_i_term(int i, Ring r) {
    if (r == Ring::Z && i > 2) throw std::invalid_argument("integral cup-i coproducts are only provided for i <= 2");
    return PropElement(r, cup_i_element(i));
}

inline XChain cup_i_coproduct(int i, const SimplicialSet& X, const XChain& c) {
    return coact(cup_i_term(i, c.ring()), X, c);
}

// ---------------------------------------------------------------------------
// Surjection coaction.

/// phi(s) on a simplex [v_0..v_d], over F2.
inline Chain sur_coact(const Surjection& s, const Simplex& sigma) {
    const int n = s.n();
    const int d = static_cast<int>(sigma.size()) - 1;
    Chain out(Ring::F2);
    if (d < 0 || n < 1) return out;
    std::vector<int> I(n + 1, 0);
    I[n] = d;
    std::function<void(int)> rec = [&](int j) {
        if (j == n) {
            Tensor t(s.m);
            for (int k = 1; k <= n; ++k) {
                Simplex& f = t[s.seq[k - 1] - 1];
                for (int p = I[k - 1]; p <= I[k]; ++p) {
                    if (!f.empty() && f.back() >= sigma[p]) return;
                    f.push_back(sigma[p]);
                }
            }
            out.add(std::move(t), 1);
            return;
        }
        for (int v = I[j - 1]; v <= d; ++v) {
            I[j] = v;
            rec(j + 1);
        }
    };
    if (n == 1) {
        out.add(Tensor{sigma}, 1);
        return out;
    }
    rec(1);
    return out;
}

inline XChain sur_coact(const Surjection& s, const SimplicialSet& X, const XChain& c) {
    XChain out(Ring::F2);
    std::map<int, Chain> cache;
    for (const auto& [w, coeff] : c) {
        if (w.size() != 1) throw GraphError("coaction is applied to chains of tensor arity 1");
        const int d = X.dim(w[0]);
        auto it = cache.find(d);
        if (it == cache.end()) it = cache.emplace(d, sur_coact(s, fundamental_simplex(d))).first;
        out.axpy(coeff, push_forward(X, w[0], it->second));
    }
    return out;
}

// ---------------------------------------------------------------------------
// F2 cochains.

struct Cochain {
    int degree = 0;
    std::set<int> support;
    bool operator==(const Cochain&) const = default;
};

inline Cochain coboundary(const SimplicialSet& X, const Cochain& a) {
    Cochain out{a.degree + 1, {}};
    if (a.degree < 0 || a.degree + 1 > X.dimension()) return out;
    for (int y : X.cells(a.degree + 1)) {
        int parity = 0;
        for (int i = 0; i <= a.degree + 1; ++i) {
            Restricted f = X.face_restricted(y, i);
            if (!f.degenerate() && a.support.count(f.cell)) parity ^= 1;
        }
        if (parity) out.support.insert(y);
    }
    return out;
}

inline Cochain cochain_add(const Cochain& a, const Cochain& b) {
    if (a.degree != b.degree) throw std::invalid_argument("cochains of different degrees");
    Cochain out = a;
    for (int c : b.support)
        if (!out.support.erase(c)) out.support.insert(c);
    return out;
}

/// <a (x) b, x> summed over a chain of words of length two.
inline bool pair_with(const Cochain& a, const Cochain& b, const XChain& words) {
    int parity = 0;
    for (const auto& [w, c] : words)
        if (a.support.count(w[0]) && b.support.count(w[1]) && c % 2 != 0) parity ^= 1;
    return parity;
}

/// Dual of a coproduct given cell by cell.
inline Cochain dual_product(const SimplicialSet& X, const Cochain& a, const Cochain& b, int shift,
                            const std::function<XChain(int)>& coproduct) {
    Cochain out{a.degree + b.degree - shift, {}};
    if (out.degree < 0 || out.degree > X.dimension()) return out;
    for (int z : X.cells(out.degree))
        if (pair_with(a, b, coproduct(z))) out.support.insert(z);
    return out;
}

/// a cup_i b over F2 through the term calculus.
class CupProduct {
public:
    CupProduct(const SimplicialSet& X, int i) : X_(X), i_(i), co_(X, cup_i_term(i, Ring::F2)) {}
    Cochain operator()(const Cochain& a, const Cochain& b) const {
        return dual_product(X_, a, b, i_, [&](int z) { return co_(XChain(Ring::F2, CellTensor{z})); });
    }

private:
    const SimplicialSet& X_;
    int i_;
    Coaction co_;
};

inline Cochain cup_i_product(int i, const SimplicialSet& X, const Cochain& a, const Cochain& b) {
    return CupProduct(X, i)(a, b);
}

/// The same product read off the surjection coaction.
inline Cochain cup_i_product_sur(int i, const SimplicialSet& X, const Cochain& a, const Cochain& b) {
    Surjection s = alternating_surjection(i);
    return dual_product(X, a, b, i, [&](int z) { return sur_coact(s, X, XChain(Ring::F2, CellTensor{z})); });
}

// ---------------------------------------------------------------------------
// Cohomology.

using Bits = boost::dynamic_bitset<>;

/// Row echelon basis over F2 with a tag recording each row's combination of
/// designated generators.
class Echelon {
public:
    explicit Echelon(std::size_t width, std::size_t tags = 0) : width_(width), tags_(tags) {}

    /// Reduces v (and its tag) against the basis.
    void reduce(Bits& v, Bits& tag) const {
        for (std::size_t k = 0; k < rows_.size(); ++k)
            if (v.test(pivots_[k])) {
                v ^= rows_[k];
                tag ^= tagrows_[k];
            }
    }
    /// Adds v; false when v is already in the span.
    bool insert(Bits v, Bits tag) {
        reduce(v, tag);
        if (v.none()) return false;
        std::size_t p = v.find_first();
        for (std::size_t k = 0; k < rows_.size(); ++k)
            if (rows_[k].test(p)) {
                rows_[k] ^= v;
                tagrows_[k] ^= tag;
            }
        rows_.push_back(v);
        tagrows_.push_back(tag);
        pivots_.push_back(p);
        return true;
    }
    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    std::size_t tags() const { return tags_; }
    void grow_tags(std::size_t t) {
        tags_ = t;
        for (auto& r : tagrows_) r.resize(t);
    }

private:
    std::size_t width_, tags_;
    std::vector<Bits> rows_, tagrows_;
    std::vector<std::size_t> pivots_;
};

/// Null space of the linear map given by images of the unit vectors.
inline std::vector<Bits> null_space(const std::vector<Bits>& images, std::size_t target_width) {
    const std::size_t n = images.size();
    Echelon e(target_width, n);
    std::vector<Bits> out;
    for (std::size_t j = 0; j < n; ++j) {
        Bits tag(n);
        tag.set(j);
        Bits v = images[j];
        Bits t = tag;
        e.reduce(v, t);
        if (v.none())
            out.push_back(t);
        else
            e.insert(images[j], tag);
    }
    return out;
}

/// Mod 2 cohomology with chosen representative cocycles.
class Cohomology {
public:
    explicit Cohomology(const SimplicialSet& X) : X_(X) {
        const int top = X.dimension();
        for (int q = 0; q <= top; ++q) {
            const auto& cells = X.cells(q);
            for (std::size_t k = 0; k < cells.size(); ++k) index_[cells[k]] = k;
        }
        for (int q = 0; q <= top; ++q) {
            const std::size_t nq = X.cells(q).size();
            std::vector<Bits> images;
            for (int c : X.cells(q)) images.push_back(to_bits(coboundary(X, Cochain{q, {c}})));
            auto kernel = null_space(images, q < top ? X.cells(q + 1).size() : 0);
            Echelon e(nq);
            if (q > 0)
                for (int c : X.cells(q - 1)) e.insert(to_bits(coboundary(X, Cochain{q - 1, {c}})), Bits());
            std::vector<Cochain> reps;
            for (const Bits& z : kernel) {
                Bits tag(reps.size() + 1);
                tag.set(reps.size());
                e.grow_tags(reps.size() + 1);
                if (e.insert(z, tag)) reps.push_back(from_bits(q, z));
            }
            e.grow_tags(reps.size());
            reps_.push_back(reps);
            echelon_.push_back(e);
        }
    }

    int top() const { return static_cast<int>(reps_.size()) - 1; }
    int rank(int q) const { return q < 0 || q > top() ? 0 : static_cast<int>(reps_[q].size()); }
    std::vector<int> ranks() const {
        std::vector<int> out;
        for (int q = 0; q <= top(); ++q) out.push_back(rank(q));
        return out;
    }
    const std::vector<Cochain>& representatives(int q) const { return reps_.at(q); }

    bool is_cocycle(const Cochain& a) const { return coboundary(X_, a).support.empty(); }

    /// Coordinates of the class of a cocycle in the representative basis.
    std::vector<int> coordinates(const Cochain& a) const {
        if (a.degree < 0 || a.degree > top()) return {};
        if (!is_cocycle(a)) throw std::invalid_argument("not a cocycle");
        const Echelon& e = echelon_[a.degree];
        Bits v = to_bits(a);
        Bits tag(e.tags());
        e.reduce(v, tag);
        if (v.any()) throw std::logic_error("cocycle outside the computed span");
        std::vector<int> out(e.tags());
        for (std::size_t k = 0; k < e.tags(); ++k) out[k] = tag.test(k);
        return out;
    }

private:
    Bits to_bits(const Cochain& a) const {
        Bits b(a.degree <= X_.dimension() ? X_.cells(a.degree).size() : 0);
        for (int c : a.support) b.set(index_.at(c));
        return b;
    }
    Cochain from_bits(int q, const Bits& b) const {
        Cochain out{q, {}};
        const auto& cells = X_.cells(q);
        for (std::size_t k = b.find_first(); k != Bits::npos; k = b.find_next(k)) out.support.insert(cells[k]);
        return out;
    }

    const SimplicialSet& X_;
    std::map<int, std::size_t> index_;
    std::vector<std::vector<Cochain>> reps_;
    std::vector<Echelon> echelon_;
};

/// Sq^k a = a cup_{q-k} a, zero for k > q.
inline Cochain steenrod_square(int k, const SimplicialSet& X, const Cochain& a) {
    const int i = a.degree - k;
    if (k < 0 || i < 0) return Cochain{a.degree + k, {}};
    return cup_i_product(i, X, a, a);
}

inline Cochain steenrod_square_sur(int k, const SimplicialSet& X, const Cochain& a) {
    const int i = a.degree - k;
    if (k < 0 || i < 0) return Cochain{a.degree + k, {}};
    return cup_i_product_sur(i, X, a, a);
}

/// Matrix of Sq^k : H^q -> H^{q+k}; column c holds the image of the c-th
/// representative.
struct SquareTable {
    int k = 0;
    int q = 0;
    std::vector<std::vector<int>> columns;
    bool nonzero() const {
        for (const auto& c : columns)
            for (int x : c)
                if (x) return true;
        return false;
    }
};

inline std::vector<SquareTable> steenrod_tables(int k, const SimplicialSet& X, const Cohomology& H,
                                                bool via_surjections = false) {
    std::vector<SquareTable> out;
    for (int q = 0; q <= H.top(); ++q) {
        SquareTable t{k, q, {}};
        for (const Cochain& a : H.representatives(q)) {
            Cochain sq = via_surjections ? steenrod_square_sur(k, X, a) : steenrod_square(k, X, a);
            if (sq.degree > H.top())
                t.columns.push_back({});
            else
                t.columns.push_back(H.coordinates(sq));
        }
        out.push_back(t);
    }
    return out;
}

inline nlohmann::json cochain_to_json(const SimplicialSet& X, const Cochain& a) {
    nlohmann::json terms = nlohmann::json::array();
    for (int c : a.support) terms.push_back({nlohmann::json::array({X.name(c)}), 1});
    return {{"ring", "F2"}, {"degree", a.degree}, {"terms", terms}};
}

}  // namespace einfty
