#pragma once

// The surjection operad over F2 and its comparison with the one-input part
// of MS.

#include "einfty/coefficients.hpp"
#include "einfty/graph_terms.hpp"
#include "einfty/normalization.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace einfty {

/// A function n -> m written as its value sequence (values from 1).
struct Surjection {
    std::vector<int> seq;
    int m = 0;

    Surjection() = default;
    Surjection(std::vector<int> s) : seq(std::move(s)) {
        for (int v : seq) m = std::max(m, v);
    }
    Surjection(std::initializer_list<int> s) : Surjection(std::vector<int>(s)) {}

    int n() const { return static_cast<int>(seq.size()); }
    int degree() const { return n() - m; }
    auto operator<=>(const Surjection&) const = default;
};

using SurElement = LinCombo<Surjection>;

inline bool is_surjective(const std::vector<int>& s, int m) {
    std::vector<char> hit(m + 1, 0);
    for (int v : s) {
        if (v < 1 || v > m) return false;
        hit[v] = 1;
    }
    for (int v = 1; v <= m; ++v)
        if (!hit[v]) return false;
    return true;
}

inline bool is_degenerate(const std::vector<int>& s) {
    return std::adjacent_find(s.begin(), s.end()) != s.end();
}

/// Basis element of Sur(m): surjective onto 1..m and no equal neighbours.
inline bool is_basis(const std::vector<int>& s, int m) {
    return !s.empty() && is_surjective(s, m) && !is_degenerate(s);
}

inline std::string to_string(const Surjection& s) {
    std::string out;
    for (std::size_t i = 0; i < s.seq.size(); ++i) out += (i ? " " : "") + std::to_string(s.seq[i]);
    return out;
}

/// Parses "1 2 1"; commas are accepted as separators too.
inline Surjection parse_surjection(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    std::vector<int> seq;
    std::string tok;
    while (is >> tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw std::invalid_argument("surjection: '" + tok + "' is not an integer");
        seq.push_back(v);
    }
    Surjection s(seq);
    if (!is_basis(seq, s.m)) throw std::invalid_argument("'" + text + "' is not a nondegenerate surjection");
    return s;
}

/// The class of a sequence in Sur over F2 (zero when degenerate or not onto).
inline SurElement sur_class(const std::vector<int>& seq, int m) {
    SurElement out(Ring::F2);
    if (is_basis(seq, m)) {
        Surjection s;
        s.seq = seq;
        s.m = m;
        out.add(s, 1);
    }
    return out;
}

inline SurElement sur_differential(const Surjection& s) {
    SurElement out(Ring::F2);
    for (int k = 0; k < s.n(); ++k) {
        std::vector<int> f = s.seq;
        f.erase(f.begin() + k);
        out += sur_class(f, s.m);
    }
    return out;
}

inline SurElement sur_differential(const SurElement& x) {
    return x.map_linear<Surjection>([](const Surjection& s) { return sur_differential(s); });
}

/// Tuples 1 = j_0 <= j_1 <= ... <= j_k = n in lexicographic order.
inline std::vector<std::vector<int>> j_tuples(int k, int n) {
    std::vector<std::vector<int>> out;
    if (k < 1 || n < 1) return out;
    std::vector<int> cur{1};
    std::function<void(int)> rec = [&](int t) {
        if (t == k) {
            cur.push_back(n);
            out.push_back(cur);
            cur.pop_back();
            return;
        }
        for (int j = cur.back(); j <= n; ++j) {
            cur.push_back(j);
            rec(t + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

/// s_outer o_r s_inner: the t-th occurrence of r in the outer sequence is
/// replaced by the block s_inner(j_{t-1}..j_t), shifted by r - 1; outer values
/// above r are shifted by m - 1.
inline SurElement sur_compose(const Surjection& outer, int r, const Surjection& inner) {
    if (r < 1 || r > outer.m) throw std::out_of_range("composition index " + std::to_string(r) + " out of range");
    const int k = static_cast<int>(std::count(outer.seq.begin(), outer.seq.end(), r));
    const int n = inner.n();
    const int total_m = outer.m + inner.m - 1;
    SurElement out(Ring::F2);
    for (const auto& J : j_tuples(k, n)) {
        std::vector<int> res;
        int t = 0;
        for (int v : outer.seq) {
            if (v == r) {
                for (int j = J[t]; j <= J[t + 1]; ++j) res.push_back(inner.seq[j - 1] + r - 1);
                ++t;
            } else {
                res.push_back(v > r ? v + inner.m - 1 : v);
            }
        }
        out += sur_class(res, total_m);
    }
    return out;
}

/// Postcomposition with a permutation of the values (0-based images).
inline Surjection sur_act(const Permutation& tau, const Surjection& s) {
    if (static_cast<int>(tau.size()) != s.m || !is_permutation(tau))
        throw std::invalid_argument("permutation size does not match the surjection");
    Surjection out = s;
    for (int& v : out.seq) v = tau[v - 1] + 1;
    return out;
}

inline SurElement sur_act(const Permutation& tau, const SurElement& x) {
    SurElement out(x.ring());
    for (const auto& [s, c] : x) out.add(sur_act(tau, s), c);
    return out;
}

/// All nondegenerate surjections n -> m.
inline std::vector<Surjection> surjections(int n, int m) {
    std::vector<Surjection> out;
    std::vector<int> cur;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == n) {
            if (is_surjective(cur, m)) {
                Surjection s;
                s.seq = cur;
                s.m = m;
                out.push_back(s);
            }
            return;
        }
        for (int v = 1; v <= m; ++v) {
            if (!cur.empty() && cur.back() == v) continue;
            cur.push_back(v);
            rec();
            cur.pop_back();
        }
    };
    if (n >= 1 && m >= 1) rec();
    return out;
}

// Comparison with surjection-like graphs.

class NotSurjectionLike : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Surjection to_surjection(const Graph& g) {
    auto seq = surjection_sequence(g);
    if (!seq) throw NotSurjectionLike("graph is not surjection-like: " + describe(g));
    Surjection s;
    s.seq = *seq;
    s.m = g.m;
    return s;
}

/// Image of an MS normal form under the comparison map.
inline SurElement to_sur_element(const PropElement& x) {
    SurElement out(Ring::F2);
    for (const auto& [g, c] : x) {
        Surjection s = to_surjection(g);
        out += lin_scale(Coefficient(Ring::F2, c), sur_class(s.seq, s.m));
    }
    return out;
}

/// The surjection-like graph of s: a coproduct comb with one leaf per
/// position, and for each value a product comb over its positions.
inline Graph from_surjection(const Surjection& s) {
    if (!is_basis(s.seq, s.m)) throw std::invalid_argument("from_surjection needs a nondegenerate surjection");
    Graph g;
    g.n = 1;
    g.m = s.m;
    std::vector<Source> leaves = detail::coproduct_left_comb(g, Source{kExternal, 0}, s.n());
    for (int r = 1; r <= s.m; ++r) {
        std::vector<Source> mine;
        for (int i = 0; i < s.n(); ++i)
            if (s.seq[i] == r) mine.push_back(leaves[i]);
        g.outputs.push_back(detail::product_left_comb(g, mine));
    }
    return canonicalize(g);
}

/// Operadic grafting in the one-input part: `inner` is attached to output r
/// (1-based) of `outer`.
inline PropElement graft(const PropElement& outer, int r, const PropElement& inner, int outer_m) {
    Ring ring = outer.ring();
    PropElement layer = inner;
    if (r > 1) layer = horizontal_compose(PropElement(ring, identity_term(r - 1)), layer);
    if (outer_m - r > 0) layer = horizontal_compose(layer, PropElement(ring, identity_term(outer_m - r)));
    return vertical_compose(layer, outer);
}

}  // namespace einfty
