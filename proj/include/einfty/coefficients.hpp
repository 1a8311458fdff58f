#pragma once

// Exact coefficients over Z or F2 and formal linear combinations over a
// canonical basis.

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace einfty {

using Integer = boost::multiprecision::cpp_int;

enum class Ring { Z, F2 };

inline const char* ring_name(Ring r) { return r == Ring::Z ? "Z" : "F2"; }

inline Ring parse_ring(const std::string& s) {
    if (s == "Z") return Ring::Z;
    if (s == "F2") return Ring::F2;
    throw std::invalid_argument("unknown ring '" + s + "' (expected Z or F2)");
}

class RingMismatch : public std::invalid_argument {
public:
    RingMismatch() : std::invalid_argument("coefficient ring mismatch") {}
};

inline Integer reduce_in(Ring r, Integer v) {
    if (r == Ring::F2) {
        v %= 2;
        if (v < 0) v += 2;
    }
    return v;
}

/// A ring-tagged exact scalar. F2 values are stored as 0 or 1.
class Coefficient {
public:
    Coefficient() = default;
    Coefficient(Ring r, Integer v) : ring_(r), value_(reduce_in(r, std::move(v))) {}
    Coefficient(Ring r, long long v) : Coefficient(r, Integer(v)) {}

    Ring ring() const { return ring_; }
    const Integer& value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
        check(a, b);
        return {a.ring_, a.value_ + b.value_};
    }
    friend Coefficient operator-(const Coefficient& a, const Coefficient& b) {
        check(a, b);
        return {a.ring_, a.value_ - b.value_};
    }
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
        check(a, b);
        return {a.ring_, a.value_ * b.value_};
    }
    Coefficient operator-() const { return {ring_, -value_}; }
    friend bool operator==(const Coefficient& a, const Coefficient& b) {
        return a.ring_ == b.ring_ && a.value_ == b.value_;
    }

private:
    static void check(const Coefficient& a, const Coefficient& b) {
        if (a.ring_ != b.ring_) throw RingMismatch();
    }
    Ring ring_ = Ring::Z;
    Integer value_ = 0;
};

/// Finite formal sum over basis objects B with nonzero coefficients.
///
/// Terms are kept in a std::map, so iteration order is the total order on B;
/// every basis type in this library defines that order structurally, which
/// makes printed output and golden files deterministic.
template <class B>
class LinCombo {
public:
    using Terms = std::map<B, Integer>;

    LinCombo() = default;
    explicit LinCombo(Ring r) : ring_(r) {}
    LinCombo(Ring r, const B& b, Integer c = 1) : ring_(r) { add(b, std::move(c)); }

    Ring ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    Integer coeff(const B& b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? Integer(0) : it->second;
    }
    Coefficient coefficient(const B& b) const { return {ring_, coeff(b)}; }

    void add(const B& b, const Integer& c) {
        Integer v = reduce_in(ring_, c);
        if (v == 0) return;
        auto [it, inserted] = terms_.try_emplace(b, v);
        if (!inserted) {
            it->second = reduce_in(ring_, it->second + v);
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add(B&& b, const Integer& c) {
        Integer v = reduce_in(ring_, c);
        if (v == 0) return;
        auto it = terms_.find(b);
        if (it == terms_.end()) {
            terms_.emplace(std::move(b), std::move(v));
        } else {
            it->second = reduce_in(ring_, it->second + v);
            if (it->second == 0) terms_.erase(it);
        }
    }

    LinCombo& operator+=(const LinCombo& o) {
        if (o.ring_ != ring_) throw RingMismatch();
        for (const auto& [b, c] : o.terms_) add(b, c);
        return *this;
    }
    LinCombo& operator-=(const LinCombo& o) {
        if (o.ring_ != ring_) throw RingMismatch();
        for (const auto& [b, c] : o.terms_) add(b, -c);
        return *this;
    }
    /// Adds c * o.
    void axpy(const Integer& c, const LinCombo& o) {
        if (o.ring_ != ring_) throw RingMismatch();
        if (reduce_in(ring_, c) == 0) return;
        for (const auto& [b, v] : o.terms_) add(b, c * v);
    }

    friend LinCombo operator+(LinCombo a, const LinCombo& b) { return a += b; }
    friend LinCombo operator-(LinCombo a, const LinCombo& b) { return a -= b; }
    friend bool operator==(const LinCombo& a, const LinCombo& b) {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }

    /// Applies a linear map given on basis elements.
    template <class C, class F>
    LinCombo<C> map_linear(F&& f) const {
        LinCombo<C> out(ring_);
        for (const auto& [b, c] : terms_) out.axpy(c, f(b));
        return out;
    }

private:
    Ring ring_ = Ring::Z;
    Terms terms_;
};

template <class B>
LinCombo<B> lin_add(const LinCombo<B>& a, const LinCombo<B>& b) {
    return a + b;
}

template <class B>
LinCombo<B> lin_scale(const Coefficient& c, const LinCombo<B>& a) {
    if (c.ring() != a.ring()) throw RingMismatch();
    LinCombo<B> out(a.ring());
    out.axpy(c.value(), a);
    return out;
}

// JSON: {"ring": "Z"|"F2", "terms": [[basis, coeff], ...]}. Coefficients
// that do not fit in 64 bits are written as decimal strings.

inline nlohmann::json integer_to_json(const Integer& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline Integer integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw std::invalid_argument("coefficient must be an integer or a decimal string");
}

template <class B, class F>
nlohmann::json lin_to_json(const LinCombo<B>& x, F&& basis_to_json) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [b, c] : x) terms.push_back(nlohmann::json::array({basis_to_json(b), integer_to_json(c)}));
    return {{"ring", ring_name(x.ring())}, {"terms", terms}};
}

template <class B, class F>
LinCombo<B> lin_from_json(const nlohmann::json& j, F&& basis_from_json) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("terms"))
        throw std::invalid_argument("linear combination needs \"ring\" and \"terms\"");
    LinCombo<B> x(parse_ring(j.at("ring").get<std::string>()));
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 2) throw std::invalid_argument("each term is a [basis, coeff] pair");
        x.add(basis_from_json(t[0]), integer_from_json(t[1]));
    }
    return x;
}

// Small permutation helpers shared by several modules.

/// Parity of the number of inversions of a sequence of comparable values.
template <class T>
int inversion_parity(const std::vector<T>& seq) {
    int parity = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[j] < seq[i]) parity ^= 1;
    return parity;
}

inline int sign_of_parity(int parity) { return (parity & 1) ? -1 : 1; }

/// A permutation of {0..n-1} given as its image list.
using Permutation = std::vector<int>;

inline Permutation identity_permutation(int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

inline bool is_permutation(const Permutation& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

/// (a*b)(i) = a(b(i)).
inline Permutation compose_permutations(const Permutation& a, const Permutation& b) {
    Permutation out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
    return out;
}

inline Permutation inverse_permutation(const Permutation& p) {
    Permutation out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
    return out;
}

}  // namespace einfty
