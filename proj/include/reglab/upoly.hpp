#ifndef REGLAB_UPOLY_HPP
#define REGLAB_UPOLY_HPP

#include <cassert>
#include <utility>
#include <vector>

#include "reglab/errors.hpp"
#include "reglab/rational.hpp"

namespace reglab {

inline bool is_zero_coeff(const BigRat& q) { return sgn(q) == 0; }

// Dense univariate polynomial over a field K, coefficients low to high.
// K needs: K(int), + - * /, ==, and a free function is_zero_coeff(K)
// visible here or via ADL.
template <class K>
struct UPoly {
    std::vector<K> c;

    UPoly() = default;
    explicit UPoly(K constant) {
        if (!is_zero_coeff(constant)) c.push_back(std::move(constant));
    }
    explicit UPoly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }

    static UPoly zero() { return UPoly(); }
    static UPoly one() { return UPoly(K(1)); }
    static UPoly x() { return UPoly(std::vector<K>{K(0), K(1)}); }
    static UPoly monomial(K a, int d) {
        UPoly p;
        if (is_zero_coeff(a)) return p;
        p.c.assign(d + 1, K(0));
        p.c[d] = std::move(a);
        return p;
    }

    void trim() {
        while (!c.empty() && is_zero_coeff(c.back())) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    const K& lc() const { return c.back(); }
    K coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : K(0); }

    bool operator==(const UPoly& o) const {
        if (c.size() != o.c.size()) return false;
        for (size_t i = 0; i < c.size(); ++i)
            if (!(c[i] == o.c[i])) return false;
        return true;
    }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& a : r.c) a = K(0) - a;
        return r;
    }

    UPoly operator+(const UPoly& o) const {
        UPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), K(0));
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
        r.trim();
        return r;
    }
    UPoly operator-(const UPoly& o) const { return *this + (-o); }

    UPoly operator*(const UPoly& o) const {
        if (is_zero() || o.is_zero()) return UPoly();
        UPoly r;
        r.c.assign(c.size() + o.c.size() - 1, K(0));
        for (size_t i = 0; i < c.size(); ++i) {
            if (is_zero_coeff(c[i])) continue;
            for (size_t j = 0; j < o.c.size(); ++j)
                r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        }
        r.trim();
        return r;
    }

    UPoly operator*(const K& s) const {
        UPoly r = *this;
        for (auto& a : r.c) a = a * s;
        r.trim();
        return r;
    }
    UPoly operator/(const K& s) const {
        UPoly r = *this;
        for (auto& a : r.c) a = a / s;
        return r;
    }

    template <class V>
    V eval(const V& x) const {
        V acc(0);
        for (int i = degree(); i >= 0; --i) acc = acc * x + V(c[i]);
        return acc;
    }
    K operator()(const K& x) const { return eval<K>(x); }
};

template <class K>
UPoly<K> derivative(const UPoly<K>& p) {
    UPoly<K> r;
    if (p.degree() < 1) return r;
    r.c.resize(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) r.c[i - 1] = p.c[i] * K((long)i);
    r.trim();
    return r;
}

// Quotient and remainder over a field.
template <class K>
std::pair<UPoly<K>, UPoly<K>> divmod(const UPoly<K>& a, const UPoly<K>& b) {
    assert(!b.is_zero());
    UPoly<K> q, r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c.assign(a.degree() - b.degree() + 1, K(0));
    K inv_lc = K(1) / b.lc();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int d = r.degree() - b.degree();
        K f = r.lc() * inv_lc;
        q.c[d] = q.c[d] + f;
        for (int i = 0; i <= b.degree(); ++i)
            r.c[i + d] = r.c[i + d] - f * b.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

template <class K>
UPoly<K> operator%(const UPoly<K>& a, const UPoly<K>& b) { return divmod(a, b).second; }
template <class K>
UPoly<K> operator/(const UPoly<K>& a, const UPoly<K>& b) { return divmod(a, b).first; }

template <class K>
UPoly<K> make_monic(const UPoly<K>& p) {
    if (p.is_zero()) return p;
    return p / p.lc();
}

// Monic gcd.
template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
    while (!b.is_zero()) {
        UPoly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

// g = gcd, and u with u*a ≡ g (mod b) ... full Bezout: u*a + v*b = g.
template <class K>
UPoly<K> extended_gcd(const UPoly<K>& a, const UPoly<K>& b, UPoly<K>& u, UPoly<K>& v) {
    UPoly<K> r0 = a, r1 = b;
    UPoly<K> s0 = UPoly<K>::one(), s1;
    UPoly<K> t0, t1 = UPoly<K>::one();
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        UPoly<K> s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.is_zero()) {
        K inv = K(1) / r0.lc();
        r0 = r0 * inv; s0 = s0 * inv; t0 = t0 * inv;
    }
    u = s0; v = t0;
    return r0;
}

template <class K>
UPoly<K> squarefree_part(const UPoly<K>& p) {
    if (p.degree() <= 0) return make_monic(p);
    UPoly<K> g = gcd(p, derivative(p));
    return make_monic(p / g);
}

// Yun decomposition: p = lc * prod out[k-1]^k with squarefree pairwise-coprime parts.
template <class K>
std::vector<UPoly<K>> yun_decomposition(const UPoly<K>& p) {
    std::vector<UPoly<K>> out;
    if (p.degree() <= 0) return out;
    UPoly<K> f = make_monic(p);
    UPoly<K> g = gcd(f, derivative(f));
    if (g.degree() == 0) {
        out.push_back(f);
        return out;
    }
    UPoly<K> w = f / g;
    UPoly<K> y = derivative(f) / g;
    UPoly<K> z = y - derivative(w);
    while (!z.is_zero()) {
        UPoly<K> a = gcd(w, z);
        out.push_back(a);
        w = w / a;
        y = z / a;
        z = y - derivative(w);
    }
    out.push_back(w);
    return out;
}

// Resultant via the Euclidean PRS over a field.
template <class K>
K resultant(UPoly<K> a, UPoly<K> b) {
    if (a.is_zero() || b.is_zero()) return K(0);
    K res(1);
    bool negate = false;
    while (b.degree() > 0) {
        UPoly<K> r = a % b;
        if (r.is_zero()) {
            if (b.degree() > 0) return K(0);
            break;
        }
        // res(a,b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
        if ((a.degree() % 2) && (b.degree() % 2)) negate = !negate;
        K lb = b.lc();
        int e = a.degree() - r.degree();
        K f(1);
        for (int i = 0; i < e; ++i) f = f * lb;
        res = res * f;
        a = std::move(b);
        b = std::move(r);
    }
    if (b.is_zero()) return K(0);
    if (b.degree() == 0) {
        K lb = b.c[0];
        K f(1);
        for (int i = 0; i < a.degree(); ++i) f = f * lb;
        res = res * f;
    }
    return negate ? K(0) - res : res;
}

// p(x + s) by repeated synthetic division by (x - s).
template <class K>
UPoly<K> taylor_shift(const UPoly<K>& p, const K& s) {
    if (p.is_zero()) return p;
    std::vector<K> a = p.c;
    int n = p.degree();
    UPoly<K> out;
    out.c.assign(n + 1, K(0));
    for (int k = 0; k <= n; ++k) {
        int d = n - k;
        if (d == 0) {
            out.c[k] = a[0];
            break;
        }
        std::vector<K> q(d);
        q[d - 1] = a[d];
        for (int i = d - 2; i >= 0; --i) q[i] = a[i + 1] + s * q[i + 1];
        out.c[k] = a[0] + s * q[0];
        a = std::move(q);
    }
    out.trim();
    return out;
}

template <class K>
UPoly<K> compose(const UPoly<K>& p, const UPoly<K>& q) {
    UPoly<K> acc;
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * q;
        acc = acc + UPoly<K>(p.c[i]);
    }
    return acc;
}

template <class K>
UPoly<K> pow(const UPoly<K>& p, unsigned e) {
    UPoly<K> acc = UPoly<K>::one(), b = p;
    unsigned k = e;
    while (k) {
        if (k & 1u) acc = acc * b;
        k >>= 1u;
        if (k) b = b * b;
    }
    return acc;
}

using QPoly = UPoly<BigRat>;

// Integer content and primitive part for rational-coefficient polynomials.
inline std::pair<BigRat, std::vector<BigInt>> integer_normalize(const QPoly& p) {
    // Returns (content, primitive integer coefficients) with p = content * prim.
    if (p.is_zero()) return {BigRat(0), {}};
    BigInt den_lcm(1);
    for (const auto& q : p.c) {
        BigInt d = q.get_den();
        den_lcm = lcm(den_lcm, d);
    }
    std::vector<BigInt> z(p.c.size());
    BigInt g(0);
    for (size_t i = 0; i < p.c.size(); ++i) {
        z[i] = BigInt(p.c[i].get_num() * (den_lcm / p.c[i].get_den()));
        g = gcd(g, z[i]);
    }
    if (sgn(z.back()) < 0) g = -g;
    for (auto& zi : z) zi /= g;
    BigRat content(g, den_lcm);
    content.canonicalize();
    return {content, z};
}

} // namespace reglab

#endif
