#ifndef REGLAB_ROOTISOL_HPP
#define REGLAB_ROOTISOL_HPP

// Real root isolation: Descartes-rule bisection with rational endpoints,
// Sturm sequences for counting. Generic over any coefficient field K that
// provides exact signs via ADL: sign_of(K), enclosure_of(K, bits).

#include <optional>
#include <vector>

#include "reglab/interval.hpp"
#include "reglab/upoly.hpp"

namespace reglab {

inline int sign_of(const BigRat& q) { return sgn(q); }
inline QInterval enclosure_of(const BigRat& q, unsigned) { return QInterval(q); }

// An isolating interval: open (lo, hi) containing exactly one root, or a
// point [r, r] when the root is rational and was hit exactly.
struct RootInterval {
    QInterval iv;
    int multiplicity = 1;
    bool exact() const { return iv.is_point(); }
};

namespace ri_detail {

template <class K>
int poly_sign_at(const UPoly<K>& p, const BigRat& x) {
    K acc(0);
    for (int i = p.degree(); i >= 0; --i) acc = acc * K(x) + p.c[i];
    return sign_of(acc);
}

// p(a + (b-a) x): maps (0,1) onto (a,b).
template <class K>
UPoly<K> map_unit(const UPoly<K>& p, const BigRat& a, const BigRat& b) {
    UPoly<K> shifted = taylor_shift(p, K(a));
    BigRat s = b - a;
    BigRat pw(1);
    UPoly<K> r = shifted;
    for (size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] = r.c[i] * K(pw);
        pw *= s;
    }
    r.trim();
    return r;
}

// Descartes bound for the number of roots of p in the open interval (0,1).
template <class K>
int descartes_01(const UPoly<K>& p) {
    int n = p.degree();
    UPoly<K> rev;
    rev.c.resize(n + 1, K(0));
    for (int i = 0; i <= n; ++i) rev.c[i] = p.coeff(n - i);
    rev.trim();
    UPoly<K> t = taylor_shift(rev, K(1));
    int variations = 0, last = 0;
    for (const auto& c : t.c) {
        int s = sign_of(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

template <class K>
void isolate_on(UPoly<K> p, BigRat a, BigRat b, std::vector<QInterval>& out) {
    // invariant: p(a) != 0, p(b) != 0, p squarefree
    struct Task { UPoly<K> p; BigRat a, b; };
    std::vector<Task> stack;
    stack.push_back({std::move(p), std::move(a), std::move(b)});
    while (!stack.empty()) {
        Task t = std::move(stack.back());
        stack.pop_back();
        if (t.p.degree() < 1) continue;
        UPoly<K> q = map_unit(t.p, t.a, t.b);
        int bound = descartes_01(q);
        if (bound == 0) continue;
        if (bound == 1) {
            out.push_back(QInterval(t.a, t.b));
            continue;
        }
        BigRat m = (t.a + t.b) / 2;
        if (poly_sign_at(t.p, m) == 0) {
            out.push_back(QInterval(m));
            // deflate the exact root so endpoint invariants persist
            UPoly<K> shifted = taylor_shift(t.p, K(m));
            UPoly<K> defl;
            defl.c.assign(shifted.c.begin() + 1, shifted.c.end());
            defl.trim();
            UPoly<K> back = taylor_shift(defl, K(-m));
            stack.push_back({back, t.a, m});
            stack.push_back({std::move(back), m, t.b});
        } else {
            stack.push_back({t.p, t.a, m});
            stack.push_back({std::move(t.p), m, t.b});
        }
    }
}

// Upper root bound (Cauchy), valid for all real roots.
template <class K>
BigRat root_bound(const UPoly<K>& p) {
    unsigned bits = 16;
    QInterval lc_iv = enclosure_of(p.lc(), bits);
    while (lc_iv.contains_zero()) {
        bits *= 2;
        lc_iv = enclosure_of(p.lc(), bits);
        if (bits > 1u << 20) throw error("root_bound: cannot separate leading coefficient from zero");
    }
    BigRat lc_low = std::min(abs_rat(lc_iv.lo), abs_rat(lc_iv.hi));
    BigRat m(0);
    for (int i = 0; i < p.degree(); ++i) {
        QInterval ci = enclosure_of(p.c[i], 16);
        BigRat up = std::max(abs_rat(ci.lo), abs_rat(ci.hi));
        if (up > m) m = up;
    }
    return BigRat(1) + m / lc_low;
}

} // namespace ri_detail

// Isolating intervals for all real roots of a squarefree p; disjoint, sorted.
template <class K>
std::vector<QInterval> isolate_real_roots_squarefree(const UPoly<K>& p) {
    std::vector<QInterval> out;
    if (p.degree() < 1) return out;
    BigRat B = ri_detail::root_bound(p);
    UPoly<K> q = p;
    // exact zero root
    if (sign_of(q.coeff(0)) == 0) {
        out.push_back(QInterval(BigRat(0)));
        while (q.degree() >= 1 && sign_of(q.coeff(0)) == 0) {
            q.c.erase(q.c.begin());
            q.trim();
        }
    }
    if (q.degree() >= 1) {
        // endpoints +-B are non-roots by the bound
        std::vector<QInterval> pos, neg;
        ri_detail::isolate_on(q, BigRat(0), B, pos);
        ri_detail::isolate_on(q, -B, BigRat(0), neg);
        for (auto& iv : neg) out.push_back(iv);
        for (auto& iv : pos) out.push_back(iv);
    }
    std::sort(out.begin(), out.end(), [](const QInterval& x, const QInterval& y) {
        return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
    });
    return out;
}

// Narrow an isolating interval below the given width by sign bisection.
template <class K>
QInterval refine_root(const UPoly<K>& p, QInterval iv, const BigRat& width) {
    if (iv.is_point()) return iv;
    int slo = ri_detail::poly_sign_at(p, iv.lo);
    while (iv.width() > width) {
        BigRat m = iv.mid();
        int sm = ri_detail::poly_sign_at(p, m);
        if (sm == 0) return QInterval(m);
        if (sm == slo) iv.lo = m;
        else iv.hi = m;
    }
    return iv;
}

template <class K>
std::vector<UPoly<K>> sturm_sequence(const UPoly<K>& p) {
    std::vector<UPoly<K>> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    seq.push_back(derivative(p));
    while (!seq.back().is_zero() && seq.back().degree() >= 0) {
        const UPoly<K>& a = seq[seq.size() - 2];
        const UPoly<K>& b = seq.back();
        if (b.is_zero()) break;
        UPoly<K> r = a % b;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

namespace ri_detail {

template <class K>
int sturm_variations_at(const std::vector<UPoly<K>>& seq, const BigRat& x) {
    int variations = 0, last = 0;
    for (const auto& q : seq) {
        int s = poly_sign_at(q, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

template <class K>
int sturm_variations_at_inf(const std::vector<UPoly<K>>& seq, int dir) {
    int variations = 0, last = 0;
    for (const auto& q : seq) {
        if (q.is_zero()) continue;
        int s = sign_of(q.lc());
        if (dir < 0 && (q.degree() % 2)) s = -s;
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

} // namespace ri_detail

// Number of distinct real roots of squarefree p in the half-open interval (a, b].
template <class K>
int count_roots_in(const UPoly<K>& p, const BigRat& a, const BigRat& b) {
    if (p.degree() < 1) return 0;
    auto seq = sturm_sequence(p);
    return ri_detail::sturm_variations_at(seq, a) - ri_detail::sturm_variations_at(seq, b);
}

template <class K>
int count_real_roots(const UPoly<K>& p) {
    if (p.degree() < 1) return 0;
    auto seq = sturm_sequence(p);
    return ri_detail::sturm_variations_at_inf(seq, -1) - ri_detail::sturm_variations_at_inf(seq, +1);
}

// Full isolation with multiplicities via the squarefree decomposition.
template <class K>
std::vector<RootInterval> isolate_real_roots_multi(const UPoly<K>& p) {
    std::vector<RootInterval> out;
    if (p.degree() < 1) return out;
    auto levels = yun_decomposition(p);
    for (size_t k = 0; k < levels.size(); ++k) {
        if (levels[k].degree() < 1) continue;
        for (auto& iv : isolate_real_roots_squarefree(levels[k]))
            out.push_back({iv, (int)k + 1});
    }
    // Disjointify across levels (Yun parts are coprime, so roots differ).
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) {
            return x.iv.lo < y.iv.lo || (x.iv.lo == y.iv.lo && x.iv.hi < y.iv.hi);
        });
        for (size_t i = 0; i + 1 < out.size(); ++i) {
            if (out[i].iv.hi > out[i + 1].iv.lo && !out[i].exact() ) {
                // shrink both against their own defining level polynomials
                for (size_t j : {i, i + 1}) {
                    auto& r = out[j];
                    if (r.exact()) continue;
                    UPoly<K> q = levels[r.multiplicity - 1];
                    r.iv = refine_root(q, r.iv, r.iv.width() / 4);
                }
                changed = true;
            }
        }
        if (!changed) break;
    }
    return out;
}

} // namespace reglab

#endif
