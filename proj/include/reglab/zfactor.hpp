#ifndef REGLAB_ZFACTOR_HPP
#define REGLAB_ZFACTOR_HPP

// Univariate factorization over Q: squarefree split, Berlekamp mod a small
// prime, Hensel lifting, subset recombination. Degrees stay small here
// (field extensions are capped), so the plain algorithms are enough.

#include <algorithm>
#include <utility>
#include <vector>

#include "reglab/errors.hpp"
#include "reglab/upoly.hpp"

namespace reglab {
namespace zf_detail {

using ZVec = std::vector<BigInt>; // coefficients low to high

inline void ztrim(ZVec& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}
inline int zdeg(const ZVec& a) { return (int)a.size() - 1; }

inline BigInt mod_pos(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}
inline BigInt mod_sym(const BigInt& a, const BigInt& m) {
    BigInt r = mod_pos(a, m);
    if (r * 2 > m) r -= m;
    return r;
}

inline ZVec zmod(const ZVec& a, const BigInt& m, bool symmetric = false) {
    ZVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = symmetric ? mod_sym(a[i], m) : mod_pos(a[i], m);
    ztrim(r);
    return r;
}

inline ZVec zmul_mod(const ZVec& a, const ZVec& b, const BigInt& m) {
    if (a.empty() || b.empty()) return {};
    ZVec r(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod_pos(r[i + j] + a[i] * b[j], m);
    ztrim(r);
    return r;
}

inline ZVec zadd_mod(const ZVec& a, const ZVec& b, const BigInt& m) {
    ZVec r(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = mod_pos(r[i] + b[i], m);
    ztrim(r);
    return r;
}

inline ZVec zsub_mod(const ZVec& a, const ZVec& b, const BigInt& m) {
    ZVec r(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = mod_pos(r[i] - b[i], m);
    ztrim(r);
    return r;
}

inline BigInt inv_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw error("inv_mod: not invertible");
    return r;
}

// Division mod m; divisor must have invertible leading coefficient.
inline std::pair<ZVec, ZVec> zdivmod_mod(const ZVec& a, const ZVec& b, const BigInt& m) {
    ZVec r = zmod(a, m), q;
    if (b.empty()) throw error("zdivmod_mod: zero divisor");
    if (zdeg(r) < zdeg(b)) return {q, r};
    q.assign(zdeg(r) - zdeg(b) + 1, BigInt(0));
    BigInt binv = inv_mod(b.back(), m);
    while (!r.empty() && zdeg(r) >= zdeg(b)) {
        int d = zdeg(r) - zdeg(b);
        BigInt f = mod_pos(r.back() * binv, m);
        q[d] = f;
        for (int i = 0; i <= zdeg(b); ++i)
            r[i + d] = mod_pos(r[i + d] - f * b[i], m);
        ztrim(r);
    }
    return {q, r};
}

inline ZVec zgcd_mod(ZVec a, ZVec b, const BigInt& p) {
    a = zmod(a, p);
    b = zmod(b, p);
    while (!b.empty()) {
        ZVec r = zdivmod_mod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        BigInt inv = inv_mod(a.back(), p);
        for (auto& c : a) c = mod_pos(c * inv, p);
    }
    return a;
}

inline ZVec zderiv(const ZVec& a, const BigInt& m) {
    ZVec r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(mod_pos(a[i] * BigInt((long)i), m));
    ztrim(r);
    return r;
}

inline ZVec zpowmod(ZVec base, BigInt e, const ZVec& f, const BigInt& p) {
    ZVec acc{BigInt(1)};
    base = zdivmod_mod(base, f, p).second;
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            acc = zdivmod_mod(zmul_mod(acc, base, p), f, p).second;
        e >>= 1;
        if (sgn(e) > 0) base = zdivmod_mod(zmul_mod(base, base, p), f, p).second;
    }
    return acc;
}

// Berlekamp factorization of a monic squarefree f mod p (p odd, small).
inline std::vector<ZVec> berlekamp(const ZVec& f, const BigInt& p) {
    int n = zdeg(f);
    if (n <= 1) return {f};
    std::vector<ZVec> cols(n);
    ZVec xp = zpowmod(ZVec{BigInt(0), BigInt(1)}, p, f, p);
    ZVec cur{BigInt(1)};
    for (int i = 0; i < n; ++i) {
        cols[i] = cur;
        cur = zdivmod_mod(zmul_mod(cur, xp, p), f, p).second;
    }
    // (M - I), column i = x^(p*i) mod f.
    std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n, BigInt(0)));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < (int)cols[j].size(); ++i) A[i][j] = cols[j][i];
        A[j][j] = mod_pos(A[j][j] - 1, p);
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int sel = -1;
        for (int r = row; r < n; ++r)
            if (sgn(A[r][col]) != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(A[sel], A[row]);
        BigInt inv = inv_mod(A[row][col], p);
        for (int c = 0; c < n; ++c) A[row][c] = mod_pos(A[row][c] * inv, p);
        for (int r = 0; r < n; ++r) {
            if (r == row || sgn(A[r][col]) == 0) continue;
            BigInt f2 = A[r][col];
            for (int c = 0; c < n; ++c)
                A[r][c] = mod_pos(A[r][c] - f2 * A[row][c], p);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<ZVec> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        ZVec v(n, BigInt(0));
        v[col] = 1;
        for (int r = 0; r < (int)pivot_col.size(); ++r)
            v[pivot_col[r]] = mod_pos(-A[r][col], p);
        ztrim(v);
        basis.push_back(v);
    }
    size_t num_factors = basis.size() + 1;
    std::vector<ZVec> factors{f};
    if (num_factors == 1) return factors;
    for (const auto& v : basis) {
        if (factors.size() >= num_factors) break;
        if (zdeg(v) < 1) continue;
        for (BigInt c(0); c < p && factors.size() < num_factors; ++c) {
            ZVec vc = v;
            vc[0] = mod_pos(vc[0] - c, p);
            ztrim(vc);
            std::vector<ZVec> next;
            for (const auto& g : factors) {
                if (zdeg(g) <= 1) { next.push_back(g); continue; }
                ZVec d = zgcd_mod(g, vc, p);
                if (zdeg(d) > 0 && zdeg(d) < zdeg(g)) {
                    next.push_back(d);
                    next.push_back(zdivmod_mod(g, d, p).first);
                } else {
                    next.push_back(g);
                }
            }
            factors = std::move(next);
        }
    }
    return factors;
}

struct HenselPair {
    ZVec g, h, s, t;
};

// One quadratic lift: data valid mod m becomes valid mod m^2 (f, g, h monic).
inline HenselPair hensel_step(const ZVec& f, const HenselPair& in, const BigInt& m) {
    const BigInt m2 = m * m;
    auto mul = [&](const ZVec& a, const ZVec& b) { return zmul_mod(a, b, m2); };
    ZVec e = zsub_mod(zmod(f, m2), mul(in.g, in.h), m2);
    auto [q, r] = zdivmod_mod(mul(in.s, e), in.h, m2);
    ZVec g2 = zadd_mod(in.g, zadd_mod(mul(in.t, e), mul(q, in.g), m2), m2);
    ZVec h2 = zadd_mod(in.h, r, m2);
    ZVec b = zsub_mod(zadd_mod(mul(in.s, g2), mul(in.t, h2), m2), ZVec{BigInt(1)}, m2);
    auto [c, d] = zdivmod_mod(mul(in.s, b), h2, m2);
    ZVec s2 = zsub_mod(in.s, d, m2);
    ZVec t2 = zsub_mod(in.t, zadd_mod(mul(in.t, b), mul(c, g2), m2), m2);
    return {g2, h2, s2, t2};
}

// Lift pairwise-coprime monic factors of monic f from mod p to mod p^(2^k) > bound.
inline std::vector<ZVec> hensel_lift_list(const ZVec& f, const std::vector<ZVec>& factors,
                                          const BigInt& p, const BigInt& bound) {
    if (factors.size() == 1) {
        BigInt m = p;
        while (m <= bound) m *= m;
        return {zmod(f, m)};
    }
    size_t half = factors.size() / 2;
    ZVec g{BigInt(1)}, h{BigInt(1)};
    for (size_t i = 0; i < half; ++i) g = zmul_mod(g, factors[i], p);
    for (size_t i = half; i < factors.size(); ++i) h = zmul_mod(h, factors[i], p);
    // Bezout s*g + t*h = 1 mod p.
    ZVec r0 = g, r1 = h, s0{BigInt(1)}, s1, t0, t1{BigInt(1)};
    while (!r1.empty()) {
        auto [q, r2] = zdivmod_mod(r0, r1, p);
        ZVec s2 = zsub_mod(s0, zmul_mod(q, s1, p), p);
        ZVec t2 = zsub_mod(t0, zmul_mod(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    BigInt inv = inv_mod(r0.back(), p);
    for (auto& c : s0) c = mod_pos(c * inv, p);
    for (auto& c : t0) c = mod_pos(c * inv, p);

    HenselPair pair{zmod(g, p), zmod(h, p), s0, t0};
    BigInt m = p;
    while (m <= bound) {
        pair = hensel_step(f, pair, m);
        m = m * m;
    }
    std::vector<ZVec> left(factors.begin(), factors.begin() + half);
    std::vector<ZVec> right(factors.begin() + half, factors.end());
    std::vector<ZVec> out = hensel_lift_list(pair.g, left, p, bound);
    std::vector<ZVec> out2 = hensel_lift_list(pair.h, right, p, bound);
    out.insert(out.end(), out2.begin(), out2.end());
    return out;
}

// Exact division in Z[x]; returns (quotient, ok).
inline std::pair<ZVec, bool> zdivide_exact(const ZVec& a, const ZVec& b) {
    ZVec r = a, q;
    ztrim(r);
    if (b.empty()) return {q, false};
    if (r.empty()) return {q, true};
    if (zdeg(r) < zdeg(b)) return {q, false};
    q.assign(zdeg(r) - zdeg(b) + 1, BigInt(0));
    while (!r.empty() && zdeg(r) >= zdeg(b)) {
        BigInt f, rem;
        mpz_tdiv_qr(f.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), b.back().get_mpz_t());
        if (sgn(rem) != 0) return {q, false};
        int d = zdeg(r) - zdeg(b);
        q[d] = f;
        for (int i = 0; i <= zdeg(b); ++i) r[i + d] -= f * b[i];
        ztrim(r);
    }
    return {q, r.empty()};
}

inline void zprimitive(ZVec& a) {
    ztrim(a);
    BigInt g(0);
    for (const auto& c : a) g = gcd(g, c);
    if (sgn(g) == 0) return;
    if (sgn(a.back()) < 0) g = -g;
    for (auto& c : a) c /= g;
}

// Factor a monic squarefree integer polynomial into monic irreducible factors.
inline std::vector<ZVec> factor_monic_squarefree(const ZVec& F) {
    std::vector<ZVec> out;
    if (zdeg(F) <= 1) { out.push_back(F); return out; }

    static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
                                  101, 103, 107, 109, 113, 127, 131, 137, 139, 149};
    BigInt p(0);
    ZVec fbar;
    for (long pr : primes) {
        BigInt P(pr);
        ZVec fb = zmod(F, P);
        if (zdeg(fb) != zdeg(F)) continue;
        ZVec g = zgcd_mod(fb, zderiv(fb, P), P);
        if (zdeg(g) == 0) { p = P; fbar = fb; break; }
    }
    if (sgn(p) == 0) throw error("factor: no suitable prime found");

    std::vector<ZVec> modular = berlekamp(fbar, p);
    if (modular.size() == 1) { out.push_back(F); return out; }
    std::sort(modular.begin(), modular.end(),
              [](const ZVec& a, const ZVec& b) { return zdeg(a) < zdeg(b); });

    BigInt norm2_sq(0);
    for (const auto& c : F) norm2_sq += c * c;
    BigInt bound = (BigInt(1) << (zdeg(F) + 1)) * (sqrt(norm2_sq) + 1) * 2;

    std::vector<ZVec> lifted = hensel_lift_list(F, modular, p, bound);
    BigInt modulus = p;
    while (modulus <= bound) modulus *= modulus;

    // Subset recombination over the lifted factors.
    ZVec current = F;
    std::vector<ZVec> pool = lifted;
    size_t take = 1;
    while (2 * take <= pool.size()) {
        bool found = false;
        std::vector<size_t> idx(take);
        for (size_t i = 0; i < take; ++i) idx[i] = i;
        while (true) {
            ZVec cand{BigInt(1)};
            for (size_t i : idx) cand = zmul_mod(cand, pool[i], modulus);
            cand = zmod(cand, modulus, true);
            auto [quot, ok] = zdivide_exact(current, cand);
            if (ok) {
                out.push_back(cand);
                current = quot;
                std::vector<ZVec> rest;
                for (size_t i = 0, k = 0; i < pool.size(); ++i) {
                    if (k < idx.size() && idx[k] == i) { ++k; continue; }
                    rest.push_back(pool[i]);
                }
                pool = std::move(rest);
                found = true;
                break;
            }
            // next combination
            int pos = (int)take - 1;
            while (pos >= 0 && idx[pos] == pool.size() - take + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (size_t j = pos + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++take;
    }
    if (zdeg(current) > 0) out.push_back(current);
    return out;
}

// Irreducible primitive integer factors of a primitive squarefree F (lc > 0).
inline std::vector<ZVec> factor_squarefree_z(ZVec F) {
    std::vector<ZVec> out;
    zprimitive(F);
    if (zdeg(F) <= 0) return out;
    if (zdeg(F) == 1) { out.push_back(F); return out; }
    const BigInt b = F.back();
    if (b == 1) return factor_monic_squarefree(F);
    // Monic-ize: fhat(x) = b^(n-1) F(x/b); map factors back through x -> b*x.
    int n = zdeg(F);
    ZVec fhat(n + 1);
    BigInt pw(1);
    for (int i = n; i >= 0; --i) {
        fhat[i] = F[i] * pw;
        if (i > 0) pw *= b;
    }
    std::vector<ZVec> monic_factors = factor_monic_squarefree(fhat);
    for (auto& g : monic_factors) {
        BigInt q(1);
        for (size_t i = 0; i < g.size(); ++i) {
            g[i] *= q;
            q *= b;
        }
        zprimitive(g);
        out.push_back(g);
    }
    return out;
}

} // namespace zf_detail

// Monic irreducible factors over Q with multiplicities.
inline std::vector<std::pair<QPoly, int>> factor_rational(const QPoly& p) {
    std::vector<std::pair<QPoly, int>> out;
    if (p.degree() <= 0) return out;
    auto levels = yun_decomposition(p);
    for (size_t k = 0; k < levels.size(); ++k) {
        if (levels[k].degree() <= 0) continue;
        auto [content, zcoeffs] = integer_normalize(levels[k]);
        (void)content;
        auto zfactors = zf_detail::factor_squarefree_z(zcoeffs);
        for (const auto& zfac : zfactors) {
            QPoly f;
            f.c.reserve(zfac.size());
            for (const auto& z : zfac) f.c.emplace_back(z);
            f.trim();
            out.emplace_back(make_monic(f), (int)k + 1);
        }
    }
    return out;
}

inline bool is_irreducible_rational(const QPoly& p) {
    if (p.degree() <= 0) return false;
    if (p.degree() == 1) return true;
    if (squarefree_part(p).degree() != p.degree()) return false;
    return factor_rational(p).size() == 1;
}

} // namespace reglab

#endif
