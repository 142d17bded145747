#ifndef REGLAB_MPOLY_HPP
#define REGLAB_MPOLY_HPP

// Sparse multivariate polynomials over Scalar, with graded-lex term order,
// gcd by primitive PRS recursion, subresultant-PRS resultants, and exact
// square-root extraction.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reglab/scalar.hpp"

namespace reglab {

using ExpVec = std::vector<int>;

// Graded lexicographic: total degree first, then earlier variable wins.
struct GradedLexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

class MPoly {
public:
    using TermMap = std::map<ExpVec, Scalar, GradedLexLess>;

    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    explicit MPoly(const Scalar& c) {
        if (!c.is_zero()) terms_[ExpVec{}] = c;
    }

    static MPoly constant(Scalar c, std::vector<std::string> vars = {}) {
        MPoly p(std::move(vars));
        if (!c.is_zero()) p.terms_[ExpVec(p.vars_.size(), 0)] = std::move(c);
        return p;
    }
    static MPoly variable(const std::string& name) {
        MPoly p(std::vector<std::string>{name});
        p.terms_[ExpVec{1}] = Scalar(1);
        return p;
    }
    static MPoly from_terms(std::vector<std::string> vars, TermMap terms) {
        MPoly p(std::move(vars));
        for (auto& [e, c] : terms)
            if (!c.is_zero()) p.terms_.emplace(e, c);
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (int e : terms_.begin()->first)
            if (e) return false;
        return true;
    }
    Scalar constant_value() const {
        if (terms_.empty()) return Scalar(0);
        return terms_.begin()->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d; // -1 for the zero polynomial
    }
    int degree_in(const std::string& var) const {
        int idx = var_index(var);
        if (idx < 0) return 0;
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
        return d;
    }

    const Scalar& leading_coeff() const {
        static const Scalar zero(0);
        if (terms_.empty()) return zero;
        return terms_.rbegin()->second;
    }
    const ExpVec& leading_exponent() const { return terms_.rbegin()->first; }

    friend MPoly operator-(const MPoly& a) {
        MPoly r(a.vars_);
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        auto [x, y] = unify(a, b);
        for (const auto& [e, c] : y.terms_) {
            auto it = x.terms_.find(e);
            if (it == x.terms_.end()) {
                x.terms_.emplace(e, c);
            } else {
                it->second += c;
                if (it->second.is_zero()) x.terms_.erase(it);
            }
        }
        return x;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        auto [x, y] = unify(a, b);
        MPoly r(x.vars_);
        for (const auto& [ea, ca] : x.terms_) {
            for (const auto& [eb, cb] : y.terms_) {
                ExpVec e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                Scalar c = ca * cb;
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) {
                    if (!c.is_zero()) r.terms_.emplace(std::move(e), std::move(c));
                } else {
                    it->second += c;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    friend MPoly operator*(const MPoly& a, const Scalar& s) {
        if (s.is_zero()) return MPoly(a.vars_);
        MPoly r(a.vars_);
        for (const auto& [e, c] : a.terms_) {
            Scalar v = c * s;
            if (!v.is_zero()) r.terms_.emplace(e, std::move(v));
        }
        return r;
    }
    friend MPoly operator/(const MPoly& a, const Scalar& s) { return a * s.inverse(); }

    MPoly& operator+=(const MPoly& o) { *this = *this + o; return *this; }
    MPoly& operator-=(const MPoly& o) { *this = *this - o; return *this; }
    MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }

    MPoly pow(unsigned e) const {
        MPoly acc = MPoly::constant(Scalar(1), vars_);
        MPoly b = *this;
        unsigned k = e;
        while (k) {
            if (k & 1u) acc *= b;
            k >>= 1u;
            if (k) b *= b;
        }
        return acc;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        auto [x, y] = unify(a, b);
        if (x.terms_.size() != y.terms_.size()) return false;
        auto it = x.terms_.begin();
        auto jt = y.terms_.begin();
        for (; it != x.terms_.end(); ++it, ++jt) {
            if (it->first != jt->first) return false;
            if (!(it->second == jt->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly derivative(const std::string& var) const {
        int idx = var_index(var);
        MPoly r(vars_);
        if (idx < 0) return r;
        for (const auto& [e, c] : terms_) {
            if (e[idx] == 0) continue;
            ExpVec e2 = e;
            e2[idx] -= 1;
            Scalar v = c * Scalar((long)e[idx]);
            auto it = r.terms_.find(e2);
            if (it == r.terms_.end()) r.terms_.emplace(std::move(e2), std::move(v));
            else it->second += v;
        }
        for (auto it = r.terms_.begin(); it != r.terms_.end();)
            it = it->second.is_zero() ? r.terms_.erase(it) : std::next(it);
        return r;
    }

    Scalar eval(const std::vector<Scalar>& point) const {
        if ((size_t)point.size() != vars_.size())
            throw error("MPoly::eval: arity mismatch");
        Scalar acc(0);
        for (const auto& [e, c] : terms_) {
            Scalar t = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    // Evaluate into any commutative ring R with R(Scalar), *, +.
    template <class R>
    R eval_ring(const std::vector<R>& values, const R& one) const {
        if ((size_t)values.size() != vars_.size())
            throw error("MPoly::eval_ring: arity mismatch");
        // cache powers per variable
        std::vector<std::vector<R>> pows(values.size());
        for (size_t i = 0; i < values.size(); ++i) pows[i].push_back(one);
        R acc = R(Scalar(0));
        for (const auto& [e, c] : terms_) {
            R t = R(c);
            for (size_t i = 0; i < e.size(); ++i) {
                while ((int)pows[i].size() <= e[i])
                    pows[i].push_back(pows[i].back() * values[i]);
                if (e[i] > 0) t = t * pows[i][e[i]];
            }
            acc = acc + t;
        }
        return acc;
    }

    // Substitute each variable by x_i + p_i.
    MPoly translate(const std::vector<Scalar>& p) const {
        if ((size_t)p.size() != vars_.size()) throw error("MPoly::translate: arity mismatch");
        std::vector<MPoly> shifted;
        for (size_t i = 0; i < vars_.size(); ++i)
            shifted.push_back(MPoly::variable(vars_[i]) + MPoly::constant(p[i]));
        return eval_ring<MPoly>(shifted, MPoly::constant(Scalar(1)));
    }

    // Split into homogeneous components by total degree; index = degree.
    std::vector<MPoly> homogeneous_components() const {
        std::vector<MPoly> out;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (int x : e) d += x;
            while ((int)out.size() <= d) out.emplace_back(vars_);
            out[d].terms_.emplace(e, c);
        }
        return out;
    }

    // Coefficients as polynomials in the remaining variables, indexed by the
    // exponent of `var`.
    std::vector<MPoly> coeffs_in(const std::string& var) const {
        int idx = var_index(var);
        std::vector<MPoly> out;
        if (idx < 0) {
            if (!is_zero()) out.push_back(*this);
            return out;
        }
        for (const auto& [e, c] : terms_) {
            int k = e[idx];
            while ((int)out.size() <= k) out.emplace_back(vars_);
            ExpVec e2 = e;
            e2[idx] = 0;
            out[k].terms_.emplace(std::move(e2), c);
        }
        if (out.empty()) out.emplace_back(vars_);
        return out;
    }

    static MPoly from_coeffs_in(const std::string& var, const std::vector<MPoly>& coeffs) {
        MPoly r;
        MPoly v = MPoly::variable(var);
        for (size_t k = coeffs.size(); k-- > 0;)
            r = r * v + coeffs[k];
        return r;
    }

    std::optional<MPoly> divide_exact(const MPoly& divisor) const;

    // Drop variables that no longer occur; canonical for comparisons/printing.
    MPoly prune_vars() const {
        std::vector<bool> used(vars_.size(), false);
        for (const auto& [e, c] : terms_)
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i]) used[i] = true;
        std::vector<std::string> nv;
        std::vector<int> map;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) { map.push_back((int)i); nv.push_back(vars_[i]); }
        MPoly r(nv);
        for (const auto& [e, c] : terms_) {
            ExpVec e2(map.size());
            for (size_t i = 0; i < map.size(); ++i) e2[i] = e[map[i]];
            r.terms_.emplace(std::move(e2), c);
        }
        return r;
    }

    MPoly with_vars(const std::vector<std::string>& target) const {
        return remap(*this, target);
    }

    int var_index(const std::string& var) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
        if (it == vars_.end() || *it != var) return -1;
        return (int)(it - vars_.begin());
    }

    std::string str() const;

    static std::pair<MPoly, MPoly> unify(const MPoly& a, const MPoly& b) {
        if (a.vars_ == b.vars_) return {a, b};
        std::vector<std::string> vs;
        std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                       std::back_inserter(vs));
        return {remap(a, vs), remap(b, vs)};
    }

private:
    static MPoly remap(const MPoly& p, const std::vector<std::string>& target) {
        MPoly r(target);
        std::vector<int> pos(p.vars_.size());
        for (size_t i = 0; i < p.vars_.size(); ++i) {
            auto it = std::lower_bound(target.begin(), target.end(), p.vars_[i]);
            if (it == target.end() || *it != p.vars_[i])
                throw error("MPoly: variable missing in remap target");
            pos[i] = (int)(it - target.begin());
        }
        for (const auto& [e, c] : p.terms_) {
            ExpVec e2(target.size(), 0);
            for (size_t i = 0; i < e.size(); ++i) e2[pos[i]] = e[i];
            r.terms_.emplace(std::move(e2), c);
        }
        return r;
    }

    std::vector<std::string> vars_; // sorted ascending
    TermMap terms_;                 // no zero coefficients stored
};

inline std::optional<MPoly> MPoly::divide_exact(const MPoly& divisor) const {
    if (divisor.is_zero()) return std::nullopt;
    auto [a, b] = unify(*this, divisor);
    MPoly q(a.vars_);
    MPoly r = a;
    const ExpVec& lb = b.leading_exponent();
    const Scalar& cb = b.leading_coeff();
    while (!r.is_zero()) {
        const ExpVec& lr = r.leading_exponent();
        ExpVec e(lr.size());
        for (size_t i = 0; i < e.size(); ++i) {
            e[i] = lr[i] - lb[i];
            if (e[i] < 0) return std::nullopt;
        }
        Scalar c = r.leading_coeff() / cb;
        MPoly t(a.vars_);
        t.terms_.emplace(std::move(e), std::move(c));
        q += t;
        r -= t * b;
    }
    return q;
}

namespace mp_detail {

// --- univariate view helpers (vectors of MPoly coefficients) ---

inline void vtrim(std::vector<MPoly>& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
}
inline int vdeg(const std::vector<MPoly>& v) { return (int)v.size() - 1; }

inline std::vector<MPoly> vmul(const std::vector<MPoly>& a, const std::vector<MPoly>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<MPoly> r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    vtrim(r);
    return r;
}

inline std::vector<MPoly> vscale(const std::vector<MPoly>& a, const MPoly& s) {
    std::vector<MPoly> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    vtrim(r);
    return r;
}

inline std::vector<MPoly> vsub(const std::vector<MPoly>& a, const std::vector<MPoly>& b) {
    std::vector<MPoly> r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    vtrim(r);
    return r;
}

// Pseudo-remainder: exactly lc(B)^(deg A - deg B + 1) * A  mod  B.
inline std::vector<MPoly> vprem(std::vector<MPoly> a, const std::vector<MPoly>& b) {
    int db = vdeg(b);
    const MPoly& lcb = b.back();
    int want = vdeg(a) - db + 1;
    int applied = 0;
    while (!a.empty() && vdeg(a) >= db) {
        int d = vdeg(a) - db;
        MPoly lca = a.back();
        a = vscale(a, lcb);
        ++applied;
        std::vector<MPoly> shifted(d, MPoly{});
        for (const auto& bc : b) shifted.push_back(bc * lca);
        a = vsub(a, shifted);
        if (vdeg(a) >= db + d)
            throw error("vprem: degree did not drop");
    }
    for (; applied < want; ++applied) a = vscale(a, lcb);
    return a;
}

inline std::vector<MPoly> vdiv_exact(const std::vector<MPoly>& a, const MPoly& s) {
    std::vector<MPoly> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) { r[i] = a[i]; continue; }
        auto q = a[i].divide_exact(s);
        if (!q) throw error("vdiv_exact: inexact division");
        r[i] = *q;
    }
    vtrim(r);
    return r;
}

} // namespace mp_detail

MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

namespace mp_detail {

inline MPoly content_of(const std::vector<MPoly>& coeffs) {
    MPoly g;
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : mpoly_gcd(g, c);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) return g;
    return g / g.leading_coeff(); // monic normalization
}

} // namespace mp_detail

// gcd via content/primitive-part recursion with a primitive PRS; result is
// normalized to leading (graded-lex) coefficient one.
inline MPoly mpoly_gcd(const MPoly& a_in, const MPoly& b_in) {
    if (a_in.is_zero()) return b_in.is_zero() ? b_in : b_in / b_in.leading_coeff();
    if (b_in.is_zero()) return a_in / a_in.leading_coeff();
    auto [a, b] = MPoly::unify(a_in, b_in);
    // pick the first variable that actually occurs
    std::string main;
    for (const auto& v : a.vars()) {
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) { main = v; break; }
    }
    if (main.empty()) return MPoly::constant(Scalar(1), a.vars());

    using namespace mp_detail;
    std::vector<MPoly> A = a.coeffs_in(main), B = b.coeffs_in(main);
    vtrim(A);
    vtrim(B);
    MPoly contA = content_of(A), contB = content_of(B);
    A = vdiv_exact(A, contA);
    B = vdiv_exact(B, contB);
    MPoly cont = mpoly_gcd(contA, contB);

    if (vdeg(A) < vdeg(B)) std::swap(A, B);
    while (!B.empty() && vdeg(B) >= 0) {
        if (vdeg(B) == 0) {
            // coprime in the main variable
            return cont.is_zero() ? MPoly::constant(Scalar(1), a.vars()) : cont;
        }
        std::vector<MPoly> R = vprem(A, B);
        vtrim(R);
        if (R.empty()) {
            A = std::move(B);
            break;
        }
        MPoly c = content_of(R);
        R = vdiv_exact(R, c);
        A = std::move(B);
        B = std::move(R);
    }
    MPoly pp = MPoly::from_coeffs_in(main, A);
    MPoly g = cont * pp;
    return g / g.leading_coeff();
}

// Resultant with respect to one variable; subresultant PRS (Collins).
inline MPoly mpoly_resultant(const MPoly& a_in, const MPoly& b_in, const std::string& var) {
    using namespace mp_detail;
    auto [a, b] = MPoly::unify(a_in, b_in);
    if (a.is_zero() || b.is_zero()) return MPoly(a.vars());
    std::vector<MPoly> A = a.coeffs_in(var), B = b.coeffs_in(var);
    vtrim(A);
    vtrim(B);
    int da = vdeg(A), db = vdeg(B);
    if (da < 0 || db < 0) return MPoly(a.vars());
    int s = 1;
    if (da < db) {
        std::swap(A, B);
        std::swap(da, db);
        if ((da % 2) && (db % 2)) s = -s;
    }
    if (db == 0) {
        // res = B^da
        MPoly r = MPoly::constant(Scalar(1), a.vars());
        for (int i = 0; i < da; ++i) r *= B[0];
        return r;
    }
    MPoly one = MPoly::constant(Scalar(1), a.vars());
    MPoly g = one, h = one;
    while (true) {
        da = vdeg(A);
        db = vdeg(B);
        int delta = da - db;
        if ((da % 2) && (db % 2)) s = -s;
        std::vector<MPoly> R = vprem(A, B);
        vtrim(R);
        A = std::move(B);
        // divide R by g*h^delta
        MPoly divisor = g;
        for (int i = 0; i < delta; ++i) divisor *= h;
        if (!R.empty()) R = vdiv_exact(R, divisor);
        B = std::move(R);
        g = A.back();
        if (delta > 0) {
            // h = g^delta / h^(delta-1)
            MPoly num = one;
            for (int i = 0; i < delta; ++i) num *= g;
            MPoly den = one;
            for (int i = 0; i < delta - 1; ++i) den *= h;
            auto q = num.divide_exact(den);
            if (!q) throw error("mpoly_resultant: inexact h update");
            h = *q;
        }
        if (B.empty()) return MPoly(a.vars()); // common factor: resultant 0
        if (vdeg(B) == 0) {
            int dA = vdeg(A);
            MPoly num = one;
            for (int i = 0; i < dA; ++i) num *= B[0];
            MPoly den = one;
            for (int i = 0; i < dA - 1; ++i) den *= h;
            auto q = num.divide_exact(den);
            if (!q) throw error("mpoly_resultant: inexact final division");
            MPoly r = *q;
            return s < 0 ? -r : r;
        }
    }
}

// Exact square root of a perfect-square polynomial.
inline std::optional<MPoly> mpoly_sqrt(const MPoly& q) {
    if (q.is_zero()) return q;
    if (q.is_constant()) {
        auto s = try_sqrt(q.constant_value());
        if (!s) return std::nullopt;
        return MPoly::constant(*s, q.vars());
    }
    if (q.leading_coeff().sign() < 0) return std::nullopt;
    if (q.total_degree() % 2) return std::nullopt;
    // radical via gcd with all partials
    MPoly d = q;
    for (const auto& v : q.vars()) {
        MPoly dv = q.derivative(v);
        if (dv.is_zero()) continue;
        d = mpoly_gcd(d, dv);
        if (d.is_constant()) break;
    }
    if (d.is_constant()) return std::nullopt; // squarefree non-constant: not a square
    auto rad = q.divide_exact(d);
    if (!rad) throw error("mpoly_sqrt: radical division failed");
    auto rad2 = (*rad) * (*rad);
    auto rest = q.divide_exact(rad2);
    if (!rest) return std::nullopt;
    auto tail = mpoly_sqrt(*rest);
    if (!tail) return std::nullopt;
    return (*rad) * (*tail);
}

inline std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // graded-lex descending
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const ExpVec& e = it->first;
        const Scalar& c = it->second;
        bool has_vars = false;
        for (int x : e)
            if (x) { has_vars = true; break; }
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cstr;
        bool neg = false;
        if (c.is_rational()) {
            BigRat q = c.rat();
            neg = sgn(q) < 0;
            BigRat aq = neg ? BigRat(-q) : q;
            if (!has_vars || aq != 1) {
                cstr = to_string(aq);
                if (has_vars) cstr += "*";
            }
        } else {
            cstr = "(" + c.str() + ")";
            if (has_vars) cstr += "*";
        }
        std::string term = cstr + mono;
        if (out.empty()) out = (neg ? "-" : "") + term;
        else out += (neg ? "-" : "+") + term;
    }
    return out;
}

// Least total degree of a nonzero homogeneous component after translating
// the origin to p.
inline int mult_at(const MPoly& q, const std::vector<Scalar>& p) {
    if (q.is_zero()) throw error("mult_at: zero polynomial");
    MPoly t = q.translate(p);
    int m = -1;
    for (const auto& [e, c] : t.terms()) {
        int d = 0;
        for (int x : e) d += x;
        if (m < 0 || d < m) m = d;
    }
    return m;
}

inline std::vector<MPoly> homogeneous_components(const MPoly& q) {
    if (q.is_zero()) return {};
    return q.homogeneous_components();
}

} // namespace reglab

#endif
