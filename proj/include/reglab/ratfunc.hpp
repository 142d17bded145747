#ifndef REGLAB_RATFUNC_HPP
#define REGLAB_RATFUNC_HPP

// Reduced fractions of multivariate polynomials. Canonical form: gcd one
// (unless explicitly built unreduced, e.g. by normalize_nonneg), denominator
// leading graded-lex coefficient one, variables pruned to those in use.

#include <optional>
#include <string>
#include <vector>

#include "reglab/mpoly.hpp"

namespace reglab {

class RatFunc;
RatFunc reduce(MPoly num, MPoly den);
RatFunc reduce_with_hints(MPoly num, MPoly den, const std::vector<MPoly>& hints);

class RatFunc {
public:
    RatFunc() : num_(), den_(MPoly::constant(Scalar(1))), reduced_(true) {}
    explicit RatFunc(MPoly poly)
        : num_(std::move(poly)), den_(MPoly::constant(Scalar(1))), reduced_(true) {
        canonicalize();
    }

    static RatFunc from_parts_unreduced(MPoly num, MPoly den) {
        if (den.is_zero()) throw zero_denominator_error();
        RatFunc f;
        f.num_ = std::move(num);
        f.den_ = std::move(den);
        f.reduced_ = false;
        f.canonicalize();
        return f;
    }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_reduced() const { return reduced_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    // Variables of the function (union of numerator and denominator).
    std::vector<std::string> vars() const {
        auto [n, d] = MPoly::unify(num_, den_);
        return n.vars();
    }

    friend RatFunc reduce(MPoly num, MPoly den);
    friend RatFunc reduce_with_hints(MPoly num, MPoly den,
                                     const std::vector<MPoly>& hints);

    friend RatFunc operator-(const RatFunc& f) {
        RatFunc r = f;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return reduce(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.num_.is_zero()) throw zero_denominator_error();
        return reduce(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }
    RatFunc& operator/=(const RatFunc& o) { *this = *this / o; return *this; }

    // Structural equality of canonical forms.
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // Equality as functions (cross-multiplied), for unreduced representatives.
    bool eq_as_function(const RatFunc& o) const {
        return num_ * o.den_ == o.num_ * den_;
    }

    // Evaluate; order of `point` follows vars() of this function.
    Scalar eval(const std::vector<Scalar>& point) const {
        auto [n, d] = MPoly::unify(num_, den_);
        Scalar dv = d.eval(point);
        if (dv.is_zero()) throw error("RatFunc::eval: denominator vanishes at the point");
        return n.eval(point) / dv;
    }
    // Evaluate by name -> value assignment.
    Scalar eval_named(const std::vector<std::pair<std::string, Scalar>>& assign) const;

    RatFunc derivative(const std::string& var) const {
        MPoly p = num_.derivative(var) * den_ - num_ * den_.derivative(var);
        return reduce(std::move(p), den_ * den_);
    }

    std::string str() const {
        if (den_.is_constant()) {
            if (den_.constant_value() == Scalar(1)) return num_.str();
        }
        return num_.str() + "/(" + den_.str() + ")";
    }

private:
    void canonicalize() {
        if (num_.is_zero()) {
            num_ = MPoly();
            den_ = MPoly::constant(Scalar(1));
            reduced_ = true;
            return;
        }
        Scalar lead = den_.leading_coeff();
        if (!(lead == Scalar(1))) {
            Scalar inv = lead.inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
        // joint variable frame, pruned to variables actually used
        auto [n, d] = MPoly::unify(num_.prune_vars(), den_.prune_vars());
        num_ = std::move(n);
        den_ = std::move(d);
    }

    MPoly num_, den_;
    bool reduced_;
};

namespace rf_detail {

// Strip the common monomial content x^e of num and den (cheap fast path).
inline void strip_monomial_content(MPoly& num, MPoly& den) {
    auto [n, d] = MPoly::unify(num, den);
    size_t arity = n.vars().size();
    if (arity == 0 || n.is_zero() || d.is_zero()) return;
    ExpVec mn(arity, -1);
    auto scan = [&](const MPoly& p) {
        ExpVec m(arity, -1);
        for (const auto& [e, c] : p.terms())
            for (size_t i = 0; i < arity; ++i)
                m[i] = (m[i] < 0) ? e[i] : std::min(m[i], e[i]);
        return m;
    };
    ExpVec a = scan(n), b = scan(d);
    bool any = false;
    for (size_t i = 0; i < arity; ++i) {
        mn[i] = std::min(a[i], b[i]);
        if (mn[i] > 0) any = true;
    }
    if (!any) { num = std::move(n); den = std::move(d); return; }
    auto strip = [&](const MPoly& p) {
        MPoly::TermMap t;
        for (const auto& [e, c] : p.terms()) {
            ExpVec e2 = e;
            for (size_t i = 0; i < arity; ++i) e2[i] -= mn[i];
            t.emplace(std::move(e2), c);
        }
        return MPoly::from_terms(p.vars(), std::move(t));
    };
    num = strip(n);
    den = strip(d);
}

} // namespace rf_detail

inline RatFunc reduce_with_hints(MPoly num, MPoly den,
                                 const std::vector<MPoly>& hints) {
    if (den.is_zero()) throw zero_denominator_error();
    RatFunc f;
    if (num.is_zero()) {
        f.num_ = MPoly();
        f.den_ = MPoly::constant(Scalar(1));
        f.reduced_ = true;
        return f;
    }
    rf_detail::strip_monomial_content(num, den);
    for (const auto& h : hints) {
        if (h.is_constant()) continue;
        while (true) {
            auto qn = num.divide_exact(h);
            if (!qn) break;
            auto qd = den.divide_exact(h);
            if (!qd) break;
            num = std::move(*qn);
            den = std::move(*qd);
        }
    }
    MPoly g = mpoly_gcd(num, den);
    if (!g.is_constant()) {
        num = *num.divide_exact(g);
        den = *den.divide_exact(g);
    }
    f.num_ = std::move(num);
    f.den_ = std::move(den);
    f.reduced_ = true;
    f.canonicalize();
    return f;
}

inline RatFunc reduce(MPoly num, MPoly den) {
    return reduce_with_hints(std::move(num), std::move(den), {});
}

inline Scalar RatFunc::eval_named(
    const std::vector<std::pair<std::string, Scalar>>& assign) const {
    auto vs = vars();
    std::vector<Scalar> point;
    for (const auto& v : vs) {
        bool found = false;
        for (const auto& [name, val] : assign)
            if (name == v) {
                point.push_back(val);
                found = true;
                break;
            }
        if (!found) throw error("RatFunc::eval_named: missing variable " + v);
    }
    return eval(point);
}

// f written with a square denominator: (P*Q)/(Q^2), no cancellation. When the
// denominator is already a perfect square the function is returned unchanged.
inline RatFunc normalize_nonneg(const RatFunc& f) {
    if (f.den().is_constant()) return f;
    if (mpoly_sqrt(f.den())) return f;
    return RatFunc::from_parts_unreduced(f.num() * f.den(), f.den() * f.den());
}

} // namespace reglab

#endif
