#ifndef REGLAB_SERIES_HPP
#define REGLAB_SERIES_HPP

// Truncated power series over Scalar. A series carries coefficients
// c[0..N]; arithmetic results carry the minimum of the operand orders,
// with the usual precision loss under division and square roots.

#include <string>
#include <vector>

#include "reglab/mpoly.hpp"
#include "reglab/ratfunc.hpp"

namespace reglab {

struct series_sqrt_error : error {
    series_sqrt_error(const std::string& msg, Scalar rad, bool odd_val)
        : error(msg), radicand(std::move(rad)), odd_valuation(odd_val) {}
    Scalar radicand;
    bool odd_valuation;
};

class TruncSeries {
public:
    TruncSeries() : var_("s") {}
    TruncSeries(std::string var, std::vector<Scalar> coeffs)
        : var_(std::move(var)), c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(Scalar(0));
    }

    static TruncSeries constant(const Scalar& v, const std::string& var, int order) {
        std::vector<Scalar> c(order + 1, Scalar(0));
        c[0] = v;
        return TruncSeries(var, std::move(c));
    }
    static TruncSeries identity(const std::string& var, int order) {
        std::vector<Scalar> c(order + 1, Scalar(0));
        if (order >= 1) c[1] = Scalar(1);
        return TruncSeries(var, std::move(c));
    }

    const std::string& var() const { return var_; }
    int order() const { return (int)c_.size() - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    const Scalar& coeff(int i) const {
        static const Scalar zero(0);
        return (i >= 0 && i <= order()) ? c_[i] : zero;
    }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    // Valuation: first index with nonzero coefficient; -1 when none visible.
    int valuation() const {
        for (int i = 0; i <= order(); ++i)
            if (!c_[i].is_zero()) return i;
        return -1;
    }

    TruncSeries truncated(int new_order) const {
        std::vector<Scalar> c(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), new_order + 1));
        c.resize(new_order + 1, Scalar(0));
        return TruncSeries(var_, std::move(c));
    }

    friend TruncSeries operator-(const TruncSeries& a) {
        std::vector<Scalar> c;
        for (const auto& x : a.c_) c.push_back(-x);
        return TruncSeries(a.var_, std::move(c));
    }
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        int n = std::min(a.order(), b.order());
        std::vector<Scalar> c(n + 1);
        for (int i = 0; i <= n; ++i) c[i] = a.c_[i] + b.c_[i];
        return TruncSeries(a.var_, std::move(c));
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        return a + (-b);
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        int n = std::min(a.order(), b.order());
        std::vector<Scalar> c(n + 1, Scalar(0));
        for (int i = 0; i <= n; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = 0; i + j <= n && j <= b.order(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        }
        return TruncSeries(a.var_, std::move(c));
    }
    friend TruncSeries operator*(const TruncSeries& a, const Scalar& s) {
        std::vector<Scalar> c;
        for (const auto& x : a.c_) c.push_back(x * s);
        return TruncSeries(a.var_, std::move(c));
    }

    // Division: requires val(b) <= val(a); output order min(Na,Nb) - val(b).
    friend TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) {
        int vb = b.valuation();
        if (vb < 0) throw error("TruncSeries: division by zero series");
        int va = a.valuation();
        if (!a.is_zero() && va < vb)
            throw error("TruncSeries: division would produce negative valuation");
        int n = std::min(a.order(), b.order());
        int out_order = n - vb;
        if (out_order < 0) throw error("TruncSeries: division loses all precision");
        // strip s^vb from both
        std::vector<Scalar> ac, bc;
        for (int i = vb; i <= n; ++i) {
            ac.push_back(a.coeff(i));
            bc.push_back(b.coeff(i));
        }
        std::vector<Scalar> q(out_order + 1, Scalar(0));
        Scalar inv = bc[0].inverse();
        for (int i = 0; i <= out_order; ++i) {
            Scalar acc = (i < (int)ac.size()) ? ac[i] : Scalar(0);
            for (int j = 0; j < i; ++j)
                if (i - j < (int)bc.size()) acc -= q[j] * bc[i - j];
            q[i] = acc * inv;
        }
        return TruncSeries(a.var_, std::move(q));
    }

    std::string str() const;

private:
    std::string var_;
    std::vector<Scalar> c_;
};

// Square root; requires even valuation and a leading coefficient that is a
// square in the current field. Otherwise throws, carrying the radicand.
inline TruncSeries series_sqrt(const TruncSeries& s) {
    if (s.is_zero()) return s;
    int v = s.valuation();
    Scalar lead = s.coeff(v);
    if (v % 2)
        throw series_sqrt_error("series_sqrt: odd valuation", lead, true);
    if (lead.sign() < 0)
        throw series_sqrt_error("series_sqrt: negative leading coefficient", lead, false);
    auto r0 = try_sqrt(lead);
    if (!r0)
        throw series_sqrt_error("series_sqrt: requires field extension", lead, false);
    int n = s.order();
    int m = n - v; // precision of the unit part
    // unit u with s = lead * s^v * u, u(0) = 1
    std::vector<Scalar> u(m + 1, Scalar(0));
    Scalar inv_lead = lead.inverse();
    for (int i = 0; i <= m; ++i) u[i] = s.coeff(v + i) * inv_lead;
    // w = sqrt(u): w0 = 1, 2*w_k = u_k - sum_{j=1}^{k-1} w_j w_{k-j}
    std::vector<Scalar> w(m + 1, Scalar(0));
    w[0] = Scalar(1);
    Scalar half(BigRat(1, 2));
    for (int k = 1; k <= m; ++k) {
        Scalar acc = u[k];
        for (int j = 1; j < k; ++j) acc -= w[j] * w[k - j];
        w[k] = acc * half;
    }
    // result = r0 * s^(v/2) * w, at order n - v/2
    int half_v = v / 2;
    int out_order = n - half_v;
    std::vector<Scalar> out(out_order + 1, Scalar(0));
    for (int i = 0; i <= m && half_v + i <= out_order; ++i) out[half_v + i] = *r0 * w[i];
    return TruncSeries(s.var(), std::move(out));
}

// Evaluate a polynomial at series arguments, truncating at `order`.
inline TruncSeries series_eval(const MPoly& p, const std::vector<TruncSeries>& values,
                               int order) {
    const std::string& var = values.empty() ? "s" : values[0].var();
    TruncSeries acc = TruncSeries::constant(Scalar(0), var, order);
    std::vector<std::vector<TruncSeries>> pows(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        pows[i].push_back(TruncSeries::constant(Scalar(1), var, order));
    for (const auto& [e, c] : p.terms()) {
        TruncSeries t = TruncSeries::constant(c, var, order);
        for (size_t i = 0; i < values.size(); ++i) {
            while ((int)pows[i].size() <= e[i])
                pows[i].push_back((pows[i].back() * values[i]).truncated(order));
            if (e[i] > 0) t = (t * pows[i][e[i]]).truncated(order);
        }
        acc = acc + t;
    }
    return acc;
}

// Evaluate a rational function at series arguments (denominator must be a
// unit or of valuation <= numerator's).
inline TruncSeries series_eval(const RatFunc& f, const std::vector<TruncSeries>& values,
                               int order) {
    auto vs = f.vars();
    if (vs.size() != values.size()) throw error("series_eval: arity mismatch");
    auto [n, d] = MPoly::unify(f.num().with_vars(vs), f.den().with_vars(vs));
    TruncSeries nn = series_eval(n, values, order);
    TruncSeries dd = series_eval(d, values, order);
    return nn / dd;
}

inline std::string TruncSeries::str() const {
    std::string out;
    for (int i = 0; i <= order(); ++i) {
        if (c_[i].is_zero()) continue;
        std::string term;
        bool neg = false;
        if (c_[i].is_rational()) {
            BigRat q = c_[i].rat();
            neg = sgn(q) < 0;
            BigRat aq = neg ? BigRat(-q) : q;
            if (i == 0) term = to_string(aq);
            else {
                if (aq != 1) term = to_string(aq) + "*";
                term += var_;
                if (i > 1) term += "^" + std::to_string(i);
            }
        } else {
            term = "(" + c_[i].str() + ")";
            if (i >= 1) {
                term += "*" + var_;
                if (i > 1) term += "^" + std::to_string(i);
            }
        }
        if (out.empty()) out = (neg ? "-" : "") + term;
        else out += (neg ? "-" : "+") + term;
    }
    if (out.empty()) out = "0";
    return out + " + O(" + var_ + "^" + std::to_string(order() + 1) + ")";
}

} // namespace reglab

#endif
