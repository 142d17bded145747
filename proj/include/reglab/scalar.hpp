#ifndef REGLAB_SCALAR_HPP
#define REGLAB_SCALAR_HPP

// Exact scalars: rationals or elements of a simple real algebraic extension
// Q(alpha), with deterministic sign computation via interval refinement.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reglab/errors.hpp"
#include "reglab/interval.hpp"
#include "reglab/rootisol.hpp"
#include "reglab/upoly.hpp"
#include "reglab/zfactor.hpp"

namespace reglab {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Q(alpha) described by a monic squarefree defining polynomial plus an
// isolating interval singling out the intended real root alpha. Fields built
// through field_adjoin carry verified-irreducible defining polynomials;
// solver-internal fields may be squarefree only, which every algorithm here
// tolerates (zero tests then go through gcd + root counting).
class NumberField {
public:
    NumberField(QPoly defining, QInterval iso, bool irreducible_verified)
        : defining_(make_monic(std::move(defining))),
          irreducible_(irreducible_verified),
          iso_(std::move(iso)) {
        if (defining_.degree() < 2)
            throw error("NumberField: defining polynomial must have degree >= 2");
    }

    const QPoly& minpoly() const { return defining_; }
    int degree() const { return defining_.degree(); }
    bool irreducible_verified() const { return irreducible_; }

    QInterval interval(const BigRat& width) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (!iso_.is_point() && iso_.width() > width) bisect_locked();
        return iso_;
    }
    QInterval interval_bits(unsigned bits) const {
        return interval(BigRat(1, BigInt(1) << bits));
    }
    QInterval current_interval() const {
        std::lock_guard<std::mutex> lock(mu_);
        return iso_;
    }

    // Shrink until no endpoint is a root of q.
    QInterval interval_avoiding(const QPoly& q) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (!iso_.is_point() &&
               (sgn(q.eval<BigRat>(iso_.lo)) == 0 || sgn(q.eval<BigRat>(iso_.hi)) == 0))
            bisect_locked();
        return iso_;
    }

private:
    void bisect_locked() const {
        BigRat m = iso_.mid();
        int sm = sgn(defining_.eval<BigRat>(m));
        if (sm == 0) { // alpha is rational; only reachable for unverified fields
            iso_ = QInterval(m);
            return;
        }
        int slo = sgn(defining_.eval<BigRat>(iso_.lo));
        if (slo == sm) iso_.lo = m;
        else iso_.hi = m;
    }

    QPoly defining_;
    bool irreducible_;
    mutable std::mutex mu_;
    mutable QInterval iso_;
};

class Scalar {
public:
    Scalar() : rat_(0) {}
    Scalar(int v) : rat_(v) {}
    Scalar(long v) : rat_(v) {}
    Scalar(BigRat v) : rat_(std::move(v)) {}
    Scalar(BigInt v) : rat_(BigRat(std::move(v))) {}

    Scalar(FieldPtr f, QPoly rep) : rat_(0), fld_(std::move(f)), rep_(std::move(rep)) {
        normalize();
    }

    static Scalar generator(const FieldPtr& f) { return Scalar(f, QPoly::x()); }

    bool is_rational() const { return !fld_; }
    const BigRat& rat() const {
        if (!is_rational()) throw error("Scalar: not rational");
        return rat_;
    }
    const FieldPtr& field() const { return fld_; }
    const QPoly& rep() const { return rep_; }

    bool is_zero() const {
        if (is_rational()) return sgn(rat_) == 0;
        if (rep_.is_zero()) return true;
        if (fld_->irreducible_verified()) return false;
        return value_vanishes(rep_, fld_);
    }

    int sign() const {
        if (is_rational()) return sgn(rat_);
        if (is_zero()) return 0;
        unsigned bits = 8;
        while (true) {
            QInterval e = enclosure(bits);
            int s = e.known_sign();
            if (s != 0) return s;
            bits *= 2;
            if (bits > (1u << 22)) throw error("Scalar::sign: refinement did not converge");
        }
    }

    QInterval enclosure(unsigned bits) const {
        if (is_rational()) return QInterval(rat_);
        QInterval a = fld_->interval_bits(bits);
        QInterval acc{BigRat(0)};
        for (int i = rep_.degree(); i >= 0; --i)
            acc = acc * a + QInterval(rep_.c[i]);
        return acc;
    }

    friend Scalar operator-(const Scalar& a) {
        if (a.is_rational()) return Scalar(BigRat(-a.rat_));
        return Scalar(a.fld_, -a.rep_);
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return binary_op(a, b, Op::Add); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return binary_op(a, b, Op::Sub); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return binary_op(a, b, Op::Mul); }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.is_rational() && b.is_rational()) return a.rat_ == b.rat_;
        return (a - b).is_zero();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return (a - b).sign() <= 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return (a - b).sign() > 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0; }

    Scalar inverse() const {
        if (is_rational()) {
            if (sgn(rat_) == 0) throw error("Scalar: division by zero");
            return Scalar(BigRat(1 / rat_));
        }
        if (fld_->irreducible_verified()) {
            if (rep_.is_zero()) throw error("Scalar: division by zero");
            QPoly u, v;
            QPoly g = extended_gcd(rep_, fld_->minpoly(), u, v);
            if (g.degree() != 0) throw error("Scalar: inverse failed in verified field");
            return Scalar(fld_, u % fld_->minpoly());
        }
        // Squarefree-only defining polynomial: peel the factors not owning alpha.
        QPoly h = fld_->minpoly();
        QPoly r = rep_ % h;
        if (r.is_zero()) throw error("Scalar: division by zero");
        while (true) {
            QPoly g = gcd(r, h);
            if (g.degree() == 0) {
                QPoly u, v;
                extended_gcd(r, h, u, v);
                return Scalar(fld_, u % fld_->minpoly());
            }
            if (root_in_my_interval(g)) throw error("Scalar: division by zero");
            h = h / g;
            if (h.degree() == 0) throw error("Scalar: inverse lost the root");
            r = r % h;
            if (r.is_zero()) throw error("Scalar: division by zero");
        }
    }

    double to_double() const {
        if (is_rational()) return rat_.get_d();
        return enclosure(64).mid().get_d();
    }

    std::string str() const;

private:
    enum class Op { Add, Sub, Mul };

    static QPoly apply(Op op, const QPoly& x, const QPoly& y, const QPoly& m) {
        switch (op) {
            case Op::Add: return x + y;
            case Op::Sub: return x - y;
            default: return (x * y) % m;
        }
    }
    static BigRat apply(Op op, const BigRat& x, const BigRat& y) {
        switch (op) {
            case Op::Add: return x + y;
            case Op::Sub: return x - y;
            default: return x * y;
        }
    }

    static Scalar binary_op(const Scalar& a, const Scalar& b, Op op);

    void normalize() {
        if (!fld_) return;
        rep_ = rep_ % fld_->minpoly();
        if (rep_.degree() <= 0) {
            rat_ = rep_.is_zero() ? BigRat(0) : rep_.c[0];
            fld_.reset();
            rep_ = QPoly();
            return;
        }
        QInterval iso = fld_->current_interval();
        if (iso.is_point()) { // collapsed internal field: alpha turned out rational
            rat_ = rep_.eval<BigRat>(iso.lo);
            fld_.reset();
            rep_ = QPoly();
        }
    }

    bool root_in_my_interval(const QPoly& g) const {
        QInterval iv = fld_->interval_avoiding(g);
        if (iv.is_point()) return sgn(g.eval<BigRat>(iv.lo)) == 0;
        return count_roots_in(g, iv.lo, iv.hi) > 0;
    }

    static bool value_vanishes(const QPoly& rep, const FieldPtr& f) {
        QPoly g = gcd(rep % f->minpoly(), f->minpoly());
        if (g.degree() == 0) return false;
        QInterval iv = f->interval_avoiding(g);
        if (iv.is_point()) return sgn(g.eval<BigRat>(iv.lo)) == 0;
        return count_roots_in(g, iv.lo, iv.hi) > 0;
    }

    BigRat rat_;
    FieldPtr fld_; // null for plain rationals
    QPoly rep_;    // value = rep_(alpha) when fld_ is set
};

inline int sign_of(const Scalar& s) { return s.sign(); }
inline QInterval enclosure_of(const Scalar& s, unsigned bits) { return s.enclosure(bits); }
inline bool is_zero_coeff(const Scalar& s) { return s.is_zero(); }

struct FieldJoin {
    FieldPtr field;    // the composite Q(gamma)
    QPoly embed_left;  // alpha1 = embed_left(gamma)
    QPoly embed_right; // alpha2 = embed_right(gamma)
};

FieldJoin compose_fields(const FieldPtr& F1, const FieldPtr& F2, int degree_cap = 16);

namespace field_detail {

// Interpolate a Q[x] polynomial of degree <= dx from evaluations.
inline QPoly interpolate(const std::vector<BigRat>& xs, const std::vector<BigRat>& ys) {
    std::vector<BigRat> coef = ys;
    size_t n = xs.size();
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i)
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    QPoly p;
    for (size_t i = n; i-- > 0;) {
        QPoly lin(std::vector<BigRat>{-xs[i], BigRat(1)});
        p = p * lin + QPoly(coef[i]);
    }
    return p;
}

// Res_z(A(x - k z), B(z)) in Q[x], by evaluation + interpolation.
inline QPoly shifted_norm(const QPoly& A, const QPoly& B, long k) {
    int dx = A.degree() * B.degree();
    std::vector<BigRat> xs, ys;
    for (long pt = 0; (int)xs.size() < dx + 1; ++pt) {
        BigRat x0(pt);
        QPoly lin(std::vector<BigRat>{x0, BigRat(-k)});
        QPoly az = compose(A, lin);
        xs.push_back(x0);
        ys.push_back(resultant(az, B));
    }
    return interpolate(xs, ys);
}

// Res_z(M(z), (x - s z)^2 - rep(z)) in Q[x]: the norm of (x - s*alpha)^2 - v.
inline QPoly sqrt_norm(const QPoly& M, const QPoly& rep, long s) {
    int dx = 2 * M.degree();
    std::vector<BigRat> xs, ys;
    for (long pt = 0; (int)xs.size() < dx + 1; ++pt) {
        BigRat x0(pt);
        QPoly lin(std::vector<BigRat>{x0, BigRat(-s)});
        QPoly q = lin * lin - rep;
        xs.push_back(x0);
        ys.push_back(resultant(q, M));
    }
    return interpolate(xs, ys);
}

inline Scalar to_field(const FieldPtr& f, const QPoly& embed, const Scalar& s) {
    if (s.is_rational()) return s;
    return Scalar(f, compose(s.rep(), embed)); // s = rep(alpha), alpha = embed(gamma)
}

} // namespace field_detail

inline Scalar Scalar::binary_op(const Scalar& a, const Scalar& b, Op op) {
    if (a.is_rational() && b.is_rational()) return Scalar(apply(op, a.rat_, b.rat_));
    if (a.is_rational())
        return Scalar(b.fld_, apply(op, QPoly(a.rat_), b.rep_, b.fld_->minpoly()));
    if (b.is_rational())
        return Scalar(a.fld_, apply(op, a.rep_, QPoly(b.rat_), a.fld_->minpoly()));
    bool same = (a.fld_ == b.fld_);
    if (!same && a.fld_->minpoly() == b.fld_->minpoly()) {
        QInterval ia = a.fld_->current_interval(), ib = b.fld_->current_interval();
        // identical descriptions denote the same root when the intervals meet
        same = ia.lo <= ib.hi && ib.lo <= ia.hi;
    }
    if (same) return Scalar(a.fld_, apply(op, a.rep_, b.rep_, a.fld_->minpoly()));
    FieldJoin join = compose_fields(a.fld_, b.fld_);
    Scalar av = field_detail::to_field(join.field, join.embed_left, a);
    Scalar bv = field_detail::to_field(join.field, join.embed_right, b);
    return binary_op(av, bv, op);
}

inline FieldJoin compose_fields(const FieldPtr& F1, const FieldPtr& F2, int degree_cap) {
    long needed = (long)F1->degree() * F2->degree();
    if (needed > degree_cap)
        throw field_cap_error("field composition exceeds degree cap", (int)needed);
    for (long k = 1; k <= 24; ++k) {
        QPoly R = field_detail::shifted_norm(F1->minpoly(), F2->minpoly(), k);
        QPoly Rs = squarefree_part(R);
        auto factors = factor_rational(Rs);

        // Isolate gamma = alpha1 + k*alpha2 among the roots of Rs, and find
        // the unique irreducible factor owning it.
        unsigned bits = 8;
        QPoly Mg;
        QInterval ig;
        bool located = false;
        for (int attempt = 0; attempt < 24 && !located; ++attempt, bits *= 2) {
            QInterval i1 = F1->interval_bits(bits);
            QInterval i2 = F2->interval_bits(bits);
            ig = i1 + QInterval(BigRat(k)) * i2;
            if (sgn(Rs.eval<BigRat>(ig.lo)) == 0 || sgn(Rs.eval<BigRat>(ig.hi)) == 0) continue;
            if (count_roots_in(Rs, ig.lo, ig.hi) != 1) continue;
            int claims = 0;
            for (auto& [h, mult] : factors) {
                (void)mult;
                if (sgn(h.eval<BigRat>(ig.lo)) == 0 || sgn(h.eval<BigRat>(ig.hi)) == 0) { claims = -1; break; }
                if (count_roots_in(h, ig.lo, ig.hi) == 1) {
                    ++claims;
                    Mg = h;
                }
            }
            located = (claims == 1);
        }
        if (!located || Mg.degree() <= 1) continue;
        auto field = std::make_shared<NumberField>(Mg, ig, true);

        // alpha2 = the root of gcd(M2(w), M1(gamma - k w)) over Q(gamma).
        using SPoly = UPoly<Scalar>;
        Scalar gamma = Scalar::generator(field);
        SPoly m2;
        for (const auto& c : F2->minpoly().c) m2.c.emplace_back(c);
        m2.trim();
        SPoly lin;
        lin.c = {gamma, Scalar((long)-k)};
        SPoly m1_shift;
        {
            const QPoly& M1 = F1->minpoly();
            for (int i = M1.degree(); i >= 0; --i) {
                m1_shift = m1_shift * lin;
                m1_shift = m1_shift + SPoly(Scalar(M1.c[i]));
            }
        }
        SPoly g = gcd(m2, m1_shift);
        if (g.degree() != 1) continue;
        Scalar alpha2 = -(g.c[0] / g.c[1]);
        Scalar alpha1 = gamma - Scalar(k) * alpha2;
        auto as_qpoly = [](const Scalar& s) {
            return s.is_rational() ? QPoly(s.rat()) : s.rep();
        };
        return FieldJoin{field, as_qpoly(alpha1), as_qpoly(alpha2)};
    }
    throw error("compose_fields: no primitive element found");
}

struct AdjoinResult {
    FieldPtr field; // null when the root is rational
    Scalar generator;
};

// Validated adjunction of the real root of `minpoly` isolated by `iv`.
inline AdjoinResult field_adjoin(const QPoly& minpoly_in, const QInterval& iv,
                                 int degree_cap = 16) {
    QPoly m = minpoly_in;
    if (m.degree() < 1) throw error("field_adjoin: constant polynomial");
    if (m.degree() > degree_cap)
        throw field_cap_error("field_adjoin: degree exceeds cap", m.degree());
    if (squarefree_part(m).degree() != m.degree())
        throw reducible_minpoly_error("field_adjoin: minimal polynomial is not square-free");
    if (m.degree() > 1 && !is_irreducible_rational(m))
        throw reducible_minpoly_error("field_adjoin: minimal polynomial is reducible");
    m = make_monic(m);
    if (m.degree() == 1) {
        BigRat root = -m.c[0];
        if (!iv.contains(root))
            throw ambiguous_interval_error("field_adjoin: interval misses the root");
        return {nullptr, Scalar(root)};
    }
    if (sgn(m.eval<BigRat>(iv.lo)) == 0 || sgn(m.eval<BigRat>(iv.hi)) == 0)
        throw ambiguous_interval_error("field_adjoin: interval endpoint is a root");
    if (count_roots_in(m, iv.lo, iv.hi) != 1)
        throw ambiguous_interval_error("field_adjoin: interval does not isolate exactly one root");
    auto f = std::make_shared<NumberField>(m, iv, true);
    return {f, Scalar::generator(f)};
}

inline std::string Scalar::str() const {
    if (is_rational()) return to_string(rat_);
    std::string s;
    bool first = true;
    for (int i = rep_.degree(); i >= 0; --i) {
        if (sgn(rep_.c[i]) == 0) continue;
        std::string term;
        if (i == 0) {
            term = to_string(rep_.c[i]);
        } else {
            if (rep_.c[i] == 1) term = "";
            else if (rep_.c[i] == -1) term = "-";
            else term = to_string(rep_.c[i]) + "*";
            term += "a";
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (!first && !term.empty() && term[0] != '-') s += "+";
        s += term;
        first = false;
    }
    if (s.empty()) s = "0";
    std::string ms;
    for (int i = fld_->minpoly().degree(); i >= 0; --i) {
        const auto& c = fld_->minpoly().c[i];
        if (sgn(c) == 0) continue;
        if (!ms.empty() && sgn(c) > 0) ms += "+";
        ms += to_string(c);
        if (i >= 1) ms += "*t";
        if (i > 1) ms += "^" + std::to_string(i);
    }
    return s + " (a: root of " + ms + " in " + fld_->current_interval().str() + ")";
}

// Exact square root inside the current field when it exists.
inline std::optional<Scalar> try_sqrt(const Scalar& v) {
    if (v.sign() < 0) return std::nullopt;
    if (v.is_zero()) return Scalar(0);
    if (v.is_rational()) {
        auto r = exact_sqrt(v.rat());
        if (!r) return std::nullopt;
        return Scalar(*r);
    }
    const FieldPtr& F = v.field();
    using SPoly = UPoly<Scalar>;
    for (long s = 0; s <= 8; ++s) {
        QPoly N = field_detail::sqrt_norm(F->minpoly(), v.rep(), s);
        if (squarefree_part(N).degree() != N.degree()) continue;
        auto factors = factor_rational(N);
        Scalar alpha = Scalar::generator(F);
        SPoly w_minus; // x - s*alpha
        w_minus.c = {Scalar((long)-s) * alpha, Scalar(1)};
        SPoly p = w_minus * w_minus + SPoly(-v); // (x - s*alpha)^2 - v
        for (auto& [h, mult] : factors) {
            (void)mult;
            SPoly hs;
            for (const auto& c : h.c) hs.c.emplace_back(c);
            hs.trim();
            SPoly g = gcd(p, hs);
            if (g.degree() == 1) {
                Scalar x0 = -(g.c[0] / g.c[1]);
                Scalar w = x0 - Scalar(s) * alpha;
                if (w * w == v) return (w.sign() >= 0) ? w : -w;
            }
        }
        return std::nullopt; // squarefree norm is decisive
    }
    return std::nullopt;
}

// Square root, adjoining a (capped) degree-2-over-F extension when needed.
inline Scalar sqrt_adjoining(const Scalar& v, int degree_cap = 16) {
    if (auto w = try_sqrt(v)) return *w;
    if (v.sign() < 0) throw error("sqrt of negative value");
    if (v.is_rational()) {
        QPoly m(std::vector<BigRat>{-v.rat(), BigRat(0), BigRat(1)});
        BigRat hi(1);
        while (hi * hi < v.rat()) hi *= 2;
        auto adj = field_adjoin(m, QInterval(BigRat(0), hi + 1), degree_cap);
        return adj.generator;
    }
    const FieldPtr& F = v.field();
    QPoly N = field_detail::sqrt_norm(F->minpoly(), v.rep(), 0);
    QPoly Ns = squarefree_part(N);
    auto factors = factor_rational(Ns);
    unsigned bits = 16;
    while (bits <= (1u << 20)) {
        QInterval ve = v.enclosure(bits);
        if (ve.known_sign() > 0) {
            // dyadic bracket for sqrt(v)
            BigRat bhi(1);
            while (bhi * bhi < ve.hi) bhi *= 2;
            BigRat blo(0), cur_hi = bhi;
            for (unsigned it = 0; it < bits + 8; ++it) {
                BigRat m = (blo + cur_hi) / 2;
                if (m * m <= ve.lo) blo = m;
                else cur_hi = m;
            }
            BigRat ulo = blo, uhi = bhi;
            for (unsigned it = 0; it < bits + 8; ++it) {
                BigRat m = (ulo + uhi) / 2;
                if (m * m >= ve.hi) uhi = m;
                else ulo = m;
            }
            QInterval beta_iv(blo, uhi);
            for (auto& [h, mult] : factors) {
                (void)mult;
                if (h.degree() < 1) continue;
                if (sgn(h.eval<BigRat>(beta_iv.lo)) == 0 || sgn(h.eval<BigRat>(beta_iv.hi)) == 0)
                    continue;
                if (count_roots_in(h, beta_iv.lo, beta_iv.hi) != 1) continue;
                if (h.degree() == 1) return Scalar(-h.c[0]);
                auto Fb = std::make_shared<NumberField>(h, beta_iv, true);
                FieldJoin join = compose_fields(F, Fb, degree_cap);
                Scalar w = field_detail::to_field(join.field, join.embed_right,
                                                  Scalar::generator(Fb));
                Scalar a1 = field_detail::to_field(join.field, join.embed_left,
                                                   Scalar::generator(F));
                Scalar v_in_join(0);
                for (int i = v.rep().degree(); i >= 0; --i)
                    v_in_join = v_in_join * a1 + Scalar(v.rep().c[i]);
                if (w * w == v_in_join) return (w.sign() >= 0) ? w : -w;
            }
        }
        bits *= 2;
    }
    throw error("sqrt_adjoining: could not isolate the square root");
}

// Bring a list of scalars into one common field.
inline void promote_to_common_field(std::vector<Scalar>& xs, int degree_cap = 16) {
    while (true) {
        FieldPtr f1, f2;
        for (const auto& x : xs) {
            if (x.is_rational()) continue;
            if (!f1) { f1 = x.field(); continue; }
            if (x.field() != f1) { f2 = x.field(); break; }
        }
        if (!f2) return;
        FieldJoin join = compose_fields(f1, f2, degree_cap);
        for (auto& y : xs) {
            if (y.is_rational()) continue;
            if (y.field() == f1) y = field_detail::to_field(join.field, join.embed_left, y);
            else if (y.field() == f2) y = field_detail::to_field(join.field, join.embed_right, y);
        }
    }
}

} // namespace reglab

#endif
