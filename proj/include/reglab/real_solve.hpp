#ifndef REGLAB_REAL_SOLVE_HPP
#define REGLAB_REAL_SOLVE_HPP

// Real zero sets of bivariate polynomials with finitely many zeros, tangent
// cones, and zero-freeness certificates. The solver works over Q or over a
// simple real extension; it is sound for arbitrary inputs: it either returns
// the complete finite list of real zeros or reports a curve.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "reglab/mpoly.hpp"
#include "reglab/rootisol.hpp"

namespace reglab {

struct AlgebraicPoint {
    Scalar x, y;
    QInterval bx, by; // isolating box computed at construction

    AlgebraicPoint() = default;
    AlgebraicPoint(Scalar px, Scalar py)
        : x(std::move(px)), y(std::move(py)), bx(x.enclosure(20)), by(y.enclosure(20)) {}

    QInterval box_x(unsigned bits) const { return x.enclosure(bits); }
    QInterval box_y(unsigned bits) const { return y.enclosure(bits); }

    bool is_origin() const { return x.is_zero() && y.is_zero(); }

    std::vector<Scalar> coords() const { return {x, y}; }

    std::string str() const {
        if (x.is_rational() && y.is_rational())
            return "(" + to_string(x.rat()) + ", " + to_string(y.rat()) + ")";
        return "(" + x.str() + ", " + y.str() + ")";
    }
};

// Univariate real-root isolation on an MPoly (at most one effective variable).
inline std::vector<RootInterval> isolate_real_roots(const MPoly& p_in) {
    MPoly p = p_in.prune_vars();
    if (p.is_zero()) throw error("isolate_real_roots: zero polynomial");
    if (p.vars().size() > 1) throw error("isolate_real_roots: polynomial is not univariate");
    if (p.vars().empty()) return {};
    UPoly<Scalar> u;
    for (const auto& c : p.coeffs_in(p.vars()[0])) u.c.push_back(c.constant_value());
    u.trim();
    return isolate_real_roots_multi(u);
}

namespace rs_detail {

// T with x-variable evaluated at xi, as a univariate polynomial in y.
inline UPoly<Scalar> column_poly(const MPoly& T, const std::string& xvar,
                                 const std::string& yvar, const Scalar& xi) {
    int ix = T.var_index(xvar), iy = T.var_index(yvar);
    std::vector<Scalar> xpow{Scalar(1)};
    UPoly<Scalar> u;
    for (const auto& [e, c] : T.terms()) {
        int ex = ix >= 0 ? e[ix] : 0;
        int ey = iy >= 0 ? e[iy] : 0;
        while ((int)xpow.size() <= ex) xpow.push_back(xpow.back() * xi);
        while ((int)u.c.size() <= ey) u.c.push_back(Scalar(0));
        u.c[ey] += c * xpow[ex];
    }
    u.trim();
    return u;
}

// Common scalar field of the coefficients (null = Q).
inline FieldPtr common_field(const MPoly& p) {
    FieldPtr f;
    for (const auto& [e, c] : p.terms()) {
        if (c.is_rational()) continue;
        if (!f) f = c.field();
        else if (f != c.field()) throw error("common_field: mixed coefficient fields");
    }
    return f;
}

// Univariate MPoly (after pruning) as a QPoly; coefficients must be rational.
inline QPoly as_qpoly(const MPoly& p_in, const std::string& var) {
    MPoly p = p_in.prune_vars();
    QPoly out;
    if (p.is_zero()) return out;
    if (p.vars().empty()) {
        out.c.push_back(p.constant_value().rat());
        return out;
    }
    if (p.vars().size() != 1 || p.vars()[0] != var)
        throw error("as_qpoly: not univariate in " + var);
    for (const auto& c : p.coeffs_in(var)) out.c.push_back(c.constant_value().rat());
    out.trim();
    return out;
}

// Rewrite extension coefficients by sending alpha to a fresh variable.
inline MPoly alpha_to_var(const MPoly& p, const FieldPtr& F, const std::string& zvar) {
    MPoly out;
    MPoly z = MPoly::variable(zvar);
    for (const auto& [e, c] : p.terms()) {
        MPoly mono = MPoly::constant(Scalar(1));
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) mono *= MPoly::variable(p.vars()[i]);
        if (c.is_rational()) {
            out += mono * Scalar(c.rat());
        } else {
            if (c.field() != F) throw error("alpha_to_var: foreign field");
            MPoly crep;
            const QPoly& rep = c.rep();
            for (int i = rep.degree(); i >= 0; --i)
                crep = crep * z + MPoly::constant(Scalar(rep.c[i]));
            out += mono * crep;
        }
    }
    return out;
}

inline MPoly minpoly_as_mpoly(const FieldPtr& F, const std::string& zvar) {
    MPoly mz;
    MPoly z = MPoly::variable(zvar);
    for (int i = F->minpoly().degree(); i >= 0; --i)
        mz = mz * z + MPoly::constant(Scalar(F->minpoly().c[i]));
    return mz;
}

// A univariate polynomial over Q annihilating the roots of p (coefficients
// possibly in Q(alpha)): the norm Res_z(M(z), p_z(w)).
inline QPoly q_annihilator(const MPoly& p, const FieldPtr& F, const std::string& var) {
    if (!F) return as_qpoly(p, var);
    MPoly pz = alpha_to_var(p, F, "_z");
    MPoly mz = minpoly_as_mpoly(F, "_z");
    MPoly norm = mpoly_resultant(pz, mz, "_z");
    return as_qpoly(norm, var);
}

// A Scalar for the real root of W (squarefree over Q) isolated by iv, with
// minimal defining polynomial when factoring is feasible.
inline Scalar scalar_for_root(const QPoly& W, QInterval iv, int factor_degree_cap = 128) {
    if (iv.is_point()) return Scalar(iv.lo);
    if (W.degree() <= factor_degree_cap) {
        auto factors = factor_rational(W);
        while (true) {
            int claims = 0;
            QPoly owner;
            bool endpoint_hit = false;
            for (auto& [h, mult] : factors) {
                (void)mult;
                if (sgn(h.eval<BigRat>(iv.lo)) == 0 || sgn(h.eval<BigRat>(iv.hi)) == 0) {
                    endpoint_hit = true;
                    break;
                }
                int n = count_roots_in(h, iv.lo, iv.hi);
                claims += n;
                if (n == 1) owner = h;
            }
            if (!endpoint_hit && claims == 1 && owner.degree() >= 1) {
                if (owner.degree() == 1) return Scalar(-owner.c[0]);
                auto f = std::make_shared<NumberField>(owner, iv, true);
                return Scalar::generator(f);
            }
            iv = refine_root(W, iv, iv.width() / 4);
            if (iv.is_point()) return Scalar(iv.lo);
        }
    }
    auto f = std::make_shared<NumberField>(W, iv, false);
    return Scalar::generator(f);
}

// Scalar for a real root of q over a (possibly extension) field, isolated by
// iv; the root is algebraic over Q via the norm.
inline Scalar root_scalar(const UPoly<Scalar>& q, QInterval iv, int degree_cap) {
    (void)degree_cap;
    FieldPtr F;
    for (const auto& c : q.c)
        if (!c.is_rational()) { F = c.field(); break; }
    QPoly N;
    if (!F) {
        for (const auto& c : q.c) N.c.push_back(c.rat());
        N.trim();
    } else {
        MPoly qw;
        MPoly w = MPoly::variable("_w"), z = MPoly::variable("_z");
        for (int i = q.degree(); i >= 0; --i) {
            MPoly coeff;
            if (q.c[i].is_rational()) coeff = MPoly::constant(Scalar(q.c[i].rat()));
            else {
                const QPoly& rep = q.c[i].rep();
                for (int j = rep.degree(); j >= 0; --j)
                    coeff = coeff * z + MPoly::constant(Scalar(rep.c[j]));
            }
            qw = qw * w + coeff;
        }
        MPoly norm = mpoly_resultant(qw, minpoly_as_mpoly(F, "_z"), "_z");
        N = as_qpoly(norm, "_w");
    }
    if (N.degree() < 1) throw error("root_scalar: degenerate annihilator");
    QPoly Nsf = squarefree_part(N);
    int guard = 0;
    while (!iv.is_point() &&
           (sgn(Nsf.eval<BigRat>(iv.lo)) == 0 || sgn(Nsf.eval<BigRat>(iv.hi)) == 0 ||
            count_roots_in(Nsf, iv.lo, iv.hi) != 1)) {
        iv = refine_root(q, iv, iv.width() / 4);
        if (++guard > 400) throw error("root_scalar: isolation did not converge");
    }
    return scalar_for_root(Nsf, iv);
}

} // namespace rs_detail

// All real solutions of Q = 0 in the plane of the two `ambient` variables.
// Throws zero_set_not_finite_error when the zero set contains a curve.
// Results are sorted columns-left-to-right then bottom-to-top, realizing the
// deterministic tie rule used by the resolution engine.
inline std::vector<AlgebraicPoint> finite_real_zeros(const MPoly& Q_in,
                                                     const std::vector<std::string>& ambient,
                                                     int degree_cap = 16) {
    using namespace rs_detail;
    if (ambient.size() != 2) throw error("finite_real_zeros: ambient must have two variables");
    const std::string& vx = ambient[0];
    const std::string& vy = ambient[1];
    MPoly Q = Q_in.prune_vars();
    if (Q.is_zero()) throw error("finite_real_zeros: zero polynomial");
    if (Q.is_constant()) return {};

    for (const auto& v : Q.vars())
        if (v != vx && v != vy)
            throw error("finite_real_zeros: unexpected variable " + v);

    // Univariate: any real root sweeps out a line in the plane.
    if (Q.vars().size() == 1) {
        auto roots = isolate_real_roots(Q);
        if (!roots.empty())
            throw zero_set_not_finite_error(
                "zero set not finite: univariate factor with a real root",
                Q.vars()[0] + " near " + roots[0].iv.str());
        return {};
    }

    std::vector<std::string> frame{std::min(vx, vy), std::max(vx, vy)};
    MPoly T = Q.with_vars(frame);

    // Radical.
    {
        MPoly d = T;
        for (const auto& v : frame) {
            MPoly dv = T.derivative(v);
            if (dv.is_zero()) continue;
            d = mpoly_gcd(d, dv);
            if (d.is_constant()) break;
        }
        if (!d.is_constant()) T = *T.divide_exact(d);
    }

    // Strip factors independent of one variable (they vanish on lines).
    auto strip_content = [&](const std::string& main_var, const std::string& other) {
        auto coeffs = T.coeffs_in(main_var);
        MPoly cont;
        for (const auto& c : coeffs) {
            if (c.is_zero()) continue;
            cont = cont.is_zero() ? c : mpoly_gcd(cont, c);
            if (cont.is_constant()) break;
        }
        if (!cont.is_constant() && !cont.is_zero()) {
            auto roots = isolate_real_roots(cont);
            if (!roots.empty())
                throw zero_set_not_finite_error(
                    "zero set not finite: factor independent of " + main_var,
                    other + " near " + roots[0].iv.str());
            T = *T.divide_exact(cont);
        }
    };
    strip_content(vx, vy);
    strip_content(vy, vx);
    T = T.prune_vars();
    if (T.is_constant()) return {};
    if (T.vars().size() < 2)
        throw error("finite_real_zeros: unexpected univariate remainder");
    T = T.with_vars(frame);

    FieldPtr F = common_field(T);

    // Candidate columns and cut points: real roots of the Q-annihilator of
    // Res_y(T, dT/dy) * lc_y(T).
    MPoly disc = mpoly_resultant(T, T.derivative(vy), vy);
    if (disc.is_zero()) throw error("finite_real_zeros: discriminant vanished unexpectedly");
    MPoly cand = disc * T.coeffs_in(vy).back();
    QPoly Nx = q_annihilator(cand, F, vx);
    if (Nx.is_zero()) throw error("finite_real_zeros: x-annihilator vanished");
    QPoly Nx_sf = squarefree_part(Nx);
    std::vector<QInterval> cuts =
        Nx_sf.degree() >= 1 ? isolate_real_roots_squarefree(Nx_sf) : std::vector<QInterval>{};

    // One rational sample in every open interval between cuts: the column
    // there must have no real roots, else a curve crosses the band.
    std::vector<BigRat> samples;
    if (cuts.empty()) {
        samples.push_back(BigRat(0));
    } else {
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            while (cuts[i].hi >= cuts[i + 1].lo) {
                cuts[i] = refine_root(Nx_sf, cuts[i], cuts[i].width() / 4);
                cuts[i + 1] = refine_root(Nx_sf, cuts[i + 1], cuts[i + 1].width() / 4);
            }
        }
        samples.push_back(cuts.front().lo - 1);
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            samples.push_back((cuts[i].hi + cuts[i + 1].lo) / 2);
        samples.push_back(cuts.back().hi + 1);
    }
    for (const auto& s : samples) {
        UPoly<Scalar> col = column_poly(T, vx, vy, Scalar(s));
        if (col.degree() < 1) continue;
        if (count_real_roots(squarefree_part(col)) > 0)
            throw zero_set_not_finite_error(
                "zero set not finite: a whole band of columns has real zeros",
                vx + " near " + to_string(s));
    }

    // Annihilator for the y-coordinates (same construction transposed).
    MPoly discy = mpoly_resultant(T, T.derivative(vx), vx);
    MPoly candy = discy * T.coeffs_in(vx).back();
    QPoly Ny = q_annihilator(candy, F, vy);
    QPoly Ny_sf = squarefree_part(Ny);

    std::vector<AlgebraicPoint> out;
    for (const auto& cut : cuts) {
        Scalar xi = scalar_for_root(Nx_sf, cut);
        UPoly<Scalar> col = column_poly(T, vx, vy, xi);
        if (col.is_zero())
            throw zero_set_not_finite_error("zero set not finite: vertical line",
                                            vx + " at " + cut.str());
        if (col.degree() < 1) continue;
        auto yroots = isolate_real_roots_multi(col);
        for (const auto& rt : yroots)
            if (rt.multiplicity % 2 == 1)
                throw zero_set_not_finite_error(
                    "zero set not finite: sign change across a zero",
                    "column " + cut.str());
        auto levels = yun_decomposition(col);
        for (const auto& rt : yroots) {
            QInterval iv = rt.iv;
            const UPoly<Scalar>& defpoly = levels[rt.multiplicity - 1];
            int guard = 0;
            while (!iv.is_point() &&
                   (sgn(Ny_sf.eval<BigRat>(iv.lo)) == 0 || sgn(Ny_sf.eval<BigRat>(iv.hi)) == 0 ||
                    count_roots_in(Ny_sf, iv.lo, iv.hi) != 1)) {
                iv = refine_root(defpoly, iv, iv.width() / 4);
                if (++guard > 400)
                    throw error("finite_real_zeros: y-isolation did not converge");
            }
            Scalar eta = scalar_for_root(Ny_sf, iv);
            std::vector<Scalar> coords{xi, eta};
            promote_to_common_field(coords, degree_cap);
            std::vector<Scalar> pt = (vx == frame[0])
                                         ? std::vector<Scalar>{coords[0], coords[1]}
                                         : std::vector<Scalar>{coords[1], coords[0]};
            if (!T.eval(pt).is_zero())
                throw error("finite_real_zeros: candidate failed exact verification");
            out.emplace_back(coords[0], coords[1]);
        }
    }
    return out;
}

inline std::vector<AlgebraicPoint> finite_real_zeros(const MPoly& Q, int degree_cap = 16) {
    MPoly p = Q.prune_vars();
    std::vector<std::string> amb = p.vars();
    while (amb.size() < 2) amb.push_back(amb.empty() ? "x" : amb[0] + "_aux");
    return finite_real_zeros(Q, amb, degree_cap);
}

struct ZeroFreeCert {
    bool zero_free = false;
    std::string detail;
};

// True iff Q has no real zeros in the plane of `ambient`. Cheap structural
// certificate first (positive constant plus a perfect square), then the
// resultant-based solver.
inline ZeroFreeCert is_real_zero_free(const MPoly& Q_in,
                                      const std::vector<std::string>& ambient,
                                      int degree_cap = 16) {
    MPoly Q = Q_in.prune_vars();
    if (Q.is_zero()) return {false, "zero polynomial"};
    if (Q.is_constant()) return {!Q.constant_value().is_zero(), "constant"};
    {
        std::vector<Scalar> zero_pt(Q.vars().size(), Scalar(0));
        Scalar cval = Q.eval(zero_pt);
        if (cval.sign() > 0) {
            MPoly rest = Q - MPoly::constant(cval, Q.vars());
            if (mpoly_sqrt(rest))
                return {true, "certificate: positive constant plus a perfect square"};
        }
    }
    if (Q.vars().size() == 1) {
        auto roots = isolate_real_roots(Q);
        return {roots.empty(), roots.empty() ? "no real roots (univariate)"
                                             : "real root in " + roots[0].iv.str()};
    }
    try {
        auto zeros = finite_real_zeros(Q, ambient, degree_cap);
        if (zeros.empty()) return {true, "resultant-based solver found no real zeros"};
        return {false, "zero at " + zeros[0].str()};
    } catch (const zero_set_not_finite_error& e) {
        return {false, std::string("zero set is a curve: ") + e.what()};
    }
}

inline ZeroFreeCert is_real_zero_free(const MPoly& Q, int degree_cap = 16) {
    MPoly p = Q.prune_vars();
    std::vector<std::string> amb = p.vars();
    while (amb.size() < 2) amb.push_back(amb.empty() ? "x" : amb[0] + "_aux");
    return is_real_zero_free(Q, amb, degree_cap);
}

// ---------------------------------------------------------------------------
// Tangent cones

struct TangentLine {
    bool real = true;
    bool vertical = false;    // the line {x = 0} in centered coordinates
    Scalar slope;             // real non-vertical line {y = slope * x}
    int multiplicity = 1;
    // conjugate pair data (real == false): stored once per pair
    QInterval re_box, im_box; // im > 0 representative
    bool x_plus_minus_iy = false;
};

struct TangentCone {
    AlgebraicPoint center;
    std::vector<TangentLine> lines;
    int total_multiplicity = 0;

    bool has_real_line() const {
        for (const auto& l : lines)
            if (l.real) return true;
        return false;
    }
    bool has_vertical_real_line() const {
        for (const auto& l : lines)
            if (l.real && l.vertical) return true;
        return false;
    }
    bool some_pair_is_x_pm_iy() const {
        for (const auto& l : lines)
            if (!l.real && l.x_plus_minus_iy) return true;
        return false;
    }
    int line_multiplicity_sum() const {
        int s = 0;
        for (const auto& l : lines) s += l.multiplicity * (l.real ? 1 : 2);
        return s;
    }
};

// Factor the lowest homogeneous form of Q translated to p into tangent lines:
// real lines carry exact slopes, complex lines certified conjugate-pair boxes.
inline TangentCone tangent_cone(const MPoly& Q_in, const AlgebraicPoint& p,
                                int degree_cap = 16) {
    MPoly Q = Q_in.prune_vars();
    if (Q.is_zero()) throw error("tangent_cone: zero polynomial");
    std::vector<std::string> vs = Q.vars();
    if (vs.size() > 2) throw error("tangent_cone: more than two variables");
    while (vs.size() < 2) vs.push_back(vs.empty() ? "x" : vs[0] + "_aux");
    Q = Q.with_vars(vs);

    std::vector<Scalar> coords = p.coords();
    promote_to_common_field(coords, degree_cap);
    MPoly t = Q.translate(coords);
    auto comps = t.homogeneous_components();
    int m = -1;
    for (size_t d = 0; d < comps.size(); ++d)
        if (!comps[d].is_zero()) { m = (int)d; break; }
    if (m < 0) throw error("tangent_cone: translation lost all terms");
    if (m == 0) throw error("tangent_cone: Q(p) != 0");

    TangentCone cone;
    cone.center = p;
    cone.total_multiplicity = m;

    const MPoly& L = comps[m];
    // pw(w) = L(1, w): roots are slopes of {y = w x}; leftover power of x is
    // the multiplicity of the vertical line {x = 0}.
    UPoly<Scalar> pw;
    for (const auto& cx : L.coeffs_in(vs[1])) {
        Scalar v(0);
        for (const auto& [e, c] : cx.terms()) v = c;
        pw.c.push_back(v);
    }
    pw.trim();
    int v_mult = m - pw.degree();
    if (v_mult > 0) {
        TangentLine l;
        l.real = true;
        l.vertical = true;
        l.multiplicity = v_mult;
        cone.lines.push_back(l);
    }
    if (pw.degree() < 1) return cone;

    auto levels = yun_decomposition(pw);
    for (size_t k = 0; k < levels.size(); ++k) {
        UPoly<Scalar>& q = levels[k];
        if (q.degree() < 1) continue;
        int mult = (int)k + 1;
        auto rroots = isolate_real_roots_squarefree(q);
        for (const auto& iv : rroots) {
            TangentLine l;
            l.real = true;
            l.vertical = false;
            l.multiplicity = mult;
            l.slope = rs_detail::root_scalar(q, iv, degree_cap);
            cone.lines.push_back(l);
        }
        int pairs = (q.degree() - (int)rroots.size()) / 2;
        if (pairs <= 0) continue;

        // q(u + i v) = A + i B; the system {A = 0, B = 0} is the zero set of
        // A^2 + B^2, a nonnegative polynomial with finitely many real zeros.
        MPoly A, B;
        {
            MPoly u = MPoly::variable("_u"), vv = MPoly::variable("_v");
            MPoly re = MPoly::constant(Scalar(1)), im;
            for (int j = 0; j <= q.degree(); ++j) {
                if (j > 0) {
                    MPoly nre = re * u - im * vv;
                    MPoly nim = re * vv + im * u;
                    re = std::move(nre);
                    im = std::move(nim);
                }
                if (!q.c[j].is_zero()) {
                    A += re * q.c[j];
                    B += im * q.c[j];
                }
            }
        }
        MPoly sys = A * A + B * B;
        auto pts = finite_real_zeros(sys, {"_u", "_v"}, degree_cap);
        bool has_pm_i;
        {
            UPoly<Scalar> w21;
            w21.c = {Scalar(1), Scalar(0), Scalar(1)};
            has_pm_i = (q % w21).is_zero();
        }
        for (const auto& pt : pts) {
            if (pt.y.sign() <= 0) continue; // one representative per pair
            TangentLine l;
            l.real = false;
            l.multiplicity = mult;
            l.re_box = pt.box_x(24);
            l.im_box = pt.box_y(24);
            if (has_pm_i && pt.x.is_zero() && pt.y == Scalar(1))
                l.x_plus_minus_iy = true;
            cone.lines.push_back(l);
        }
    }
    return cone;
}

} // namespace reglab

#endif
