#ifndef REGLAB_POLYMAP_HPP
#define REGLAB_POLYMAP_HPP

// Maps R^n -> R^m with rational-function components whose denominators never
// vanish (regular maps); polynomial isomorphisms carry exact inverses.

#include <memory>
#include <string>
#include <vector>

#include "reglab/ratfunc.hpp"

namespace reglab {

class PolyMap {
public:
    PolyMap() = default;
    PolyMap(std::vector<std::string> domain_vars, std::vector<std::string> codomain_vars,
            std::vector<RatFunc> components)
        : domain_(std::move(domain_vars)),
          codomain_(std::move(codomain_vars)),
          comps_(std::move(components)) {
        if (comps_.size() != codomain_.size())
            throw error("PolyMap: component count does not match codomain arity");
    }

    static PolyMap identity(const std::vector<std::string>& vars) {
        std::vector<RatFunc> cs;
        for (const auto& v : vars) cs.emplace_back(MPoly::variable(v));
        return PolyMap(vars, vars, std::move(cs));
    }

    int domain_arity() const { return (int)domain_.size(); }
    int codomain_arity() const { return (int)comps_.size(); }
    const std::vector<std::string>& domain_vars() const { return domain_; }
    const std::vector<std::string>& codomain_vars() const { return codomain_; }
    const std::vector<RatFunc>& components() const { return comps_; }
    const RatFunc& component(int i) const { return comps_.at(i); }

    bool is_polynomial() const {
        for (const auto& c : comps_)
            if (!c.is_polynomial()) return false;
        return true;
    }

    bool has_inverse() const { return (bool)inverse_; }
    const PolyMap& inverse() const {
        if (!inverse_) throw error("PolyMap: no inverse attached");
        return *inverse_;
    }
    bool inverse_verified() const { return inverse_verified_; }

    std::vector<Scalar> eval(const std::vector<Scalar>& point) const {
        if ((int)point.size() != domain_arity())
            throw error("PolyMap::eval: arity mismatch");
        std::vector<std::pair<std::string, Scalar>> assign;
        for (size_t i = 0; i < domain_.size(); ++i) assign.emplace_back(domain_[i], point[i]);
        std::vector<Scalar> out;
        for (const auto& c : comps_) out.push_back(eval_component(c, assign));
        return out;
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < comps_.size(); ++i) {
            if (i) s += ", ";
            s += comps_[i].str();
        }
        return s + ")";
    }

    PolyMap with_inverse(PolyMap inv, bool verify = true) const;

    friend bool operator==(const PolyMap& a, const PolyMap& b) {
        return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.comps_ == b.comps_;
    }

private:
    static Scalar eval_component(const RatFunc& c,
                                 const std::vector<std::pair<std::string, Scalar>>& assign) {
        std::vector<std::pair<std::string, Scalar>> needed;
        for (const auto& v : c.vars()) {
            bool found = false;
            for (const auto& [name, val] : assign)
                if (name == v) {
                    needed.emplace_back(name, val);
                    found = true;
                    break;
                }
            if (!found) throw error("PolyMap::eval: component uses unknown variable " + v);
        }
        return c.eval_named(needed);
    }

    std::vector<std::string> domain_, codomain_;
    std::vector<RatFunc> comps_;
    std::shared_ptr<const PolyMap> inverse_;
    bool inverse_verified_ = false;
};

// f composed with m, in m's domain variables; exact, reduced.
inline RatFunc substitute(const RatFunc& f, const PolyMap& m) {
    auto fvars = f.vars();
    // match f's variables against m's codomain names
    std::vector<int> slot(fvars.size(), -1);
    for (size_t i = 0; i < fvars.size(); ++i) {
        for (size_t j = 0; j < m.codomain_vars().size(); ++j)
            if (m.codomain_vars()[j] == fvars[i]) {
                slot[i] = (int)j;
                break;
            }
        if (slot[i] < 0)
            throw error("substitute: variable " + fvars[i] + " is not a codomain coordinate");
    }

    auto [P, Q] = MPoly::unify(f.num().with_vars(fvars), f.den().with_vars(fvars));
    std::vector<MPoly> nums, dens;
    std::vector<int> degP(fvars.size()), degQ(fvars.size());
    for (size_t i = 0; i < fvars.size(); ++i) {
        const RatFunc& c = m.component(slot[i]);
        nums.push_back(c.num());
        dens.push_back(c.den());
        degP[i] = P.degree_in(fvars[i]);
        degQ[i] = Q.degree_in(fvars[i]);
    }

    // clear denominators: for each term multiply by d_i^(deg_i - e_i)
    auto clear_eval = [&](const MPoly& poly, const std::vector<int>& degs) {
        MPoly acc;
        std::vector<std::vector<MPoly>> npow(fvars.size()), dpow(fvars.size());
        for (size_t i = 0; i < fvars.size(); ++i) {
            npow[i].push_back(MPoly::constant(Scalar(1)));
            dpow[i].push_back(MPoly::constant(Scalar(1)));
        }
        auto power = [](std::vector<MPoly>& cache, const MPoly& base, int e) -> const MPoly& {
            while ((int)cache.size() <= e) cache.push_back(cache.back() * base);
            return cache[e];
        };
        for (const auto& [e, coef] : poly.terms()) {
            MPoly t = MPoly::constant(coef);
            for (size_t i = 0; i < fvars.size(); ++i) {
                if (e[i] > 0) t *= power(npow[i], nums[i], e[i]);
                int dpw = degs[i] - e[i];
                if (dpw > 0) t *= power(dpow[i], dens[i], dpw);
            }
            acc += t;
        }
        return acc;
    };

    MPoly Np = clear_eval(P, degP);
    MPoly Nq = clear_eval(Q, degQ);
    if (Nq.is_zero())
        throw zero_denominator_error();

    // f∘m = (Np * prod d^degQ) / (Nq * prod d^degP)
    MPoly extra_num = MPoly::constant(Scalar(1));
    MPoly extra_den = MPoly::constant(Scalar(1));
    for (size_t i = 0; i < fvars.size(); ++i) {
        for (int k = 0; k < degQ[i]; ++k) extra_num *= dens[i];
        for (int k = 0; k < degP[i]; ++k) extra_den *= dens[i];
    }
    std::vector<MPoly> hints = dens;
    return reduce_with_hints(Np * extra_num, Nq * extra_den, hints);
}

// m_outer ∘ m_inner (apply m_inner first).
inline PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
    if (outer.domain_arity() != inner.codomain_arity())
        throw error("compose: arity mismatch");
    std::vector<RatFunc> comps;
    for (const auto& c : outer.components()) comps.push_back(substitute(c, inner));
    return PolyMap(inner.domain_vars(), outer.codomain_vars(), std::move(comps));
}

inline PolyMap PolyMap::with_inverse(PolyMap inv, bool verify) const {
    PolyMap out = *this;
    if (verify) {
        PolyMap fwd = compose(*this, inv);     // this ∘ inv = id on codomain
        PolyMap bwd = compose(inv, *this);     // inv ∘ this = id on domain
        PolyMap idc = PolyMap::identity(inv.domain_vars());
        PolyMap idd = PolyMap::identity(domain_);
        auto same = [](const PolyMap& a, const PolyMap& b) {
            if (a.codomain_arity() != b.codomain_arity()) return false;
            for (int i = 0; i < a.codomain_arity(); ++i) {
                RatFunc lhs = a.components()[i];
                RatFunc rhs = b.components()[i];
                if (!(lhs == rhs)) return false;
            }
            return true;
        };
        // fwd’s codomain coordinates equal the codomain variables themselves
        PolyMap id_codomain = PolyMap::identity(codomain_);
        if (!same(fwd, id_codomain) || !same(bwd, idd))
            throw error("PolyMap: inverse verification failed");
        out.inverse_verified_ = true;
    }
    out.inverse_ = std::make_shared<const PolyMap>(std::move(inv));
    return out;
}

// Determinant of the Jacobian of a square map (n = m = 2 in this project).
inline RatFunc jacobian_det(const PolyMap& m) {
    if (m.domain_arity() != m.codomain_arity())
        throw error("jacobian_det: map is not square");
    int n = m.domain_arity();
    if (n == 1) return m.component(0).derivative(m.domain_vars()[0]);
    if (n != 2) throw error("jacobian_det: only implemented for n <= 2");
    const auto& v = m.domain_vars();
    RatFunc a = m.component(0).derivative(v[0]);
    RatFunc b = m.component(0).derivative(v[1]);
    RatFunc c = m.component(1).derivative(v[0]);
    RatFunc d = m.component(1).derivative(v[1]);
    return a * d - b * c;
}

} // namespace reglab

#endif
