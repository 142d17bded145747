#ifndef REGLAB_INTERVAL_HPP
#define REGLAB_INTERVAL_HPP

#include <algorithm>
#include <string>

#include "reglab/rational.hpp"

namespace reglab {

// Closed interval with rational endpoints; the workhorse for certified signs.
struct QInterval {
    BigRat lo, hi;

    QInterval() : lo(0), hi(0) {}
    QInterval(BigRat point) : lo(point), hi(std::move(point)) {}
    QInterval(BigRat l, BigRat h) : lo(std::move(l)), hi(std::move(h)) {}

    bool is_point() const { return lo == hi; }
    bool contains_zero() const { return sign(lo) <= 0 && sign(hi) >= 0; }
    bool contains(const BigRat& q) const { return lo <= q && q <= hi; }
    BigRat width() const { return hi - lo; }
    BigRat mid() const { return (lo + hi) / 2; }

    // Certified sign: +1 / -1 when the interval excludes zero, 0 otherwise.
    int known_sign() const {
        if (sign(lo) > 0) return 1;
        if (sign(hi) < 0) return -1;
        return 0;
    }

    QInterval operator-() const { return {-hi, -lo}; }

    QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }

    QInterval operator*(const QInterval& o) const {
        BigRat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)),
                std::max(std::max(a, b), std::max(c, d))};
    }

    std::string str() const { return "[" + to_string(lo) + ", " + to_string(hi) + "]"; }
};

inline QInterval pow_iv(const QInterval& v, unsigned e) {
    QInterval acc{BigRat(1)};
    for (unsigned i = 0; i < e; ++i) acc = acc * v;
    return acc;
}

} // namespace reglab

#endif
