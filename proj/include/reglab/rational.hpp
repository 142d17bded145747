#ifndef REGLAB_RATIONAL_HPP
#define REGLAB_RATIONAL_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace reglab {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigRat make_rat(long num, long den = 1) {
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

inline int sign(const BigRat& q) { return sgn(q); }
inline int sign(const BigInt& z) { return sgn(z); }

inline BigRat abs_rat(const BigRat& q) { return q < 0 ? BigRat(-q) : q; }

// q as "n" or "n/d", lowest terms.
inline std::string to_string(const BigRat& q) { return q.get_str(); }

inline std::optional<BigInt> exact_isqrt(const BigInt& n) {
    if (sgn(n) < 0) return std::nullopt;
    BigInt r = sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Square root in Q when it exists.
inline std::optional<BigRat> exact_sqrt(const BigRat& q) {
    if (sgn(q) < 0) return std::nullopt;
    auto n = exact_isqrt(q.get_num());
    if (!n) return std::nullopt;
    auto d = exact_isqrt(q.get_den());
    if (!d) return std::nullopt;
    return BigRat(*n, *d);
}

inline BigRat pow_rat(const BigRat& base, unsigned e) {
    BigRat acc(1), b = base;
    unsigned k = e;
    while (k) {
        if (k & 1u) acc *= b;
        k >>= 1u;
        if (k) b *= b;
    }
    return acc;
}

// Nearest fraction with denominator 2^bits; keeps bisection endpoints small.
inline BigRat round_to_dyadic(const BigRat& q, unsigned bits) {
    BigInt scaled_num = q.get_num() << bits;
    BigInt d = q.get_den();
    BigInt quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(), d.get_mpz_t());
    if (rem * 2 >= d) quot += 1;
    BigRat r(quot, BigInt(1) << bits);
    r.canonicalize();
    return r;
}

inline double to_double(const BigRat& q) { return q.get_d(); }

} // namespace reglab

#endif
