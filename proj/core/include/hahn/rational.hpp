#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "hahn/errors.hpp"

namespace hahn {

/// Exact rational scalar. All coefficient arithmetic in the library is exact.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline int sign(const Rat& q) { return sgn(q); }

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline std::string to_string(const Int& z) { return z.get_str(); }

/// True iff q has a power-of-two denominator (its canonical form does).
inline bool is_dyadic(const Rat& q) {
    return mpz_popcount(q.get_den().get_mpz_t()) == 1;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// Exact n-th root in Q, if one exists (sign-aware: even n needs q >= 0).
std::optional<Rat> exact_nth_root(const Rat& q, unsigned long n);

/// Balanced remainder |e mod n| in [0, n/2] for integers.
Int balanced_remainder(const Int& e, const Int& n);

/// Largest multiple of 2^-k that is <= q (binary truncation toward -inf).
Rat dyadic_floor(const Rat& q, unsigned k);

/// Least prime strictly greater than n (n >= 1).
long least_prime_above(long n);

inline std::optional<Rat> exact_nth_root(const Rat& q, unsigned long n) {
    if (n == 0) throw DomainError("0th root");
    if (q == 0) return Rat(0);
    bool neg = q < 0;
    if (neg && n % 2 == 0) return std::nullopt;
    Int num = abs(q.get_num());
    Int den = q.get_den();
    Int rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) == 0) return std::nullopt;
    Rat r(neg ? Int(-rn) : rn, rd);
    r.canonicalize();
    return r;
}

inline Int balanced_remainder(const Int& e, const Int& n) {
    Int r = e % n;
    if (r < 0) r += n;
    if (2 * r > n) r = n - r;
    return r;
}

inline Rat dyadic_floor(const Rat& q, unsigned k) {
    Int scaled;
    Rat shifted = q;
    mpq_mul_2exp(shifted.get_mpq_t(), q.get_mpq_t(), k);
    mpz_fdiv_q(scaled.get_mpz_t(), shifted.get_num().get_mpz_t(),
               shifted.get_den().get_mpz_t());
    Rat out(scaled);
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), k);
    return out;
}

inline long least_prime_above(long n) {
    if (n < 1) throw DomainError("least_prime_above expects n >= 1");
    Int p(n);
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    return p.get_si();
}

} // namespace hahn
