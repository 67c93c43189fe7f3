#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace iet {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p/q" or "p" (optional leading sign); throws std::invalid_argument
// on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical text form: lowest terms, positive denominator, "p" when the
// denominator is 1, otherwise "p/q".
std::string rational_string(const Rational& q);

inline Integer floor_int(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_int(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Rational abs_rational(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// mpq_class(p, q) does not canonicalize; this does.
inline Rational make_frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Largest squarefree divisor of n > 0 (trial division). Throws
// std::invalid_argument when the unfactored remainder is too large to
// certify squarefreeness.
Integer squarefree_kernel(Integer n);

}  // namespace iet
