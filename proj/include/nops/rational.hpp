#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace nops {

/// Exact rational number over arbitrary-precision integers. GMP keeps the
/// value canonical (coprime, positive denominator) after every operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses `int` or `int/posint`. Throws Error on malformed input.
inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw Error("malformed rational literal '" + text + "'");
  }
  q.canonicalize();
  return q;
}

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace nops
