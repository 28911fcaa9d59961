#ifndef OPNIL_RATIONAL_HPP
#define OPNIL_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "opnil/errors.hpp"

namespace opnil {

// Exact arbitrary-precision rational. All coefficient arithmetic in the
// project goes through this type; there is no floating point anywhere.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) {
  return q.get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

// Parses "n" or "n/d" with optional leading sign.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) fail(ErrorKind::Parse, "empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      fail(ErrorKind::Parse, "bad character in rational literal: '" + text + "'");
  }
  try {
    Rational q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::Parse, "unparseable rational literal: '" + text + "'");
  }
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

} // namespace opnil

#endif
