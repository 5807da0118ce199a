#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "arrmono/errors.hpp"

namespace arrmono {

using BigInt = mpz_class;
/// GMP keeps mpq_class canonical after every arithmetic operation
/// (reduced, positive denominator); parse_rational canonicalizes input.
using Rational = mpq_class;

/// Accepts "p/q" or "p" in base 10.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty rational literal");
  auto slash = s.find('/');
  Rational r;
  try {
    if (slash == std::string::npos) {
      r = Rational(BigInt(s, 10));
    } else {
      BigInt num(s.substr(0, slash), 10);
      BigInt den(s.substr(slash + 1), 10);
      if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
      r = Rational(num, den);
      r.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
  }
  return r;
}

/// Always "p/q", including integers ("3/1").
inline std::string format_rational(Rational r) {
  r.canonicalize();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

}  // namespace arrmono
