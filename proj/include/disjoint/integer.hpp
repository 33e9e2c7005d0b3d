#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace disjoint {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer pow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

/// Binomial coefficient C(n, k); zero when k > n.
inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// n^e in machine words; throws std::overflow_error instead of wrapping.
inline std::uint64_t checked_pow(std::uint64_t n, unsigned e) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (n != 0 && out > UINT64_MAX / n)
      throw std::overflow_error("checked_pow: " + std::to_string(n) + "^" + std::to_string(e) +
                                " does not fit in 64 bits");
    out *= n;
  }
  return out;
}

inline std::string to_string(const Integer& v) { return v.get_str(10); }

inline std::string to_string(const Rational& v) { return v.get_str(10); }

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Integer out;
  if (s.empty() || out.set_str(s, 10) != 0)
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  return out;
}

/// Parses "a" or "a/b" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace disjoint
