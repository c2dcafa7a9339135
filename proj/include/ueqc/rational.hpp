#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "ueqc/errors.hpp"

namespace ueqc {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

/// Serializes as "num/den", always with an explicit denominator.
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "num/den" or a plain integer.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) {
    throw SpecError("malformed rational: '" + s + "'");
  }
  r.canonicalize();
  return r;
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline int sign(const Rational& r) { return sgn(r); }

/// log2 of a positive rational, evaluated in double. Handles magnitudes far
/// outside the double range by splitting numerator and denominator.
inline double log2_of(const Rational& r) {
  if (r <= 0) throw Unsupported("log2 of non-positive rational");
  auto log2z = [](const Integer& z) {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log2(mant) + static_cast<double>(exp);
  };
  return log2z(r.get_num()) - log2z(r.get_den());
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  if (k > n) return 0;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline Integer pow2(unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
  return out;
}

/// Closest rational with denominator at most max_den, via continued
/// fractions. Used to snap simulator doubles back to exact values.
inline Rational approximate_rational(double value, long max_den = 1L << 20) {
  if (!std::isfinite(value)) throw Unsupported("non-finite value");
  const bool neg = value < 0;
  double x = std::fabs(value);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(frac);
    if (a > 1e15) break;
    const long ai = static_cast<long>(a);
    const long q2 = q0 + ai * q1;
    if (q2 > max_den) break;
    const long p2 = p0 + ai * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double rem = frac - a;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rational r = make_rational(neg ? -p1 : p1, q1);
  return r;
}

}  // namespace ueqc
