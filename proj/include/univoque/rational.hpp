#pragma once

// Exact integer and rational scalars, plus closed rational intervals.

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace univoque {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p", "p/q" or a decimal literal such as "1.9" or "-0.25" exactly.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Nearest double; only for display and floating-point cross-checks.
double to_double(const Rational& r);

Rational pow2(int exponent);  // 2^exponent, exponent may be negative
Integer floor(const Rational& r);
Integer ceil(const Rational& r);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Closed interval [lo, hi] with rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  explicit Interval(Rational point) : lo(point), hi(point) {}
  Interval(Rational lower, Rational upper) : lo(std::move(lower)), hi(std::move(upper)) {}

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool positive() const { return lo > 0; }
  bool negative() const { return hi < 0; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& s, const Interval& a);

}  // namespace univoque
