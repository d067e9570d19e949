#pragma once

// Dense univariate polynomials over the rationals, constant term first.

#include "univoque/rational.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace univoque {

class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<Rational> coeffs);
  explicit Poly(std::vector<Rational> coeffs);
  explicit Poly(const Rational& constant);

  static Poly monomial(const Rational& c, std::size_t degree);
  static Poly x() { return monomial(Rational(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  /// Horner evaluation in interval arithmetic; always contains the exact range image.
  Interval operator()(const Interval& x) const;

  Poly derivative() const;
  Poly monic() const;
  /// p(x + shift).
  Poly translated(const Rational& shift) const;
  /// Integer coefficients with gcd 1 and positive leading coefficient.
  Poly primitive() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  Poly operator-() const { return *this * Rational(-1); }

  friend bool operator==(const Poly&, const Poly&) = default;

  std::string str() const;  // "c0,c1,...,cn"

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Euclidean division: a = q * b + r with deg r < deg b.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);
/// p / gcd(p, p'), made primitive.
Poly square_free_part(const Poly& p);

int sign(const Rational& r);

/// Distinct real roots in the half-open interval (a, b], by Sturm's theorem.
int count_roots(const Poly& p, const Rational& a, const Rational& b);

}  // namespace univoque
