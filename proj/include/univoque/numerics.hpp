#pragma once

// Exact bases q > 1 and exact values of digit sequences in those bases.
//
// A base is either a rational number, a real algebraic number given by a
// square-free integer polynomial with an isolating interval, or the
// Komornik-Loreti constant (defined through the Thue-Morse digits and known
// only through certified rational enclosures). Values are quotients of
// polynomials in q; signs are decided by interval refinement, backed by an
// exact zero test for algebraic bases.

#include "univoque/polynomial.hpp"
#include "univoque/rational.hpp"
#include "univoque/words.hpp"

#include <compare>
#include <memory>
#include <string>

namespace univoque {

/// Maximum bisection depth used by sign determination (default 256).
int refinement_cap();
void set_refinement_cap(int rounds);

class BaseValue {
 public:
  enum class Kind { Rational, Algebraic, KomornikLoreti };

  static BaseValue rational(Alphabet alphabet, const Rational& q);
  /// The unique root of `poly` in (lo, hi). Collapses to a rational base
  /// when that root is rational.
  static BaseValue algebraic(Alphabet alphabet, const Poly& poly, const Rational& lo, const Rational& hi);
  /// The smallest base with a unique expansion of 1 over {0, 1}.
  static BaseValue komornik_loreti();

  Kind kind() const;
  Alphabet alphabet() const;
  bool is_rational() const { return kind() == Kind::Rational; }

  /// Rational kind only.
  const Rational& value() const;
  /// Algebraic kind only: the square-free defining polynomial.
  const Poly& modulus() const;

  /// Rational enclosure of q. Level 0 is the isolating interval; the width
  /// is at most 2^-level times the initial width. Rational bases return a point.
  Interval enclosure(int level = 0) const;

  /// q + delta as an exact base.
  BaseValue offset(const Rational& delta) const;

  /// Text form understood by the CLI parser.
  std::string spec() const;
  double approx() const;

  /// Same exact number (same representation).
  friend bool operator==(const BaseValue& a, const BaseValue& b);

 private:
  struct State;
  explicit BaseValue(std::shared_ptr<State> s) : s_(std::move(s)) {}
  std::shared_ptr<State> s_;
};

/// Enclosure of the Komornik-Loreti constant of width <= 2^-bits, with
/// dyadic endpoints at which the truncated Thue-Morse series is certified
/// to lie above (lo) and below (hi) one.
Interval thue_morse_root_enclosure(int bits);

/// An exact real number num(q)/den(q) with den(q) > 0.
class XReal {
 public:
  XReal(BaseValue base, const Rational& constant);
  XReal(BaseValue base, Poly num, Poly den = Poly(Rational(1)));

  static XReal q(const BaseValue& base) { return XReal(base, Poly::x()); }

  const BaseValue& base() const { return base_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }

  /// Enclosure of the value at the base's refinement level.
  Interval enclosure(int level = 0) const;

  XReal operator-() const;
  friend XReal operator+(const XReal& a, const XReal& b);
  friend XReal operator-(const XReal& a, const XReal& b);
  friend XReal operator*(const XReal& a, const XReal& b);
  friend XReal operator/(const XReal& a, const XReal& b);

 private:
  void normalize();

  BaseValue base_;
  Poly num_;
  Poly den_;
};

/// Exact sign of p(q).
int sign_at(const Poly& p, const BaseValue& base);
int sign(const XReal& x);
std::strong_ordering compare(const XReal& x, const XReal& y);
XReal abs(const XReal& x);

/// Exact value Σ c_i q^-i.
XReal eval_value(const PeriodicSeq& c, const BaseValue& q);
/// Σ_{i<=n} w_i q^-i.
XReal eval_word(const Word& w, const BaseValue& q);

/// The base q in (1, M+1] at which the sequence's value equals 1.
BaseValue base_from_expansion(const PeriodicSeq& c);

/// M / (q^m (q - 1)).
XReal tail_bound(const BaseValue& q, int m);

/// The simplest (smallest denominator) rational in [lo, hi], 0 < lo <= hi.
Rational simplest_rational(const Rational& lo, const Rational& hi);

}  // namespace univoque
