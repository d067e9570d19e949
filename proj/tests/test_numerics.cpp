#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "univoque/errors.hpp"
#include "univoque/numerics.hpp"

#include <cmath>
#include <random>

using namespace univoque;

namespace {

const Alphabet kBinary(1);

BaseValue golden() { return BaseValue::algebraic(kBinary, Poly{-1, -1, 1}, Rational(3, 2), Rational(2)); }
BaseValue tribonacci() { return BaseValue::algebraic(kBinary, Poly{-1, -1, -1, 1}, Rational(3, 2), Rational(2)); }
PeriodicSeq seq(const char* s, Alphabet a = kBinary) { return parse_periodic(s, a); }

bool equals(const XReal& x, const Rational& r) { return compare(x, XReal(x.base(), r)) == 0; }

Rational partial_sum(const PeriodicSeq& c, const Rational& q, std::size_t n) {
  Rational s = 0, p = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    p /= q;
    s += c.digit(i) * p;
  }
  return s;
}

PeriodicSeq random_seq(std::mt19937& rng, Alphabet a) {
  std::uniform_int_distribution<int> digit(0, a.M), len(0, 4);
  Digits pre(static_cast<std::size_t>(len(rng))), per(static_cast<std::size_t>(len(rng) + 1));
  for (auto& d : pre) d = digit(rng);
  for (auto& d : per) d = digit(rng);
  return PeriodicSeq(a, pre, per);
}

}  // namespace

TEST_CASE("base construction") {
  CHECK_THROWS_AS(BaseValue::rational(kBinary, Rational(1)), BaseOutOfRange);
  CHECK_THROWS_AS(BaseValue::algebraic(kBinary, Poly{-1, -1, 1}, Rational(2), Rational(3)), NoRootInRange);
  CHECK_THROWS_AS(BaseValue::algebraic(kBinary, Poly{6, -5, 1}, Rational(3, 2), Rational(7, 2)), AmbiguousRoot);
  BaseValue collapsed = BaseValue::algebraic(kBinary, Poly{-3, 2} * Poly{1, 0, 1}, Rational(1), Rational(2));
  REQUIRE(collapsed.is_rational());
  CHECK(collapsed.value() == Rational(3, 2));
  BaseValue g = golden();
  CHECK(std::abs(g.approx() - 1.6180339887) < 1e-9);
  CHECK(g.enclosure(0).contains(Rational(161803398, 100000000)));
  CHECK_FALSE(g.enclosure(40).contains(Rational(161803398, 100000000)));
  CHECK(g.enclosure(60).width() <= pow2(-60));
}

TEST_CASE("eval_value closed forms") {
  BaseValue g = golden(), t = tribonacci();
  CHECK(equals(eval_value(seq("(0)"), g), Rational(0)));
  XReal top = eval_value(seq("(1)"), g);
  CHECK(compare(top, XReal(g, Rational(1)) / (XReal::q(g) - XReal(g, Rational(1)))) == 0);
  CHECK(equals(eval_value(seq("(10)"), g), Rational(1)));
  CHECK(equals(eval_value(seq("(110)"), t), Rational(1)));
  CHECK(equals(eval_value(seq("111(0)"), t), Rational(1)));
  BaseValue r = BaseValue::rational(Alphabet(2), Rational(3, 2));
  CHECK(equals(eval_value(seq("(2)", Alphabet(2)), r), Rational(4)));
}

TEST_CASE("compare") {
  BaseValue g = golden();
  CHECK(compare(eval_value(seq("(10)"), g), eval_value(seq("1(0)"), g)) > 0);
  CHECK(compare(XReal::q(g), XReal::q(g)) == 0);
  CHECK(compare(XReal::q(g), XReal(g, Rational(161803, 100000))) > 0);
  CHECK(compare(XReal::q(g), XReal(g, Rational(161804, 100000))) < 0);
}

TEST_CASE("sign determination respects the refinement cap") {
  BaseValue g = golden();
  XReal close = XReal::q(g) - XReal(g, g.enclosure(80).lo);
  CHECK(sign(close) > 0);
  int saved = refinement_cap();
  set_refinement_cap(8);
  CHECK_THROWS_AS(sign(close), PrecisionExhausted);
  set_refinement_cap(saved);
}

TEST_CASE("base_from_expansion") {
  CHECK(std::abs(base_from_expansion(seq("(10)")).approx() - 1.61803) < 5e-6);
  CHECK(std::abs(base_from_expansion(seq("(110)")).approx() - 1.83929) < 5e-6);
  CHECK(std::abs(base_from_expansion(seq("1(10)")).approx() - 1.80194) < 5e-6);
  BaseValue full = base_from_expansion(seq("(2)", Alphabet(2)));
  REQUIRE(full.is_rational());
  CHECK(full.value() == 3);
  std::mt19937 rng(17);
  for (int i = 0; i < 40; ++i) {
    PeriodicSeq c = random_seq(rng, kBinary);
    if (c.digit(1) == 0 || !is_infinite(c)) continue;
    BaseValue q = base_from_expansion(c);
    CHECK(equals(eval_value(c, q), Rational(1)));
  }
}

TEST_CASE("tail bound") {
  CHECK(equals(tail_bound(BaseValue::rational(kBinary, Rational(2)), 3), Rational(1, 8)));
  CHECK(equals(tail_bound(BaseValue::rational(kBinary, Rational(2)), 0), Rational(1)));
  CHECK(equals(tail_bound(BaseValue::rational(Alphabet(2), Rational(3, 2)), 2), Rational(16, 9)));
}

TEST_CASE("eval_value agrees with partial sums") {
  std::mt19937 rng(23);
  for (int i = 0; i < 60; ++i) {
    Alphabet a(1 + static_cast<int>(rng() % 2));
    Rational qv = Rational(1) + Rational(static_cast<long>(1 + rng() % 99), 100) * a.M;
    BaseValue q = BaseValue::rational(a, qv);
    PeriodicSeq c = random_seq(rng, a);
    std::size_t n = 1 + rng() % 60;
    Rational diff = eval_value(c, q).enclosure().lo - partial_sum(c, qv, n);
    CHECK(diff >= 0);
    CHECK(diff <= tail_bound(q, static_cast<int>(n)).enclosure().hi);
  }
  BaseValue g = golden();
  for (int i = 0; i < 20; ++i) {
    PeriodicSeq c = random_seq(rng, kBinary);
    std::size_t n = 1 + rng() % 60;
    Interval q = g.enclosure(80);
    Interval v = eval_value(c, g).enclosure(80);
    Rational s = partial_sum(c, q.midpoint(), n);
    CHECK(abs(v.midpoint() - s) <= tail_bound(g, static_cast<int>(n)).enclosure(80).hi + v.width() + pow2(-60));
  }
}

TEST_CASE("compare is consistent with disjoint enclosures") {
  std::mt19937 rng(29);
  BaseValue t = tribonacci();
  for (int i = 0; i < 100; ++i) {
    XReal x = eval_value(random_seq(rng, kBinary), t), y = eval_value(random_seq(rng, kBinary), t);
    Interval a = x.enclosure(20), b = y.enclosure(20);
    if (a.hi < b.lo) CHECK(compare(x, y) < 0);
    if (b.hi < a.lo) CHECK(compare(x, y) > 0);
  }
}

TEST_CASE("Komornik-Loreti enclosure") {
  Interval e = thue_morse_root_enclosure(20);
  CHECK(e.width() <= pow2(-20));
  CHECK(abs(e.lo - Rational(178723, 100000)) < Rational(5, 1000000));
  // The truncated Thue-Morse series crosses 1 inside the enclosure.
  PeriodicSeq tm(Alphabet(1), thue_morse_prefix(80).digits(), {0});
  CHECK(partial_sum(tm, e.lo, 80) > 1);
  BaseValue hi = BaseValue::rational(kBinary, e.hi);
  CHECK(partial_sum(tm, e.hi, 80) + tail_bound(hi, 80).enclosure().hi < 1);
  BaseValue kl = BaseValue::komornik_loreti();
  CHECK(kl.enclosure(50).width() <= pow2(-40));
  CHECK(std::abs(kl.approx() - 1.78723) < 5e-6);
}

TEST_CASE("offsets stay exact") {
  BaseValue g = golden();
  BaseValue up = g.offset(Rational(1, 8));
  CHECK(std::abs(up.approx() - (g.approx() + 0.125)) < 1e-12);
  CHECK(BaseValue::rational(kBinary, Rational(3, 2)).offset(Rational(1, 4)).value() == Rational(7, 4));
}
