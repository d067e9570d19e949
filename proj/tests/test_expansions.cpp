#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "univoque/errors.hpp"
#include "univoque/expansions.hpp"

#include <random>

using namespace univoque;
using Status = MembershipVerdict::Status;
using Verdict = BaseClass::Verdict;

namespace {

const Alphabet kBinary(1);

BaseValue golden() { return BaseValue::algebraic(kBinary, Poly{-1, -1, 1}, Rational(3, 2), Rational(2)); }
BaseValue tribonacci() { return BaseValue::algebraic(kBinary, Poly{-1, -1, -1, 1}, Rational(3, 2), Rational(2)); }
BaseValue rational(const Rational& q, int M = 1) { return BaseValue::rational(Alphabet(M), q); }
PeriodicSeq seq(const char* s, Alphabet a = kBinary) { return parse_periodic(s, a); }

PeriodicSeq random_seq(std::mt19937& rng, Alphabet a) {
  std::uniform_int_distribution<int> digit(0, a.M), len(0, 4);
  Digits pre(static_cast<std::size_t>(len(rng))), per(static_cast<std::size_t>(len(rng) + 1));
  for (auto& d : pre) d = digit(rng);
  for (auto& d : per) d = digit(rng);
  return PeriodicSeq(a, pre, per);
}

Rational random_base(std::mt19937& rng, int M) {
  return Rational(1) + Rational(static_cast<long>(1 + rng() % 1000), 1000) * M;
}

std::size_t common_prefix(const Word& a, const Word& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a.digits()[i] == b.digits()[i]) ++i;
  return i;
}

}  // namespace

TEST_CASE("quasi-greedy expansions of named bases") {
  AlphaExpansion two = quasi_greedy_alpha(rational(2), 4, 64);
  CHECK(to_string(two.prefix) == "1111");
  REQUIRE(two.certified);
  CHECK(*two.certified == seq("(1)"));

  AlphaExpansion g = quasi_greedy_alpha(golden(), 4, 64);
  CHECK(to_string(g.prefix.slice(1, 4)) == "1010");
  REQUIRE(g.certified);
  CHECK(*g.certified == seq("(10)"));

  AlphaExpansion t = quasi_greedy_alpha(tribonacci(), 6, 64);
  CHECK(to_string(t.prefix.slice(1, 6)) == "110110");
  REQUIRE(t.certified);
  CHECK(*t.certified == seq("(110)"));

  AlphaExpansion kl = quasi_greedy_alpha(BaseValue::komornik_loreti(), 8);
  CHECK(kl.prefix == thue_morse_prefix(8));
  CHECK_FALSE(kl.certified);
  CHECK(quasi_greedy_alpha(BaseValue::komornik_loreti(), 64).prefix == thue_morse_prefix(64));
}

TEST_CASE("greedy expansions") {
  AlphaExpansion t = greedy_beta(tribonacci(), 4, 64);
  CHECK(to_string(t.prefix.slice(1, 4)) == "1110");
  REQUIRE(t.certified);
  CHECK(*t.certified == seq("111(0)"));
  CHECK(to_string(greedy_beta(rational(2), 3).prefix) == "111");
  CHECK(greedy_beta(BaseValue::komornik_loreti(), 8).prefix == quasi_greedy_alpha(BaseValue::komornik_loreti(), 8).prefix);
}

TEST_CASE("expansion preconditions") {
  CHECK_THROWS_AS(quasi_greedy_alpha(rational(Rational(5, 2)), 4), BaseOutOfRange);
  CHECK_NOTHROW(quasi_greedy_alpha(rational(Rational(5, 2), 2), 4));
}

TEST_CASE("certified expansions evaluate to one") {
  std::mt19937 rng(31);
  for (int i = 0; i < 30; ++i) {
    int M = 1 + static_cast<int>(rng() % 2);
    BaseValue q = rational(random_base(rng, M), M);
    AlphaExpansion a = quasi_greedy_alpha(q, 16, 64);
    if (!a.certified) continue;
    CHECK(compare(eval_value(*a.certified, q), XReal(q, Rational(1))) == 0);
    CHECK(a.certified->prefix(16) == a.prefix.slice(1, 16));
  }
}

TEST_CASE("unique expansion oracle") {
  BaseValue g = golden();
  CHECK(is_unique_expansion(XReal(g, Rational(0)), g, 64).status == Status::In);
  MembershipVerdict one = is_unique_expansion(XReal(g, Rational(1)), g, 64);
  CHECK(one.status == Status::Out);
  CHECK(one.witness == std::size_t{1});
  BaseValue kl = BaseValue::komornik_loreti();
  CHECK(is_unique_expansion(XReal(kl, Rational(1)), kl, 64).status != Status::Out);
}

TEST_CASE("lexicographic membership") {
  for (BaseValue q : {golden(), tribonacci(), rational(Rational(13, 10)), rational(Rational(19, 10))})
    CHECK(in_Uq_prime(seq("(0)"), q).status == Status::In);
  CHECK(in_Vq_prime(seq("(10)"), golden()).status == Status::In);
  CHECK(in_Uq_prime(seq("(10)"), golden()).status == Status::Out);
  CHECK(in_Uq_prime(seq("(10)"), rational(Rational(19, 10))).status == Status::In);
  CHECK(is_unique_expansion(eval_value(seq("(10)"), rational(Rational(19, 10))), rational(Rational(19, 10)), 64).status ==
        Status::In);
}

TEST_CASE("classification of named bases") {
  CHECK(classify_base(golden()).verdict == Verdict::InVNotInClosureU);
  CHECK(classify_base(tribonacci()).verdict == Verdict::InClosureUNotInU);
  CHECK(classify_base(BaseValue::komornik_loreti()).verdict == Verdict::InU);
  CHECK(classify_base(rational(Rational(13, 10))).verdict == Verdict::NotInV);
  CHECK(classify_base(rational(2)).verdict == Verdict::InU);
}

TEST_CASE("Komornik-Loreti approximation") {
  KlApproximation k = kl_constant(20);
  CHECK(abs(k.interval.lo - Rational(178723, 100000)) < Rational(5, 1000000));
  CHECK(k.interval.width() <= pow2(-20));
  CHECK(k.interval.contains(k.base.value()));
  CHECK_THROWS(kl_constant(4));
}

TEST_CASE("alpha is self-admissible") {
  std::mt19937 rng(37);
  for (int i = 0; i < 40; ++i) {
    int M = 1 + static_cast<int>(rng() % 2);
    BaseValue q = rational(random_base(rng, M), M);
    AlphaExpansion a = quasi_greedy_alpha(q, 40, 40);
    if (a.certified) {
      for (std::size_t k = 1; k <= a.certified->distinct_tails(); ++k) CHECK(lex_cmp(shift(*a.certified, k), *a.certified) <= 0);
    } else {
      for (std::size_t k = 1; k < 20; ++k) CHECK(a.prefix.slice(k + 1, 20) <= a.prefix.slice(1, 20));
    }
  }
}

TEST_CASE("alpha is monotone in q") {
  std::mt19937 rng(41);
  for (int i = 0; i < 40; ++i) {
    Rational p = random_base(rng, 1), q = random_base(rng, 1);
    if (p > q) std::swap(p, q);
    CHECK(quasi_greedy_alpha(rational(p), 24).prefix <= quasi_greedy_alpha(rational(q), 24).prefix);
  }
}

TEST_CASE("lexicographic membership agrees with the unique expansion oracle") {
  std::mt19937 rng(43);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    int M = 1 + static_cast<int>(rng() % 2);
    Alphabet a(M);
    BaseValue q = i % 3 == 0 ? base_from_expansion(PeriodicSeq(a, {}, {M, static_cast<int>(rng() % (M + 1))}))
                             : rational(random_base(rng, M), M);
    PeriodicSeq c = random_seq(rng, a);
    MembershipVerdict lex = in_Uq_prime(c, q);
    MembershipVerdict oracle = is_unique_expansion(eval_value(c, q), q, 64);
    if (lex.status == Status::Unknown || oracle.status == Status::Unknown) continue;
    ++compared;
    CHECK((lex.status == Status::In) == (oracle.status == Status::In));
  }
  CHECK(compared > 200);
}

TEST_CASE("set inclusions between nearby bases") {
  std::mt19937 rng(47);
  for (int i = 0; i < 150; ++i) {
    int M = 1 + static_cast<int>(rng() % 2);
    Alphabet a(M);
    Rational b[3] = {random_base(rng, M), random_base(rng, M), random_base(rng, M)};
    std::sort(std::begin(b), std::end(b));
    if (b[0] == b[1] || b[1] == b[2]) continue;
    BaseValue p = rational(b[0], M), r = rational(b[1], M), s = rational(b[2], M);
    PeriodicSeq c = random_seq(rng, a);
    if (in_Uq_prime(c, p).status == Status::In) {
      CHECK(in_Vq_prime(c, r).status != Status::Out);
      CHECK(in_Uq_prime(c, s).status != Status::Out);
    }
    if (in_Vq_prime(c, p).status == Status::In) CHECK(in_Uq_prime(c, r).status != Status::Out);
  }
}

TEST_CASE("alpha of bases above kl approaches beta(kl)") {
  const Word beta = greedy_beta(BaseValue::komornik_loreti(), 40).prefix;
  const Rational top = BaseValue::komornik_loreti().enclosure(80).hi;
  std::size_t last = 0;
  for (int k = 3; k <= 24; ++k) {
    Word a = quasi_greedy_alpha(rational(top + pow2(-k)), 40).prefix;
    std::size_t len = common_prefix(a, beta);
    CHECK(len >= last);
    last = len;
  }
  CHECK(last >= 16);
}
