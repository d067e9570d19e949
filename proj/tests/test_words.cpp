#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "univoque/errors.hpp"
#include "univoque/words.hpp"

#include <random>

using namespace univoque;

namespace {

const Alphabet kBinary(1);
const Alphabet kTernary(2);

PeriodicSeq seq(const char* s, Alphabet a = kBinary) { return parse_periodic(s, a); }

PeriodicSeq random_seq(std::mt19937& rng, Alphabet a, int max_pre = 4, int max_per = 4) {
  std::uniform_int_distribution<int> digit(0, a.M), pre_len(0, max_pre), per_len(1, max_per);
  Digits pre(static_cast<std::size_t>(pre_len(rng))), per(static_cast<std::size_t>(per_len(rng)));
  for (auto& d : pre) d = digit(rng);
  for (auto& d : per) d = digit(rng);
  return PeriodicSeq(a, pre, per);
}

// Compares the first `depth` digits one by one.
int naive_cmp(const PeriodicSeq& a, const PeriodicSeq& b, std::size_t depth) {
  for (std::size_t i = 1; i <= depth; ++i)
    if (a.digit(i) != b.digit(i)) return a.digit(i) < b.digit(i) ? -1 : 1;
  return 0;
}

int as_int(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

}  // namespace

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet(0), InvalidDigit);
  CHECK(kTernary.valid(2));
  CHECK_FALSE(kBinary.valid(2));
  CHECK_THROWS_AS(Word(kBinary, {0, 2}), InvalidDigit);
}

TEST_CASE("canonical form makes equal sequences structurally equal") {
  CHECK(seq("1(01)") == seq("(10)"));
  CHECK(seq("(1010)") == seq("(10)"));
  CHECK(seq("10(10)") == seq("(10)"));
  CHECK(seq("1(0)") == seq("10(00)"));
  CHECK(seq("(10)").preperiod().empty());
  CHECK(seq("(10)").period().size() == 2);
}

TEST_CASE("text encoding round trips") {
  for (const char* s : {"(10)", "1(10)", "111(0)", "(1)", "01(10)"}) CHECK(to_string(seq(s)) == s);
  CHECK(to_string(parse_word("110", kBinary)) == "110");
  Alphabet wide(12);
  PeriodicSeq c(wide, {11}, {0, 12});
  CHECK(parse_periodic(to_string(c), wide) == c);
  CHECK_THROWS_AS(parse_periodic("1(2)", kBinary), InvalidDigit);
  CHECK_THROWS_AS(parse_periodic("1(10", kBinary), ParseError);
}

TEST_CASE("reflect") {
  CHECK(reflect(seq("(110)")) == seq("(001)"));
  CHECK(reflect(parse_word("012", kTernary)) == parse_word("210", kTernary));
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    PeriodicSeq c = random_seq(rng, kTernary);
    CHECK(reflect(reflect(c)) == c);
  }
}

TEST_CASE("shift") {
  CHECK(shift(seq("(110)"), 0) == seq("(110)"));
  CHECK(shift(seq("(110)"), 1) == seq("(101)"));
  CHECK(shift(seq("1(10)"), 1) == seq("(10)"));
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    PeriodicSeq c = random_seq(rng, kBinary);
    std::size_t j = rng() % 7, k = rng() % 7;
    CHECK(shift(c, j + k) == shift(shift(c, j), k));
    CHECK(shift(c, j).digit(1) == c.digit(j + 1));
  }
}

TEST_CASE("lexicographic comparison") {
  CHECK(lex_cmp(seq("(10)"), seq("(1)")) < 0);
  CHECK(lex_cmp(seq("(101)"), seq("(110)")) < 0);
  CHECK(lex_cmp(seq("(10)"), seq("1(01)")) == 0);
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    PeriodicSeq a = random_seq(rng, kBinary, 5, 6), b = random_seq(rng, kBinary, 5, 6);
    CHECK(as_int(lex_cmp(a, b)) == naive_cmp(a, b, 200));
    CHECK(as_int(lex_cmp(a, b)) == -as_int(lex_cmp(reflect(a), reflect(b))));
  }
}

TEST_CASE("rho distance") {
  CHECK(rho_distance(seq("(10)"), seq("(10)")) == 0);
  CHECK(rho_distance(seq("(0)"), seq("(1)")) == Rational(1, 2));
  CHECK(rho_distance(seq("1(10)"), seq("(110)")) == Rational(1, 32));
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    PeriodicSeq a = random_seq(rng, kBinary), b = random_seq(rng, kBinary), c = random_seq(rng, kBinary);
    CHECK(rho_distance(a, c) <= std::max(rho_distance(a, b), rho_distance(b, c)));
  }
}

TEST_CASE("infinite and doubly infinite") {
  CHECK_FALSE(is_infinite(seq("111(0)")));
  CHECK(is_doubly_infinite(seq("(10)")));
  CHECK(is_infinite(seq("(1)")));
  CHECK_FALSE(is_doubly_infinite(seq("(1)")));
}

TEST_CASE("Thue-Morse prefix") {
  CHECK(to_string(thue_morse_prefix(1)) == "1");
  CHECK(to_string(thue_morse_prefix(8)) == "11010011");
  Word t = thue_morse_prefix(257);
  for (std::size_t i = 1; 2 * i + 1 <= 257; ++i) {
    CHECK(t.digit(2 * i) == t.digit(i));
    CHECK(t.digit(2 * i + 1) == 1 - t.digit(i));
  }
}

TEST_CASE("word slicing and concatenation") {
  Word w = parse_word("11010", kBinary);
  CHECK(to_string(w.slice(2, 3)) == "101");
  CHECK(to_string(w + parse_word("01", kBinary)) == "1101001");
  CHECK(seq("1(10)").prefix(5) == parse_word("11010", kBinary));
}
