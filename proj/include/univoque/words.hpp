#pragma once

// Digit alphabets, finite words and eventually periodic digit sequences.
//
// Indexing of digits is 1-based everywhere: digit(1) is the first digit.

#include "univoque/rational.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace univoque {

using Digit = int;
using Digits = std::vector<Digit>;

/// The digit set {0, 1, ..., M}.
struct Alphabet {
  int M = 1;

  Alphabet() = default;
  explicit Alphabet(int max_digit);

  bool valid(Digit d) const { return d >= 0 && d <= M; }
  friend bool operator==(Alphabet, Alphabet) = default;
};

/// A finite word over an alphabet.
class Word {
 public:
  Word() = default;
  Word(Alphabet alphabet, Digits digits);

  Alphabet alphabet() const { return alphabet_; }
  const Digits& digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  Digit digit(std::size_t i) const { return digits_.at(i - 1); }

  /// Digits i..i+len-1 (1-based).
  Word slice(std::size_t i, std::size_t len) const;
  Word operator+(const Word& other) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) { return a.digits_ <=> b.digits_; }

 private:
  Alphabet alphabet_;
  Digits digits_;
};

/// An eventually periodic sequence u v v v ... kept in canonical form:
/// the period is primitive and the preperiod does not end with the
/// period's last digit, so structural equality is sequence equality.
class PeriodicSeq {
 public:
  PeriodicSeq(Alphabet alphabet, Digits preperiod, Digits period);
  PeriodicSeq(const Word& preperiod, const Word& period);

  static PeriodicSeq constant(Alphabet alphabet, Digit d) { return PeriodicSeq(alphabet, {}, {d}); }

  Alphabet alphabet() const { return alphabet_; }
  const Digits& preperiod() const { return pre_; }
  const Digits& period() const { return per_; }

  Digit digit(std::size_t i) const;
  Word prefix(std::size_t n) const;
  /// The number of distinct tails σ^k c, k >= 0.
  std::size_t distinct_tails() const { return pre_.size() + per_.size(); }

  friend bool operator==(const PeriodicSeq&, const PeriodicSeq&) = default;

 private:
  void canonicalize();

  Alphabet alphabet_;
  Digits pre_;
  Digits per_;
};

Word reflect(const Word& w);
PeriodicSeq reflect(const PeriodicSeq& c);

/// The tail (c_{k+i})_{i>=1}.
PeriodicSeq shift(const PeriodicSeq& c, std::size_t k);

/// Lexicographic order of the infinite digit streams.
std::strong_ordering lex_cmp(const PeriodicSeq& a, const PeriodicSeq& b);

/// Index of the first differing digit, or 0 when the sequences are equal.
std::size_t first_difference(const PeriodicSeq& a, const PeriodicSeq& b);

/// ρ(c, d) = 2^-n where n is the first differing index; 0 for equal inputs.
Rational rho_distance(const PeriodicSeq& c, const PeriodicSeq& d);

bool is_infinite(const PeriodicSeq& c);
bool is_doubly_infinite(const PeriodicSeq& c);

/// τ_1..τ_n with τ_i the parity of the number of one bits of i.
Word thue_morse_prefix(std::size_t n);

/// Compact text: "110" for a finite word, "1(10)" for 1(10)^∞. Digits are
/// comma-separated inside each part when M > 9.
std::string to_string(const Word& w);
std::string to_string(const PeriodicSeq& c);
Word parse_word(std::string_view text, Alphabet alphabet);
PeriodicSeq parse_periodic(std::string_view text, Alphabet alphabet);

}  // namespace univoque
