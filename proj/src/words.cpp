#include "univoque/words.hpp"

#include "univoque/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace univoque {

Alphabet::Alphabet(int max_digit) : M(max_digit) {
  if (M < 1) throw InvalidDigit("alphabet maximum digit must be >= 1, got " + std::to_string(M));
}

namespace {

void check_digits(Alphabet alphabet, const Digits& digits) {
  for (Digit d : digits)
    if (!alphabet.valid(d))
      throw InvalidDigit("digit " + std::to_string(d) + " outside {0.." + std::to_string(alphabet.M) + "}");
}

}  // namespace

Word::Word(Alphabet alphabet, Digits digits) : alphabet_(alphabet), digits_(std::move(digits)) {
  check_digits(alphabet_, digits_);
}

Word Word::slice(std::size_t i, std::size_t len) const {
  if (i == 0 || i - 1 + len > digits_.size()) throw std::out_of_range("Word::slice");
  return Word(alphabet_, Digits(digits_.begin() + static_cast<std::ptrdiff_t>(i - 1),
                                digits_.begin() + static_cast<std::ptrdiff_t>(i - 1 + len)));
}

Word Word::operator+(const Word& other) const {
  Digits out = digits_;
  out.insert(out.end(), other.digits_.begin(), other.digits_.end());
  return Word(alphabet_, std::move(out));
}

PeriodicSeq::PeriodicSeq(Alphabet alphabet, Digits preperiod, Digits period)
    : alphabet_(alphabet), pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw InvalidDigit("period of a periodic sequence must be nonempty");
  check_digits(alphabet_, pre_);
  check_digits(alphabet_, per_);
  canonicalize();
}

PeriodicSeq::PeriodicSeq(const Word& preperiod, const Word& period)
    : PeriodicSeq(preperiod.alphabet(), preperiod.digits(), period.digits()) {}

void PeriodicSeq::canonicalize() {
  const std::size_t len = per_.size();
  for (std::size_t p = 1; p < len; ++p) {
    if (len % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < len && repeats; ++i) repeats = per_[i] == per_[i - p];
    if (repeats) {
      per_.resize(p);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
  }
}

Digit PeriodicSeq::digit(std::size_t i) const {
  if (i == 0) throw std::out_of_range("digits are 1-indexed");
  if (i <= pre_.size()) return pre_[i - 1];
  return per_[(i - 1 - pre_.size()) % per_.size()];
}

Word PeriodicSeq::prefix(std::size_t n) const {
  Digits out(n);
  for (std::size_t i = 1; i <= n; ++i) out[i - 1] = digit(i);
  return Word(alphabet_, std::move(out));
}

Word reflect(const Word& w) {
  Digits out = w.digits();
  for (Digit& d : out) d = w.alphabet().M - d;
  return Word(w.alphabet(), std::move(out));
}

PeriodicSeq reflect(const PeriodicSeq& c) {
  const int M = c.alphabet().M;
  Digits pre = c.preperiod(), per = c.period();
  for (Digit& d : pre) d = M - d;
  for (Digit& d : per) d = M - d;
  return PeriodicSeq(c.alphabet(), std::move(pre), std::move(per));
}

PeriodicSeq shift(const PeriodicSeq& c, std::size_t k) {
  const Digits& pre = c.preperiod();
  const Digits& per = c.period();
  if (k <= pre.size()) return PeriodicSeq(c.alphabet(), Digits(pre.begin() + static_cast<std::ptrdiff_t>(k), pre.end()), per);
  std::size_t r = (k - pre.size()) % per.size();
  Digits rotated(per.begin() + static_cast<std::ptrdiff_t>(r), per.end());
  rotated.insert(rotated.end(), per.begin(), per.begin() + static_cast<std::ptrdiff_t>(r));
  return PeriodicSeq(c.alphabet(), {}, std::move(rotated));
}

std::size_t first_difference(const PeriodicSeq& a, const PeriodicSeq& b) {
  if (a.alphabet() != b.alphabet()) throw InvalidDigit("sequences over different alphabets");
  // Past max(preperiods) + lcm(periods) both streams repeat jointly.
  const std::size_t bound = std::max(a.preperiod().size(), b.preperiod().size()) +
                            std::lcm(a.period().size(), b.period().size());
  for (std::size_t i = 1; i <= bound; ++i)
    if (a.digit(i) != b.digit(i)) return i;
  return 0;
}

std::strong_ordering lex_cmp(const PeriodicSeq& a, const PeriodicSeq& b) {
  std::size_t i = first_difference(a, b);
  if (i == 0) return std::strong_ordering::equal;
  return a.digit(i) <=> b.digit(i);
}

Rational rho_distance(const PeriodicSeq& c, const PeriodicSeq& d) {
  std::size_t n = first_difference(c, d);
  return n == 0 ? Rational(0) : pow2(-static_cast<int>(n));
}

bool is_infinite(const PeriodicSeq& c) {
  return std::any_of(c.period().begin(), c.period().end(), [](Digit d) { return d != 0; });
}

bool is_doubly_infinite(const PeriodicSeq& c) {
  const int M = c.alphabet().M;
  return is_infinite(c) && std::any_of(c.period().begin(), c.period().end(), [M](Digit d) { return d < M; });
}

Word thue_morse_prefix(std::size_t n) {
  if (n == 0) throw std::invalid_argument("thue_morse_prefix needs n >= 1");
  Digits out(n);
  for (std::size_t i = 1; i <= n; ++i) out[i - 1] = std::popcount(i) & 1;
  return Word(Alphabet(1), std::move(out));
}

namespace {

std::string digits_text(const Digits& digits, Alphabet alphabet) {
  std::string s;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (alphabet.M > 9 && i > 0) s += ',';
    s += std::to_string(digits[i]);
  }
  return s;
}

Digits parse_digits(std::string_view text, Alphabet alphabet) {
  Digits out;
  if (text.empty()) return out;
  if (alphabet.M > 9) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t comma = text.find(',', start);
      std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
      if (part.empty() || !std::all_of(part.begin(), part.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw ParseError("malformed digit list '" + std::string(text) + "'");
      out.push_back(std::stoi(std::string(part)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw ParseError("malformed digit '" + std::string(1, ch) + "'");
      out.push_back(ch - '0');
    }
  }
  for (Digit d : out)
    if (!alphabet.valid(d)) throw InvalidDigit("digit " + std::to_string(d) + " exceeds M=" + std::to_string(alphabet.M));
  return out;
}

}  // namespace

std::string to_string(const Word& w) { return digits_text(w.digits(), w.alphabet()); }

std::string to_string(const PeriodicSeq& c) {
  return digits_text(c.preperiod(), c.alphabet()) + "(" + digits_text(c.period(), c.alphabet()) + ")";
}

Word parse_word(std::string_view text, Alphabet alphabet) {
  if (text.find('(') != std::string_view::npos) throw ParseError("expected a finite word, got '" + std::string(text) + "'");
  return Word(alphabet, parse_digits(text, alphabet));
}

PeriodicSeq parse_periodic(std::string_view text, Alphabet alphabet) {
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw ParseError("expected 'pre(period)', got '" + std::string(text) + "'");
  Digits pre = parse_digits(text.substr(0, open), alphabet);
  Digits per = parse_digits(text.substr(open + 1, text.size() - open - 2), alphabet);
  if (per.empty()) throw ParseError("empty period in '" + std::string(text) + "'");
  return PeriodicSeq(alphabet, std::move(pre), std::move(per));
}

}  // namespace univoque
