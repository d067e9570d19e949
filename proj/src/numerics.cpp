#include "univoque/numerics.hpp"

#include "univoque/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <vector>

namespace univoque {

namespace {

std::atomic<int> g_refinement_cap{256};

// Refinement levels visited by sign determination.
constexpr int kLevelSchedule[] = {0, 2, 4, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768, 1024};

}  // namespace

int refinement_cap() { return g_refinement_cap.load(); }
void set_refinement_cap(int rounds) { g_refinement_cap.store(std::max(rounds, 0)); }

// ---------------------------------------------------------------------------
// BaseValue

struct BaseValue::State {
  Kind kind = Kind::Rational;
  Alphabet alphabet;
  Rational value;
  Poly poly;
  Rational lo, hi;  // isolating interval as given (algebraic)

  mutable std::mutex mu;
  mutable std::vector<Interval> levels;     // algebraic bisection levels
  mutable std::map<int, Interval> kl_cache;  // Komornik-Loreti enclosures by level
};

namespace {

int sign_of(const Poly& p, const Rational& x) { return sign(p(x)); }

}  // namespace

BaseValue BaseValue::rational(Alphabet alphabet, const Rational& q) {
  if (q <= 1) throw BaseOutOfRange("base must exceed 1, got " + to_string(q));
  auto s = std::make_shared<State>();
  s->kind = Kind::Rational;
  s->alphabet = alphabet;
  s->value = q;
  return BaseValue(std::move(s));
}

BaseValue BaseValue::algebraic(Alphabet alphabet, const Poly& poly, const Rational& lo_in, const Rational& hi_in) {
  Poly p = square_free_part(poly);
  if (p.degree() < 1) throw ParseError("defining polynomial must have degree >= 1");
  Rational lo = lo_in, hi = hi_in;
  if (!(lo < hi)) throw ParseError("isolating interval needs lo < hi");
  if (hi <= 1) throw DegenerateBase("isolating interval lies at or below 1");
  const int roots = count_roots(p, lo, hi);
  if (roots == 0) throw NoRootInRange("no root of " + p.str() + " in (" + to_string(lo) + ", " + to_string(hi) + "]");
  if (roots > 1) throw AmbiguousRoot("several roots of " + p.str() + " in (" + to_string(lo) + ", " + to_string(hi) + "]");
  if (p(hi) == 0) return rational(alphabet, hi);
  if (lo < 1 || (lo == 1 && p(lo) == 0)) {
    if (count_roots(p, Rational(1), hi) == 0) throw DegenerateBase("root does not exceed 1");
  }
  const Rational given_lo = lo, given_hi = hi;
  // Shrink until the left endpoint exceeds 1 and is not a root.
  for (int round = 0; lo <= 1 || p(lo) == 0; ++round) {
    if (round > refinement_cap()) throw DegenerateBase("cannot separate the base from 1");
    Rational mid = (lo + hi) / 2;
    if (p(mid) == 0) return rational(alphabet, mid);
    if (count_roots(p, lo, mid) == 1)
      hi = mid;
    else
      lo = mid;
  }
  if (p.degree() == 1) return rational(alphabet, -p.coeff(0) / p.coeff(1));

  // A rational root a/b of a primitive integer polynomial has b | leading.
  // Once the interval is narrower than 1/lead^2 it holds at most one such
  // fraction, which is then the simplest rational inside.
  {
    const Rational lead = abs(p.leading());
    const Rational target = 1 / (2 * lead * lead);
    Rational a = lo, b = hi;
    const int sa = sign_of(p, a);
    while (b - a >= target) {
      Rational mid = (a + b) / 2;
      int sm = sign_of(p, mid);
      if (sm == 0) return rational(alphabet, mid);
      (sm == sa ? a : b) = mid;
    }
    Rational cand = simplest_rational(a, b);
    if (p(cand) == 0) return rational(alphabet, cand);
  }

  auto s = std::make_shared<State>();
  s->kind = Kind::Algebraic;
  s->alphabet = alphabet;
  s->poly = p;
  s->lo = given_lo > 1 && p(given_lo) != 0 ? given_lo : lo;
  s->hi = given_hi;
  s->levels.push_back(Interval(s->lo, s->hi));
  return BaseValue(std::move(s));
}

BaseValue BaseValue::komornik_loreti() {
  static const std::shared_ptr<State> kl = [] {
    auto s = std::make_shared<State>();
    s->kind = Kind::KomornikLoreti;
    s->alphabet = Alphabet(1);
    return s;
  }();
  return BaseValue(kl);
}

BaseValue::Kind BaseValue::kind() const { return s_->kind; }
Alphabet BaseValue::alphabet() const { return s_->alphabet; }

const Rational& BaseValue::value() const {
  if (s_->kind != Kind::Rational) throw std::logic_error("BaseValue::value on a non-rational base");
  return s_->value;
}

const Poly& BaseValue::modulus() const {
  if (s_->kind != Kind::Algebraic) throw std::logic_error("BaseValue::modulus on a non-algebraic base");
  return s_->poly;
}

Interval BaseValue::enclosure(int level) const {
  level = std::max(level, 0);
  switch (s_->kind) {
    case Kind::Rational:
      return Interval(s_->value);
    case Kind::Algebraic: {
      std::lock_guard lock(s_->mu);
      auto& lv = s_->levels;
      const int s_lo = sign_of(s_->poly, lv.front().lo);
      while (static_cast<int>(lv.size()) <= level) {
        Interval cur = lv.back();
        Rational mid = cur.midpoint();
        int sm = sign_of(s_->poly, mid);
        if (sm == 0)
          cur = Interval(mid);  // unreachable for irrational roots
        else if (sm == s_lo)
          cur.lo = mid;
        else
          cur.hi = mid;
        lv.push_back(cur);
      }
      return lv[static_cast<std::size_t>(level)];
    }
    case Kind::KomornikLoreti: {
      std::lock_guard lock(s_->mu);
      auto it = s_->kl_cache.find(level);
      if (it != s_->kl_cache.end()) return it->second;
      Interval e = thue_morse_root_enclosure(24 + level);
      s_->kl_cache.emplace(level, e);
      return e;
    }
  }
  return {};
}

BaseValue BaseValue::offset(const Rational& delta) const {
  switch (s_->kind) {
    case Kind::Rational:
      return rational(s_->alphabet, s_->value + delta);
    case Kind::Algebraic: {
      Interval e = enclosure(0);
      return algebraic(s_->alphabet, s_->poly.translated(-delta), e.lo + delta, e.hi + delta);
    }
    case Kind::KomornikLoreti:
      break;
  }
  throw std::logic_error("the Komornik-Loreti base has no exact offsets");
}

std::string BaseValue::spec() const {
  switch (s_->kind) {
    case Kind::Rational:
      return "rational:" + to_string(s_->value);
    case Kind::Algebraic:
      return "poly:" + s_->poly.str() + "@" + to_string(s_->lo) + "," + to_string(s_->hi);
    case Kind::KomornikLoreti:
      return "kl";
  }
  return {};
}

double BaseValue::approx() const {
  if (s_->kind == Kind::Rational) return to_double(s_->value);
  return to_double(enclosure(40).midpoint());
}

bool operator==(const BaseValue& a, const BaseValue& b) {
  if (a.s_ == b.s_) return true;
  if (a.kind() != b.kind() || a.alphabet() != b.alphabet()) return false;
  switch (a.kind()) {
    case BaseValue::Kind::Rational:
      return a.s_->value == b.s_->value;
    case BaseValue::Kind::Algebraic: {
      if (a.s_->poly != b.s_->poly) return false;
      Interval ia = a.enclosure(0), ib = b.enclosure(0);
      Rational lo = std::max(ia.lo, ib.lo), hi = std::min(ia.hi, ib.hi);
      if (lo >= hi) return false;
      return count_roots(a.s_->poly, lo, hi) == 1 || a.s_->poly(hi) == 0;
    }
    case BaseValue::Kind::KomornikLoreti:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Komornik-Loreti enclosure by bisection on the truncated Thue-Morse series.

namespace {

// Sign of F(m) - 1 with F(m) = Σ τ_i m^-i, in fixed point with `bits` of
// headroom; 0 when the bracket on F(m) straddles 1.
int thue_morse_series_sign(const Rational& m, int bits) {
  // 1/m <= 2/3 on the bisection range, so each digit gains >= 0.58 bits.
  const long n_terms = static_cast<long>((bits + 16) * 1.75) + 8;
  const int W = bits + 2 * static_cast<int>(std::bit_width(static_cast<unsigned long>(n_terms))) + 24;
  Integer one = 1;
  one <<= static_cast<unsigned>(W);
  const Integer xl = (one * denominator(m)) / numerator(m);
  const Integer xh = xl + 1;
  Integer pl = one, ph = one, sl = 0, sh = 0;
  for (long i = 1; i <= n_terms; ++i) {
    pl = (pl * xl) >> static_cast<unsigned>(W);
    ph = ((ph * xh) >> static_cast<unsigned>(W)) + 1;
    if (std::popcount(static_cast<unsigned long>(i)) & 1) {
      sl += pl;
      sh += ph;
    }
  }
  // Remaining terms sum to at most x^N * x / (1 - x).
  sh += (ph * xh) / (one - xh) + 1;
  if (sl > one) return 1;
  if (sh < one) return -1;
  return 0;
}

}  // namespace

Interval thue_morse_root_enclosure(int bits) {
  static std::mutex mu;
  static std::map<int, Interval> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(bits); it != cache.end()) return it->second;
  }
  Rational lo(3, 2), hi(2);
  const Rational target = pow2(-bits);
  int extra = 0;
  while (hi - lo > target) {
    Rational mid = (lo + hi) / 2;
    int s = thue_morse_series_sign(mid, bits + extra);
    if (s > 0)
      lo = mid;  // series still above 1: the root lies to the right
    else if (s < 0)
      hi = mid;
    else if ((extra += 32) > 8192)
      throw PrecisionExhausted("Thue-Morse series sign undecided");
  }
  Interval result(lo, hi);
  std::lock_guard lock(mu);
  cache.emplace(bits, result);
  return result;
}

// ---------------------------------------------------------------------------
// Signs and XReal

int sign_at(const Poly& p_in, const BaseValue& base) {
  if (p_in.degree() <= 0) return p_in.is_zero() ? 0 : sign(p_in.coeff(0));
  if (base.is_rational()) return sign(p_in(base.value()));
  Poly p = p_in;
  if (base.kind() == BaseValue::Kind::Algebraic) {
    p = p % base.modulus();
    if (p.degree() <= 0) return p.is_zero() ? 0 : sign(p.coeff(0));
  }
  bool zero_tested = base.kind() != BaseValue::Kind::Algebraic;
  const int cap = refinement_cap();
  for (int level : kLevelSchedule) {
    if (level > cap) break;
    Interval v = p(base.enclosure(level));
    if (v.positive()) return 1;
    if (v.negative()) return -1;
    if (!zero_tested && level >= 12) {
      zero_tested = true;
      // p(q) = 0 iff q is a root of gcd(p, modulus); that gcd has at most
      // one root in the isolating interval and it is simple.
      Poly g = gcd(p, base.modulus());
      if (g.degree() >= 1) {
        Interval iso = base.enclosure(0);
        if (sign(g(iso.lo)) * sign(g(iso.hi)) < 0) return 0;
      }
    }
  }
  throw PrecisionExhausted("sign undecided after " + std::to_string(cap) + " refinement rounds for base " + base.spec());
}

XReal::XReal(BaseValue base, const Rational& constant) : base_(std::move(base)), num_(constant), den_(Rational(1)) {}

XReal::XReal(BaseValue base, Poly num, Poly den) : base_(std::move(base)), num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("XReal with zero denominator");
  normalize();
}

void XReal::normalize() {
  if (base_.is_rational()) {
    const Rational& q = base_.value();
    Rational d = den_(q);
    if (d == 0) throw std::domain_error("XReal denominator vanishes at the base");
    num_ = Poly(num_(q) / d);
    den_ = Poly(Rational(1));
    return;
  }
  if (base_.kind() == BaseValue::Kind::Algebraic) {
    num_ = num_ % base_.modulus();
    den_ = den_ % base_.modulus();
    if (den_.is_zero()) throw std::domain_error("XReal denominator vanishes at the base");
  }
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  if (den_.degree() == 0) {
    num_ *= Rational(1 / den_.coeff(0));
    den_ = Poly(Rational(1));
  }
}

Interval XReal::enclosure(int level) const {
  Interval b = base_.enclosure(level);
  Interval n = num_(b);
  if (den_.degree() == 0) return den_.coeff(0) * n;
  Interval d = den_(b);
  for (int extra = 1; !d.positive(); ++extra) {
    // den(q) > 0; refine until the enclosure shows it.
    b = base_.enclosure(level + extra * 4);
    n = num_(b);
    d = den_(b);
    if (extra > 256) throw PrecisionExhausted("denominator enclosure does not separate from 0");
  }
  Rational c[] = {n.lo / d.lo, n.lo / d.hi, n.hi / d.lo, n.hi / d.hi};
  return {*std::min_element(std::begin(c), std::end(c)), *std::max_element(std::begin(c), std::end(c))};
}

namespace {

const BaseValue& common_base(const XReal& a, const XReal& b) {
  if (a.is_constant()) return b.base();
  if (b.is_constant() || a.base() == b.base()) return a.base();
  throw std::invalid_argument("XReal arithmetic across different bases: " + a.base().spec() + " vs " + b.base().spec());
}

}  // namespace

XReal XReal::operator-() const { return XReal(base_, -num_, den_); }

XReal operator+(const XReal& a, const XReal& b) {
  const BaseValue& base = common_base(a, b);
  if (a.den_ == b.den_) return XReal(base, a.num_ + b.num_, a.den_);
  return XReal(base, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

XReal operator-(const XReal& a, const XReal& b) { return a + (-b); }

XReal operator*(const XReal& a, const XReal& b) {
  return XReal(common_base(a, b), a.num_ * b.num_, a.den_ * b.den_);
}

XReal operator/(const XReal& a, const XReal& b) {
  const BaseValue& base = common_base(a, b);
  int s = sign_at(b.num_, base);
  if (s == 0) throw std::domain_error("XReal division by zero");
  Poly num = a.num_ * b.den_;
  Poly den = a.den_ * b.num_;
  if (s < 0) {
    num = -num;
    den = -den;
  }
  return XReal(base, std::move(num), std::move(den));
}

int sign(const XReal& x) { return sign_at(x.num(), x.base()); }

std::strong_ordering compare(const XReal& x, const XReal& y) {
  if (x.base() == y.base() && x.num() == y.num() && x.den() == y.den()) return std::strong_ordering::equal;
  int s = sign(x - y);
  return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

XReal abs(const XReal& x) { return sign(x) < 0 ? -x : x; }

// ---------------------------------------------------------------------------

XReal eval_value(const PeriodicSeq& c, const BaseValue& q) {
  if (c.alphabet() != q.alphabet()) throw InvalidDigit("sequence and base use different alphabets");
  const Digits& pre = c.preperiod();
  const Digits& per = c.period();
  const std::size_t a = pre.size(), L = per.size();
  // (pre part) + q^-a * per(q) / (q^L - 1), over the common denominator q^a (q^L - 1).
  Poly pre_poly, per_poly;
  for (std::size_t i = 0; i < a; ++i) pre_poly += Poly::monomial(Rational(pre[i]), a - 1 - i);
  for (std::size_t j = 0; j < L; ++j) per_poly += Poly::monomial(Rational(per[j]), L - 1 - j);
  Poly qL1 = Poly::monomial(Rational(1), L) - Poly(Rational(1));
  return XReal(q, pre_poly * qL1 + per_poly, Poly::monomial(Rational(1), a) * qL1);
}

XReal eval_word(const Word& w, const BaseValue& q) {
  const std::size_t n = w.size();
  Poly num;
  for (std::size_t i = 0; i < n; ++i) num += Poly::monomial(Rational(w.digits()[i]), n - 1 - i);
  return XReal(q, num, Poly::monomial(Rational(1), n));
}

BaseValue base_from_expansion(const PeriodicSeq& c) {
  const Alphabet alphabet = c.alphabet();
  if (!is_infinite(c) && std::all_of(c.preperiod().begin(), c.preperiod().end(), [](Digit d) { return d == 0; }))
    throw NoRootInRange("the zero sequence has value 0 in every base");
  // Clear denominators of value(c) = 1 symbolically in x.
  const Digits& pre = c.preperiod();
  const Digits& per = c.period();
  const std::size_t a = pre.size(), L = per.size();
  Poly pre_poly, per_poly;
  for (std::size_t i = 0; i < a; ++i) pre_poly += Poly::monomial(Rational(pre[i]), a - 1 - i);
  for (std::size_t j = 0; j < L; ++j) per_poly += Poly::monomial(Rational(per[j]), L - 1 - j);
  Poly qL1 = Poly::monomial(Rational(1), L) - Poly(Rational(1));
  Poly eq = square_free_part((pre_poly * qL1 + per_poly) - Poly::monomial(Rational(1), a) * qL1);

  const Rational lo(1), hi(alphabet.M + 1);
  const int roots = count_roots(eq, lo, hi);
  if (roots == 0) throw NoRootInRange("value of " + to_string(c) + " never equals 1 for q in (1, M+1]");
  if (roots > 1) throw AmbiguousRoot("several bases in (1, M+1] give " + to_string(c) + " the value 1");
  return BaseValue::algebraic(alphabet, eq, lo, hi);
}

XReal tail_bound(const BaseValue& q, int m) {
  if (m < 0) throw std::invalid_argument("tail_bound needs m >= 0");
  Poly den = Poly::monomial(Rational(1), static_cast<std::size_t>(m)) * Poly{Rational(-1), Rational(1)};
  return XReal(q, Poly(Rational(q.alphabet().M)), den);
}

Rational simplest_rational(const Rational& lo, const Rational& hi) {
  if (lo > hi || lo <= 0) throw std::invalid_argument("simplest_rational needs 0 < lo <= hi");
  Integer c = ceil(lo);
  if (Rational(c) <= hi) return Rational(c);
  Integer n = floor(lo);
  Rational inner = simplest_rational(1 / (hi - n), 1 / (lo - n));
  return Rational(n) + 1 / inner;
}

}  // namespace univoque
