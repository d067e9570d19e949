#include "univoque/polynomial.hpp"

#include <stdexcept>

namespace univoque {

Poly::Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
Poly::Poly(const Rational& constant) : c_{constant} { trim(); }

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Interval Poly::operator()(const Interval& x) const {
  Interval acc(Rational(0));
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * x;
    acc.lo += *it;
    acc.hi += *it;
  }
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * Rational(1 / leading());
}

Poly Poly::translated(const Rational& shift) const {
  // Horner with the linear factor (x + shift).
  Poly acc;
  const Poly lin{shift, Rational(1)};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= lin;
    acc += Poly(*it);
  }
  return acc;
}

Poly Poly::primitive() const {
  if (is_zero()) return *this;
  Integer den_lcm = 1;
  for (const auto& c : c_) den_lcm = lcm(den_lcm, denominator(c));
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& c : c_) {
    Rational scaled = c * den_lcm;
    ints.push_back(numerator(scaled));
    g = gcd(g, numerator(scaled));
  }
  if (ints.back() < 0) g = -g;
  std::vector<Rational> out;
  for (const auto& v : ints) out.emplace_back(v / g);
  return Poly(std::move(out));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> out(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(out);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

std::string Poly::str() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += to_string(c_[i]);
  }
  return s;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto& bc = b.coeffs();
  const Rational inv_lead = 1 / b.leading();
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    const auto top = static_cast<std::size_t>(i + b.degree());
    Rational f = rem[top] * inv_lead;
    quot[static_cast<std::size_t>(i)] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[static_cast<std::size_t>(i) + j] -= f * bc[j];
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) {
  if (a.degree() < b.degree()) return a;
  return divmod(a, b).second;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = (a % b).primitive();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly square_free_part(const Poly& p) {
  if (p.degree() <= 0) return p;
  Poly g = gcd(p, p.derivative());
  return divmod(p, g).first.primitive();
}

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

namespace {

int sign_variations(const std::vector<Poly>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = sign(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

}  // namespace

int count_roots(const Poly& p, const Rational& a, const Rational& b) {
  if (p.degree() <= 0) return 0;
  Poly sf = square_free_part(p);
  std::vector<Poly> chain{sf, sf.derivative()};
  while (chain.back().degree() > 0) {
    Poly r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return sign_variations(chain, a) - sign_variations(chain, b);
}

}  // namespace univoque
