#include "univoque/expansions.hpp"

#include "univoque/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace univoque {

namespace {

std::string state_key(const XReal& r) { return r.num().str() + "/" + r.den().str(); }

void require_base_in_range(const BaseValue& q) {
  if (exceeds_full_base(q))
    throw BaseOutOfRange("base " + q.spec() + " exceeds M+1=" + std::to_string(q.alphabet().M + 1));
}

// Digit recursion on remainders r_0 = 1, r_k = q r_{k-1} - d_k. Strict keeps
// every remainder positive (quasi-greedy); otherwise remainders may reach 0.
AlphaExpansion expand_one(const BaseValue& q, std::size_t n, std::size_t certify_depth, bool strict) {
  require_base_in_range(q);
  const Alphabet alphabet = q.alphabet();
  const int M = alphabet.M;
  const XReal qx = XReal::q(q);
  XReal r(q, Rational(1));
  std::map<std::string, std::size_t> seen{{state_key(r), 0}};
  Digits digits;
  std::optional<PeriodicSeq> cycle;
  const std::size_t limit = std::max(n, certify_depth);

  for (std::size_t k = 1; k <= limit; ++k) {
    const XReal t = qx * r;
    auto fits = [&](int d) {
      int s = sign(t - XReal(q, Rational(d)));
      return strict ? s > 0 : s >= 0;
    };
    int lo = 0, hi = M;  // fits(lo) holds: t > 0 in the strict case, t >= 0 otherwise
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (fits(mid))
        lo = mid;
      else
        hi = mid - 1;
    }
    digits.push_back(lo);
    r = t - XReal(q, Rational(lo));
    if (!strict && r.num().is_zero()) {
      cycle = PeriodicSeq(alphabet, digits, {0});
      break;
    }
    if (!strict && sign(r) == 0) {
      cycle = PeriodicSeq(alphabet, digits, {0});
      break;
    }
    auto [it, inserted] = seen.emplace(state_key(r), k);
    if (!inserted) {
      const auto j = static_cast<std::ptrdiff_t>(it->second);
      cycle = PeriodicSeq(alphabet, Digits(digits.begin(), digits.begin() + j), Digits(digits.begin() + j, digits.end()));
      break;
    }
  }

  if (cycle) {
    if (compare(eval_value(*cycle, q), XReal(q, Rational(1))) != 0)
      throw std::logic_error("certified expansion " + to_string(*cycle) + " does not evaluate to 1");
    return {cycle->prefix(n), cycle};
  }
  digits.resize(n);
  return {Word(alphabet, std::move(digits)), std::nullopt};
}

// Compares digits 1..len of a tail with a reference; 0 when all agree.
int compare_prefix(const PeriodicSeq& tail, const Word& ref, std::size_t len) {
  for (std::size_t i = 1; i <= len; ++i) {
    int a = tail.digit(i), b = ref.digit(i);
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

}  // namespace

bool exceeds_full_base(const BaseValue& q) {
  const Rational top(q.alphabet().M + 1);
  if (q.is_rational()) return q.value() > top;
  return sign_at(Poly{-top, Rational(1)}, q) > 0;
}

AlphaExpansion quasi_greedy_alpha(const BaseValue& q, std::size_t n, std::size_t certify_depth) {
  if (n == 0) throw std::invalid_argument("quasi_greedy_alpha needs n >= 1");
  return expand_one(q, n, certify_depth, true);
}

AlphaExpansion greedy_beta(const BaseValue& q, std::size_t n, std::size_t certify_depth) {
  if (n == 0) throw std::invalid_argument("greedy_beta needs n >= 1");
  return expand_one(q, n, certify_depth, false);
}

std::string to_string(MembershipVerdict::Status s) {
  switch (s) {
    case MembershipVerdict::Status::In:
      return "In";
    case MembershipVerdict::Status::Out:
      return "Out";
    case MembershipVerdict::Status::Unknown:
      return "Unknown";
  }
  return {};
}

MembershipVerdict is_unique_expansion(const XReal& x, const BaseValue& q, std::size_t depth) {
  require_base_in_range(q);
  const int M = q.alphabet().M;
  const XReal qx = XReal::q(q);
  const XReal top = XReal(q, Rational(M)) / (qx - XReal(q, Rational(1)));
  if (sign(x) < 0 || compare(x, top) > 0) throw std::domain_error("x lies outside [0, M/(q-1)]");

  XReal r = x;
  std::map<std::string, std::size_t> seen{{state_key(r), 0}};
  for (std::size_t k = 1; k <= depth; ++k) {
    const XReal t = qx * r;
    int admissible = 0;
    std::optional<XReal> next;
    for (int d = 0; d <= M; ++d) {
      XReal rem = t - XReal(q, Rational(d));
      if (sign(rem) < 0) break;  // larger digits are negative too
      if (compare(rem, top) > 0) continue;
      ++admissible;
      if (admissible > 1) return {MembershipVerdict::Status::Out, k, k};
      next = rem;
    }
    if (!next) throw std::logic_error("no admissible digit for a remainder inside the value range");
    r = *next;
    if (!seen.emplace(state_key(r), k).second) return {MembershipVerdict::Status::In, std::nullopt, k};
  }
  return {MembershipVerdict::Status::Unknown, std::nullopt, depth};
}

MembershipVerdict check_lexicographic(const PeriodicSeq& c, const AlphaExpansion& alpha, bool strict) {
  const int M = c.alphabet().M;
  const std::size_t shifts = c.distinct_tails();
  bool unknown = false;
  if (alpha.certified) {
    const PeriodicSeq& a = *alpha.certified;
    const PeriodicSeq ra = reflect(a);
    for (std::size_t k = 1; k <= shifts; ++k) {
      const PeriodicSeq tail = shift(c, k);
      if (c.digit(k) < M) {
        auto o = lex_cmp(tail, a);
        if (strict ? o >= 0 : o > 0) return {MembershipVerdict::Status::Out, k, shifts};
      }
      if (c.digit(k) > 0) {
        auto o = lex_cmp(tail, ra);
        if (strict ? o <= 0 : o < 0) return {MembershipVerdict::Status::Out, k, shifts};
      }
    }
    return {MembershipVerdict::Status::In, std::nullopt, shifts};
  }
  // Only a prefix of α is known: a difference inside the prefix decides.
  const Word& w = alpha.prefix;
  const Word rw = reflect(w);
  for (std::size_t k = 1; k <= shifts; ++k) {
    const PeriodicSeq tail = shift(c, k);
    if (c.digit(k) < M) {
      int o = compare_prefix(tail, w, w.size());
      if (o > 0) return {MembershipVerdict::Status::Out, k, w.size()};
      if (o == 0) unknown = true;
    }
    if (c.digit(k) > 0) {
      int o = compare_prefix(tail, rw, rw.size());
      if (o < 0) return {MembershipVerdict::Status::Out, k, w.size()};
      if (o == 0) unknown = true;
    }
  }
  return {unknown ? MembershipVerdict::Status::Unknown : MembershipVerdict::Status::In, std::nullopt, w.size()};
}

namespace {

MembershipVerdict membership(const PeriodicSeq& c, const BaseValue& q, std::size_t depth, bool strict) {
  if (c.alphabet() != q.alphabet()) throw InvalidDigit("sequence and base use different alphabets");
  // Above M+1 distinct sequences have distinct values: everything is unique.
  if (exceeds_full_base(q)) return {MembershipVerdict::Status::In, std::nullopt, 0};
  return check_lexicographic(c, quasi_greedy_alpha(q, std::max<std::size_t>(depth, 1), depth), strict);
}

}  // namespace

MembershipVerdict in_Uq_prime(const PeriodicSeq& c, const BaseValue& q, std::size_t depth) {
  return membership(c, q, depth, true);
}

MembershipVerdict in_Vq_prime(const PeriodicSeq& c, const BaseValue& q, std::size_t depth) {
  return membership(c, q, depth, false);
}

std::string to_string(BaseClass::Verdict v) {
  switch (v) {
    case BaseClass::Verdict::NotInV:
      return "NotInV";
    case BaseClass::Verdict::InVNotInClosureU:
      return "InVNotInClosureU";
    case BaseClass::Verdict::InClosureUNotInU:
      return "InClosureUNotInU";
    case BaseClass::Verdict::InU:
      return "InU";
    case BaseClass::Verdict::Unknown:
      return "Unknown";
  }
  return {};
}

namespace {

// α = (v refl(v))^∞ for a purely periodic α; this includes (M/2)^∞.
bool reflective_period(const PeriodicSeq& a) {
  if (!a.preperiod().empty()) return false;
  const Digits& per = a.period();
  const int M = a.alphabet().M;
  if (per.size() == 1) return 2 * per[0] == M;
  if (per.size() % 2 != 0) return false;
  const std::size_t h = per.size() / 2;
  for (std::size_t i = 0; i < h; ++i)
    if (per[i + h] != M - per[i]) return false;
  return true;
}

BaseClass classify_komornik_loreti(std::size_t depth) {
  const BaseValue q = BaseValue::komornik_loreti();
  const std::size_t n = std::max<std::size_t>(depth, 8);
  AlphaExpansion a = quasi_greedy_alpha(q, n);
  std::ostringstream ev;
  if (a.prefix != thue_morse_prefix(n))
    throw std::logic_error("digit recursion at the Komornik-Loreti constant departs from Thue-Morse");
  ev << "alpha_1..alpha_" << n << " from the digit recursion equals the Thue-Morse word";
  // Strict admissibility of every shift that resolves inside the known digits.
  const Word& w = a.prefix;
  const Word rw = reflect(w);
  std::size_t resolved = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t len = n - k;
    int up = 0, down = 0;
    for (std::size_t i = 1; i <= len && (up == 0 || down == 0); ++i) {
      if (up == 0 && w.digit(k + i) != w.digit(i)) up = w.digit(k + i) < w.digit(i) ? -1 : 1;
      if (down == 0 && w.digit(k + i) != rw.digit(i)) down = w.digit(k + i) > rw.digit(i) ? 1 : -1;
    }
    if ((w.digit(k) < 1 && up > 0) || (w.digit(k) > 0 && down < 0))
      return {BaseClass::Verdict::NotInV, ev.str() + "; lexicographic violation at shift " + std::to_string(k), n};
    if ((w.digit(k) == 1 || up < 0) && (w.digit(k) == 0 || down > 0)) ++resolved;
  }
  ev << "; " << resolved << " of " << (n - 1)
     << " shifts strictly admissible within the known digits; the Thue-Morse sequence is strictly "
        "self-admissible at every shift, so 1 has a unique expansion";
  return {BaseClass::Verdict::InU, ev.str(), n};
}

}  // namespace

BaseClass classify_base(const BaseValue& q, std::size_t depth) {
  require_base_in_range(q);
  if (q.kind() == BaseValue::Kind::KomornikLoreti) return classify_komornik_loreti(depth);

  std::ostringstream ev;
  const AlphaExpansion alpha = quasi_greedy_alpha(q, std::max<std::size_t>(depth, 1), depth);
  if (alpha.certified)
    ev << "alpha=" << to_string(*alpha.certified) << " (certified)";
  else
    ev << "alpha starts " << to_string(alpha.prefix) << " (no cycle within " << depth << " digits)";

  // V-test: α itself must satisfy the non-strict conditions.
  MembershipVerdict v;
  if (alpha.certified) {
    v = check_lexicographic(*alpha.certified, alpha, false);
  } else {
    // Tails of the prefix, compared where both are known.
    const Word& w = alpha.prefix;
    const Word rw = reflect(w);
    const int M = q.alphabet().M;
    v.status = MembershipVerdict::Status::Unknown;
    for (std::size_t k = 1; k < w.size() && !v.witness; ++k) {
      for (std::size_t i = 1; k + i <= w.size(); ++i) {
        int d = w.digit(k + i);
        if (w.digit(k) < M && d != w.digit(i)) {
          if (d > w.digit(i)) v = {MembershipVerdict::Status::Out, k, w.size()};
          break;
        }
      }
      if (v.witness) break;
      for (std::size_t i = 1; k + i <= w.size(); ++i) {
        int d = w.digit(k + i);
        if (w.digit(k) > 0 && d != rw.digit(i)) {
          if (d < rw.digit(i)) v = {MembershipVerdict::Status::Out, k, w.size()};
          break;
        }
      }
    }
  }

  const MembershipVerdict u = is_unique_expansion(XReal(q, Rational(1)), q, depth);
  if (u.status == MembershipVerdict::Status::In) {
    ev << "; 1 has a unique expansion (remainder cycle at step " << u.checked_depth << ")";
    return {BaseClass::Verdict::InU, ev.str(), depth};
  }
  if (v.status == MembershipVerdict::Status::Out) {
    ev << "; V-condition fails at shift " << *v.witness;
    return {BaseClass::Verdict::NotInV, ev.str(), depth};
  }
  if (v.status != MembershipVerdict::Status::In || !alpha.certified) {
    ev << "; undecided at depth " << depth;
    return {BaseClass::Verdict::Unknown, ev.str(), depth};
  }
  if (u.status == MembershipVerdict::Status::Out)
    ev << "; 1 has two expansions (branch at step " << *u.witness << ")";
  else
    ev << "; alpha is periodic, so 1 also has a finite greedy expansion";
  if (reflective_period(*alpha.certified)) {
    ev << "; period has the form v refl(v)";
    return {BaseClass::Verdict::InVNotInClosureU, ev.str(), depth};
  }
  if (!alpha.certified->preperiod().empty()) {
    ev << "; eventually periodic alpha outside U is not expected";
    return {BaseClass::Verdict::Unknown, ev.str(), depth};
  }
  ev << "; period is not of the form v refl(v)";
  return {BaseClass::Verdict::InClosureUNotInU, ev.str(), depth};
}

KlApproximation kl_constant(int precision_bits) {
  if (precision_bits < 8) throw std::invalid_argument("kl_constant needs precision_bits >= 8");
  Interval iv = thue_morse_root_enclosure(precision_bits);
  return {iv, BaseValue::rational(Alphabet(1), iv.midpoint())};
}

}  // namespace univoque
