#pragma once

// Quasi-greedy and greedy expansions of 1, membership in U_q' and V_q',
// the branching unique-expansion oracle, and base classification.

#include "univoque/numerics.hpp"
#include "univoque/words.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace univoque {

inline constexpr std::size_t kDefaultCertificationDepth = 64;

/// The first digits of α(q) (or β(q)), and the whole sequence when the
/// remainder recursion was seen to cycle.
struct AlphaExpansion {
  Word prefix;
  std::optional<PeriodicSeq> certified;

  std::size_t depth() const { return prefix.size(); }
};

/// α(q): α_k is the largest digit keeping the partial sum strictly below 1.
/// The recursion runs for max(n, certify_depth) digits looking for a cycle.
AlphaExpansion quasi_greedy_alpha(const BaseValue& q, std::size_t n, std::size_t certify_depth = 0);
/// β(q): as above with a non-strict inequality.
AlphaExpansion greedy_beta(const BaseValue& q, std::size_t n, std::size_t certify_depth = 0);

struct MembershipVerdict {
  enum class Status { In, Out, Unknown };
  Status status = Status::Unknown;
  std::optional<std::size_t> witness;  // step or shift index where a condition fails
  std::size_t checked_depth = 0;
};

std::string to_string(MembershipVerdict::Status s);

/// Follows the remainders x, qx - c_1, ... and counts admissible digits.
/// Out(k) when two digits are admissible at step k, In when the forced
/// remainder path cycles, Unknown(depth) otherwise.
MembershipVerdict is_unique_expansion(const XReal& x, const BaseValue& q, std::size_t depth);

/// Lexicographic characterisations: for every k >= 1 with c_k < M the tail
/// σ^k c stays below α(q) (at most α(q) for V), and for every k with c_k > 0
/// it stays above the reflection of α(q) (at least, for V).
MembershipVerdict in_Uq_prime(const PeriodicSeq& c, const BaseValue& q, std::size_t depth = kDefaultCertificationDepth);
MembershipVerdict in_Vq_prime(const PeriodicSeq& c, const BaseValue& q, std::size_t depth = kDefaultCertificationDepth);

/// Same checks against a known α (certified or a prefix).
MembershipVerdict check_lexicographic(const PeriodicSeq& c, const AlphaExpansion& alpha, bool strict);

struct BaseClass {
  enum class Verdict { NotInV, InVNotInClosureU, InClosureUNotInU, InU, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::string evidence;
  std::size_t depth = 0;
};

std::string to_string(BaseClass::Verdict v);

BaseClass classify_base(const BaseValue& q, std::size_t depth = kDefaultCertificationDepth);

/// Returns true when q > M + 1 (exactly).
bool exceeds_full_base(const BaseValue& q);

struct KlApproximation {
  Interval interval;  // width <= 2^-bits, contains the constant
  BaseValue base;     // interval midpoint as a rational base
};

/// The Komornik-Loreti constant for M = 1 by bisection on Σ τ_i q^-i = 1.
KlApproximation kl_constant(int precision_bits);

}  // namespace univoque
