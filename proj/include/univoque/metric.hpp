#pragma once

// Point clouds approximating U_q and V_q on the real line, Hausdorff
// distances between them, and continuity probes q_k -> q.

#include "univoque/subshift.hpp"

#include <optional>
#include <string>
#include <vector>

namespace univoque {

struct PointCloud {
  std::vector<XReal> points;  // ascending, distinct
  XReal per_point_error;
  BaseValue base;
  SetKind kind = SetKind::U;
  std::size_t depth = 0;
  bool certified = false;  // built from a certified prefix set
};

/// One point per word of B_n (the upper bracket when uncertified): the
/// word completed by an accepted automaton lasso when α(q) is certified,
/// else by 0^∞. The error is tail_bound(q, n), or 0 when every word has a
/// single accepted continuation (then the cloud is the set itself).
PointCloud approx_set_points(const BaseValue& q, SetKind kind, std::size_t n,
                             std::size_t alpha_depth = kDefaultCertificationDepth);

struct RealDistance {
  Rational low;   // outward-rounded bracket of the true Hausdorff distance
  Rational high;
  std::optional<XReal> exact;       // d_H of the finite point sets (same base only)
  std::optional<XReal> exact_low;   // max(0, exact - errA - errB)
  std::optional<XReal> exact_high;  // exact + errA + errB
};

/// Hausdorff distance of the point sets with error propagation. Same-base
/// clouds are compared exactly; otherwise point enclosures at `level` are used.
RealDistance hausdorff_real(const PointCloud& a, const PointCloud& b, int level = 48);

enum class Side { Left, Right };
std::string to_string(Side s);

struct ContinuityRow {
  std::size_t k = 0;
  BaseValue q_k;
  SymbolicDistance to_U;
  SymbolicDistance to_V;
  Rational real_low;
  Rational real_high;
  bool certified = false;  // every prefix set involved was certified
};

struct ContinuityReport {
  enum class Verdict { ConvergesWithinDepth, GapDetected, Inconclusive };

  BaseValue q;
  Side side = Side::Left;
  SetKind kind = SetKind::U;
  std::size_t depth = 0;
  std::vector<ContinuityRow> rows;
  Verdict verdict = Verdict::Inconclusive;
  bool converges_to_limit = false;  // side-appropriate distance at the floor in the last row
  Rational gap;                     // stabilized distance to the other target when GapDetected

  Rational floor() const { return pow2(-static_cast<int>(depth) - 1); }
};

std::string to_string(ContinuityReport::Verdict v);

/// q_k = q - 2^-k Δ (Left) or q + 2^-k Δ (Right), k = 1..steps. Left limits
/// are compared with U_q', right limits with V_q'.
ContinuityReport continuity_probe(const BaseValue& q, Side side, SetKind kind, std::size_t steps, std::size_t n,
                                  unsigned threads = 1, const Rational& delta = Rational(1, 4));

std::string report_to_csv(const ContinuityReport& r);
std::string report_to_json(const ContinuityReport& r);

struct GapResult {
  SymbolicDistance distance;
  bool certified = false;
};

/// Symbolic distance between the U_q' and V_q' prefix families at depth n.
GapResult discontinuity_gap(const BaseValue& q, std::size_t n);

}  // namespace univoque
