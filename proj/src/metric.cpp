#include "univoque/metric.hpp"

#include "univoque/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace univoque {

namespace {

PeriodicSeq zero_completion(const Word& w) { return PeriodicSeq(w, Word(w.alphabet(), {0})); }

void sort_unique(std::vector<XReal>& pts) {
  std::sort(pts.begin(), pts.end(), [](const XReal& x, const XReal& y) { return compare(x, y) < 0; });
  auto last = std::unique(pts.begin(), pts.end(), [](const XReal& x, const XReal& y) { return compare(x, y) == 0; });
  pts.erase(last, pts.end());
}

// Directed Hausdorff distance sup_{a in A} min_{b in B} |a - b| for sorted, same-base point lists.
XReal directed(const std::vector<XReal>& A, const std::vector<XReal>& B) {
  std::optional<XReal> best;
  std::size_t j = 0;
  for (const XReal& a : A) {
    while (j + 1 < B.size() && compare(B[j + 1], a) <= 0) ++j;
    XReal d = abs(a - B[j]);
    if (j + 1 < B.size()) {
      XReal e = abs(B[j + 1] - a);
      if (compare(e, d) < 0) d = e;
    }
    if (!best || compare(d, *best) > 0) best = d;
  }
  return *best;
}

// Bounds on sup_{a} min_{b} |a - b| from point enclosures.
Interval directed_enclosed(const std::vector<Interval>& A, const std::vector<Interval>& B) {
  Interval out{Rational(0), Rational(0)};
  for (const Interval& a : A) {
    std::optional<Rational> lo, hi;
    for (const Interval& b : B) {
      Rational gap = std::max(Rational(a.lo - b.hi), Rational(b.lo - a.hi));
      Rational dlo = gap > 0 ? gap : Rational(0);
      Rational dhi = std::max(Rational(a.hi - b.lo), Rational(b.hi - a.lo));
      if (!lo || dlo < *lo) lo = dlo;
      if (!hi || dhi < *hi) hi = dhi;
    }
    out.lo = std::max(out.lo, *lo);
    out.hi = std::max(out.hi, *hi);
  }
  return out;
}

std::vector<Interval> enclose_all(const std::vector<XReal>& pts, int level) {
  std::vector<Interval> out;
  out.reserve(pts.size());
  for (const XReal& x : pts) out.push_back(x.enclosure(level));
  return out;
}

BaseValue probe_base(const BaseValue& q, Side side, const Rational& step) {
  if (q.kind() != BaseValue::Kind::KomornikLoreti) return q.offset(side == Side::Left ? Rational(-step) : step);
  Interval e = q.enclosure(64);
  return BaseValue::rational(q.alphabet(), side == Side::Left ? Rational(e.lo - step) : Rational(e.hi + step));
}

bool in_range(const BaseValue& q) {
  Interval e = q.enclosure(8);
  return e.lo > 1 && e.hi <= q.alphabet().M + 1;
}

constexpr int kReportBits = 64;

Rational round_down(const Rational& r) {
  Rational scale = pow2(kReportBits);
  return Rational(floor(r * scale)) / scale;
}

Rational round_up(const Rational& r) {
  Rational scale = pow2(kReportBits);
  return Rational(ceil(r * scale)) / scale;
}

std::string row_distance(const SymbolicDistance& d) { return to_string(d.value); }

}  // namespace

PointCloud approx_set_points(const BaseValue& q, SetKind kind, std::size_t n, std::size_t alpha_depth) {
  EnumResult e = enum_prefixes(q, n, kind, alpha_depth);
  PointCloud cloud{{}, tail_bound(q, static_cast<int>(n)), q, kind, n, e.certified};
  if (e.alpha) {
    LexAutomaton a = build_automaton(*e.alpha, mode_of(kind));
    bool all_unique = true;
    for (const Word& w : e.upper.words()) {
      int s = a.run(w);
      auto [path, cycle] = a.lasso(s);
      Digits pre = w.digits();
      pre.insert(pre.end(), path.begin(), path.end());
      cloud.points.push_back(eval_value(PeriodicSeq(q.alphabet(), pre, cycle), q));
      all_unique = all_unique && a.unique_run(s);
    }
    if (all_unique) cloud.per_point_error = XReal(q, Rational(0));
  } else {
    for (const Word& w : e.upper.words()) cloud.points.push_back(eval_value(zero_completion(w), q));
  }
  sort_unique(cloud.points);
  return cloud;
}

RealDistance hausdorff_real(const PointCloud& a, const PointCloud& b, int level) {
  if (a.points.empty() || b.points.empty()) throw EmptyCloud("Hausdorff distance of an empty point cloud");
  RealDistance out;
  if (a.base == b.base) {
    XReal d = directed(a.points, b.points);
    XReal d2 = directed(b.points, a.points);
    if (compare(d2, d) > 0) d = d2;
    XReal err = a.per_point_error + b.per_point_error;
    XReal lo = d - err;
    if (sign(lo) < 0) lo = XReal(a.base, Rational(0));
    XReal hi = d + err;
    out.low = round_down(lo.enclosure(level).lo);
    out.high = round_up(hi.enclosure(level).hi);
    if (out.low < 0) out.low = 0;
    out.exact = d;
    out.exact_low = lo;
    out.exact_high = hi;
    return out;
  }
  std::vector<Interval> A = enclose_all(a.points, level), B = enclose_all(b.points, level);
  Interval d1 = directed_enclosed(A, B), d2 = directed_enclosed(B, A);
  Rational dlo = std::max(d1.lo, d2.lo), dhi = std::max(d1.hi, d2.hi);
  Rational err = a.per_point_error.enclosure(level).hi + b.per_point_error.enclosure(level).hi;
  out.low = round_down(std::max(Rational(0), Rational(dlo - err)));
  out.high = round_up(dhi + err);
  return out;
}

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

std::string to_string(ContinuityReport::Verdict v) {
  switch (v) {
    case ContinuityReport::Verdict::ConvergesWithinDepth:
      return "ConvergesWithinDepth";
    case ContinuityReport::Verdict::GapDetected:
      return "GapDetected";
    case ContinuityReport::Verdict::Inconclusive:
      return "Inconclusive";
  }
  return {};
}

ContinuityReport continuity_probe(const BaseValue& q, Side side, SetKind kind, std::size_t steps, std::size_t n,
                                  unsigned threads, const Rational& delta) {
  if (steps == 0) throw std::invalid_argument("continuity probe needs at least one step");
  ContinuityReport report{q, side, kind, n, {}, ContinuityReport::Verdict::Inconclusive, false, Rational(0)};

  std::vector<BaseValue> bases;
  for (std::size_t k = 1; k <= steps; ++k) {
    BaseValue qk = probe_base(q, side, delta * pow2(-static_cast<int>(k)));
    if (!in_range(qk)) throw BaseOutOfRange("probe base " + qk.spec() + " leaves (1, M+1]");
    bases.push_back(qk);
  }

  const EnumResult target_U = enum_prefixes(q, n, SetKind::U);
  const EnumResult target_V = enum_prefixes(q, n, SetKind::V);
  const SetKind limit_kind = side == Side::Left ? SetKind::U : SetKind::V;
  const PointCloud limit_cloud = approx_set_points(q, limit_kind, n);

  std::vector<std::optional<ContinuityRow>> rows(steps);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    for (std::size_t i = next++; i < steps; i = next++) {
      try {
        const BaseValue& qk = bases[i];
        EnumResult fam = enum_prefixes(qk, n, kind);
        ContinuityRow row{i + 1, qk, symbolic_hausdorff(fam.upper, target_U.upper),
                          symbolic_hausdorff(fam.upper, target_V.upper), Rational(0), Rational(0),
                          fam.certified && target_U.certified && target_V.certified};
        RealDistance rd = hausdorff_real(approx_set_points(qk, kind, n), limit_cloud);
        row.real_low = rd.low;
        row.real_high = rd.high;
        rows[i] = std::move(row);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(steps)));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (auto& r : rows) report.rows.push_back(std::move(*r));

  auto limit_of = [&](const ContinuityRow& r) -> const SymbolicDistance& { return side == Side::Left ? r.to_U : r.to_V; };
  auto other_of = [&](const ContinuityRow& r) -> const SymbolicDistance& { return side == Side::Left ? r.to_V : r.to_U; };

  const ContinuityRow& last = report.rows.back();
  report.converges_to_limit = last.certified && limit_of(last).at_floor();
  bool gap = report.rows.size() >= 3;
  if (gap) {
    const Rational g = other_of(last).value;
    for (std::size_t i = report.rows.size() - 3; i < report.rows.size(); ++i) {
      const ContinuityRow& r = report.rows[i];
      gap = gap && r.certified && other_of(r).value == g;
    }
    gap = gap && g > report.floor();
    if (gap) report.gap = g;
  }
  if (gap)
    report.verdict = ContinuityReport::Verdict::GapDetected;
  else if (report.converges_to_limit)
    report.verdict = ContinuityReport::Verdict::ConvergesWithinDepth;
  return report;
}

std::string report_to_csv(const ContinuityReport& r) {
  std::ostringstream out;
  out << "k,q_k,d_sym_to_U,d_sym_to_V,d_real_low,d_real_high,certified\n";
  for (const ContinuityRow& row : r.rows)
    out << row.k << ",\"" << row.q_k.spec() << "\"," << row_distance(row.to_U) << "," << row_distance(row.to_V) << ","
        << to_string(row.real_low) << "," << to_string(row.real_high) << "," << (row.certified ? "true" : "false")
        << "\n";
  return out.str();
}

std::string report_to_json(const ContinuityReport& r) {
  nlohmann::json j;
  j["q"] = r.q.spec();
  j["side"] = to_string(r.side);
  j["kind"] = to_string(r.kind);
  j["n"] = r.depth;
  j["floor"] = to_string(r.floor());
  j["verdict"] = to_string(r.verdict);
  j["converges_to_limit"] = r.converges_to_limit;
  if (r.verdict == ContinuityReport::Verdict::GapDetected) j["gap"] = to_string(r.gap);
  nlohmann::json rows = nlohmann::json::array();
  for (const ContinuityRow& row : r.rows) {
    rows.push_back({{"k", row.k},
                    {"q_k", row.q_k.spec()},
                    {"q_k_approx", row.q_k.approx()},
                    {"d_sym_to_U", row_distance(row.to_U)},
                    {"d_sym_to_V", row_distance(row.to_V)},
                    {"d_real_low", to_string(row.real_low)},
                    {"d_real_high", to_string(row.real_high)},
                    {"certified", row.certified}});
  }
  j["rows"] = rows;
  return j.dump(2);
}

GapResult discontinuity_gap(const BaseValue& q, std::size_t n) {
  EnumResult u = enum_prefixes(q, n, SetKind::U);
  EnumResult v = enum_prefixes(q, n, SetKind::V);
  return {symbolic_hausdorff(u.upper, v.upper), u.certified && v.certified};
}

}  // namespace univoque
