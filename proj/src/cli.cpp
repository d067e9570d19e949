#include "univoque/cli.hpp"

#include "univoque/errors.hpp"
#include "univoque/metric.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <thread>

namespace univoque {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string decimal_string(const Rational& r, int digits) {
  Rational scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = r < 0;
  Integer scaled = floor(abs(r) * scale);
  std::string s = scaled.str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return negative ? "-" + s : s;
}

std::string verdict_text(const MembershipVerdict& v) {
  switch (v.status) {
    case MembershipVerdict::Status::In:
      return "In";
    case MembershipVerdict::Status::Out:
      return "Out(" + std::to_string(v.witness.value_or(0)) + ")";
    case MembershipVerdict::Status::Unknown:
      return "Unknown(" + std::to_string(v.checked_depth) + ")";
  }
  return {};
}

json verdict_json(const MembershipVerdict& v) {
  json j{{"status", to_string(v.status)}, {"checked_depth", v.checked_depth}};
  if (v.witness) j["witness"] = *v.witness;
  return j;
}

SetKind parse_kind(const std::string& s) {
  if (s == "U" || s == "u") return SetKind::U;
  if (s == "V" || s == "v") return SetKind::V;
  throw ParseError("--kind must be U or V, got '" + s + "'");
}

Side parse_side(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw ParseError("--side must be left or right, got '" + s + "'");
}

struct Config {
  int M = 1;
  std::string base;
  std::size_t n = 8;
  std::size_t alpha_depth = kDefaultCertificationDepth;
  std::optional<int> precision_bits;
  std::string format = "text";
  std::string side = "left";
  std::size_t steps = 12;
  std::string kind = "U";
  bool require_certified = false;
  unsigned threads = 1;
  std::string seq;
  std::string x;
  std::size_t m = 0;
  std::string base2;
  std::string kind2;
};

class CapGuard {
 public:
  explicit CapGuard(std::optional<int> cap) : saved_(refinement_cap()) {
    if (cap) set_refinement_cap(*cap);
  }
  ~CapGuard() { set_refinement_cap(saved_); }

 private:
  int saved_;
};

struct Outcome {
  std::string text;
  bool certified = true;
};

std::string alpha_text(const AlphaExpansion& e, std::size_t n) {
  std::string s = to_string(e.prefix.slice(1, n));
  if (e.certified) return s + " period=" + to_string(*e.certified);
  return s + " uncertified";
}

json alpha_json(const AlphaExpansion& e, const BaseValue& q, std::size_t n) {
  json j{{"base", q.spec()}, {"n", n}, {"prefix", to_string(e.prefix.slice(1, n))}, {"certified", e.certified.has_value()}};
  if (e.certified) j["sequence"] = to_string(*e.certified);
  return j;
}

Outcome dispatch(const std::string& command, const Config& cfg) {
  const Alphabet alphabet(cfg.M);
  const bool as_json = cfg.format == "json";
  auto base = [&]() {
    if (cfg.base.empty()) throw ParseError("--base is required for " + command);
    return parse_base(cfg.base, alphabet);
  };
  auto dump = [](const json& j) { return j.dump(2) + "\n"; };

  if (command == "alpha" || command == "beta") {
    BaseValue q = base();
    AlphaExpansion e = command == "alpha" ? quasi_greedy_alpha(q, cfg.n, cfg.alpha_depth)
                                          : greedy_beta(q, cfg.n, cfg.alpha_depth);
    return {as_json ? dump(alpha_json(e, q, cfg.n)) : alpha_text(e, cfg.n) + "\n", e.certified.has_value()};
  }

  if (command == "classify") {
    BaseValue q = base();
    BaseClass c = classify_base(q, cfg.alpha_depth);
    bool known = c.verdict != BaseClass::Verdict::Unknown;
    if (as_json)
      return {dump(json{{"base", q.spec()}, {"verdict", to_string(c.verdict)}, {"evidence", c.evidence}, {"depth", c.depth}}),
              known};
    return {to_string(c.verdict) + "\n", known};
  }

  if (command == "unique") {
    BaseValue q = base();
    if (cfg.seq.empty() == cfg.x.empty()) throw ParseError("unique needs exactly one of --seq or --x");
    XReal x = cfg.seq.empty() ? XReal(q, parse_rational(cfg.x)) : eval_value(parse_periodic(cfg.seq, alphabet), q);
    MembershipVerdict v = is_unique_expansion(x, q, cfg.alpha_depth);
    bool known = v.status != MembershipVerdict::Status::Unknown;
    return {as_json ? dump(verdict_json(v)) : verdict_text(v) + "\n", known};
  }

  if (command == "member") {
    BaseValue q = base();
    if (cfg.seq.empty()) throw ParseError("member needs --seq");
    PeriodicSeq c = parse_periodic(cfg.seq, alphabet);
    MembershipVerdict v = parse_kind(cfg.kind) == SetKind::U ? in_Uq_prime(c, q, cfg.alpha_depth)
                                                              : in_Vq_prime(c, q, cfg.alpha_depth);
    bool known = v.status != MembershipVerdict::Status::Unknown;
    return {as_json ? dump(verdict_json(v)) : verdict_text(v) + "\n", known};
  }

  if (command == "enumerate") {
    BaseValue q = base();
    SetKind kind = parse_kind(cfg.kind);
    EnumResult r = enum_prefixes(q, cfg.n, kind, cfg.alpha_depth);
    if (r.certified)
      return {as_json ? trie_to_json(r.lower, q.spec(), kind) + "\n" : trie_to_text(r.lower, q.spec(), kind), true};
    if (as_json)
      return {dump(json{{"lower", json::parse(trie_to_json(r.lower, q.spec(), kind))},
                        {"upper", json::parse(trie_to_json(r.upper, q.spec(), kind))}}),
              false};
    return {trie_to_text(r.lower, q.spec(), kind) + trie_to_text(r.upper, q.spec(), kind), false};
  }

  if (command == "dh-sym" || command == "dh-real") {
    BaseValue q = base();
    SetKind kind = parse_kind(cfg.kind);
    BaseValue q2 = cfg.base2.empty() ? q : parse_base(cfg.base2, alphabet);
    SetKind kind2 = cfg.kind2.empty() ? kind : parse_kind(cfg.kind2);
    if (cfg.base2.empty() && cfg.kind2.empty()) throw ParseError(command + " needs --base2 and/or --kind2");
    if (command == "dh-sym") {
      EnumResult a = enum_prefixes(q, cfg.n, kind, cfg.alpha_depth);
      EnumResult b = enum_prefixes(q2, cfg.n, kind2, cfg.alpha_depth);
      SymbolicDistance d = symbolic_hausdorff(a.upper, b.upper);
      bool cert = a.certified && b.certified;
      if (as_json)
        return {dump(json{{"distance", to_string(d.value)},
                          {"agreed_depth", d.agreed_depth},
                          {"common_depth", d.common_depth},
                          {"floor", to_string(pow2(-static_cast<int>(d.common_depth) - 1))},
                          {"certified", cert}}),
                cert};
      return {to_string(d.value) + "\n", cert};
    }
    PointCloud a = approx_set_points(q, kind, cfg.n, cfg.alpha_depth);
    PointCloud b = approx_set_points(q2, kind2, cfg.n, cfg.alpha_depth);
    RealDistance d = hausdorff_real(a, b);
    bool cert = a.certified && b.certified;
    if (as_json)
      return {dump(json{{"low", to_string(d.low)},
                        {"high", to_string(d.high)},
                        {"low_decimal", decimal_string(d.low, 12)},
                        {"high_decimal", decimal_string(d.high, 12)},
                        {"points_a", a.points.size()},
                        {"points_b", b.points.size()},
                        {"certified", cert}}),
              cert};
    return {"low=" + decimal_string(d.low, 12) + " high=" + decimal_string(d.high, 12) + "\n", cert};
  }

  if (command == "continuity") {
    BaseValue q = base();
    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    ContinuityReport r = continuity_probe(q, parse_side(cfg.side), parse_kind(cfg.kind), cfg.steps, cfg.n, threads);
    bool cert = r.verdict != ContinuityReport::Verdict::Inconclusive &&
                std::all_of(r.rows.begin(), r.rows.end(), [](const ContinuityRow& row) { return row.certified; });
    if (as_json) return {report_to_json(r) + "\n", cert};
    std::string text = report_to_csv(r);
    if (cfg.format == "text") {
      text += "verdict=" + to_string(r.verdict);
      if (r.verdict == ContinuityReport::Verdict::GapDetected) text += " gap=" + to_string(r.gap);
      text += "\n";
    }
    return {text, cert};
  }

  if (command == "gap") {
    BaseValue q = base();
    GapResult g = discontinuity_gap(q, cfg.n);
    if (as_json)
      return {dump(json{{"base", q.spec()}, {"n", cfg.n}, {"gap", to_string(g.distance.value)}, {"certified", g.certified}}),
              g.certified};
    return {to_string(g.distance.value) + "\n", g.certified};
  }

  if (command == "kl") {
    int bits = cfg.precision_bits.value_or(24);
    KlApproximation k = kl_constant(bits);
    int digits = std::max(1, static_cast<int>(bits * 0.30103));
    if (as_json)
      return {dump(json{{"bits", bits},
                        {"lo", to_string(k.interval.lo)},
                        {"hi", to_string(k.interval.hi)},
                        {"approx", decimal_string(k.interval.midpoint(), digits)},
                        {"base", k.base.spec()}}),
              true};
    return {decimal_string(k.interval.midpoint(), digits) + " interval=[" + to_string(k.interval.lo) + "," +
                to_string(k.interval.hi) + "]\n",
            true};
  }

  if (command == "remark4") {
    if (cfg.seq.empty()) throw ParseError("remark4 needs --seq (the sequence alpha)");
    if (cfg.m == 0) throw ParseError("remark4 needs --m >= 1");
    PeriodicSeq alpha = parse_periodic(cfg.seq, alphabet);
    PeriodicSeq cand = remark4_candidate(alpha, cfg.m);
    bool below = lex_cmp(cand, alpha) < 0;
    if (as_json)
      return {dump(json{{"alpha", to_string(alpha)}, {"m", cfg.m}, {"candidate", to_string(cand)}, {"below_alpha", below}}),
              true};
    return {to_string(cand) + (below ? " below" : " not-below") + "\n", true};
  }

  throw ParseError("unknown command '" + command + "'");
}

}  // namespace

BaseValue parse_base(const std::string& text, Alphabet alphabet) {
  if (text.empty()) throw ParseError("empty base spec");
  if (text == "golden") return BaseValue::algebraic(alphabet, Poly{-1, -1, 1}, Rational(3, 2), Rational(2));
  if (text == "tribonacci") return BaseValue::algebraic(alphabet, Poly{-1, -1, -1, 1}, Rational(3, 2), Rational(2));
  if (text == "kl" || text.rfind("kl:", 0) == 0) {
    if (alphabet.M != 1) throw ParseError("the kl base is defined for --M 1 only");
    if (text == "kl") return BaseValue::komornik_loreti();
    int bits = 0;
    try {
      bits = std::stoi(text.substr(3));
    } catch (const std::exception&) {
      throw ParseError("bad bit count in '" + text + "'");
    }
    if (bits < 8) throw ParseError("kl:<bits> needs at least 8 bits");
    return kl_constant(bits).base;
  }
  auto colon = text.find(':');
  if (colon == std::string::npos) return BaseValue::rational(alphabet, parse_rational(text));
  const std::string kind = text.substr(0, colon), body = text.substr(colon + 1);
  if (kind == "rational" || kind == "decimal") return BaseValue::rational(alphabet, parse_rational(body));
  if (kind == "poly") {
    auto at = body.find('@');
    if (at == std::string::npos) throw ParseError("poly base needs '@lo,hi': '" + text + "'");
    std::vector<Rational> coeffs;
    for (const std::string& c : split(body.substr(0, at), ',')) coeffs.push_back(parse_rational(c));
    std::vector<std::string> range = split(body.substr(at + 1), ',');
    if (range.size() != 2) throw ParseError("poly base needs exactly two interval endpoints: '" + text + "'");
    return BaseValue::algebraic(alphabet, Poly(coeffs), parse_rational(range[0]), parse_rational(range[1]));
  }
  throw ParseError("unknown base kind '" + kind + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Unique expansions in non-integer bases"};
  app.name("univoque");
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--M", cfg.M, "largest digit")->check(CLI::Range(1, 1000000));
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_flag("--require-certified", cfg.require_certified, "exit 4 when the result is not certified");
    sub->add_option("--precision-bits", cfg.precision_bits, "refinement cap for exact sign tests")
        ->check(CLI::Range(8, 100000));
  };
  auto add_base = [&](CLI::App* sub) {
    sub->add_option("--base", cfg.base, "base spec")->required();
    sub->add_option("--alpha-depth", cfg.alpha_depth, "digits of alpha(q) computed for certification")
        ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", cfg.n, "depth")->check(CLI::Range(std::size_t{1}, std::size_t{64})); };
  auto add_kind = [&](CLI::App* sub) { sub->add_option("--kind", cfg.kind, "U or V")->check(CLI::IsMember({"U", "V", "u", "v"})); };

  std::vector<std::pair<std::string, CLI::App*>> subs;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s);
    subs.emplace_back(name, s);
    return s;
  };

  for (const char* name : {"alpha", "beta"}) {
    CLI::App* s = sub(name, std::string(name) == "alpha" ? "quasi-greedy expansion of 1" : "greedy expansion of 1");
    add_base(s);
    add_n(s);
  }
  {
    CLI::App* s = sub("classify", "locate q in the V / closure(U) / U hierarchy");
    add_base(s);
  }
  {
    CLI::App* s = sub("unique", "does x (or the value of a sequence) have a unique expansion");
    add_base(s);
    s->add_option("--seq", cfg.seq, "eventually periodic sequence, e.g. 1(10)");
    s->add_option("--x", cfg.x, "exact rational value");
  }
  {
    CLI::App* s = sub("member", "lexicographic membership in U_q' or V_q'");
    add_base(s);
    add_kind(s);
    s->add_option("--seq", cfg.seq, "eventually periodic sequence")->required();
  }
  {
    CLI::App* s = sub("enumerate", "prefix set B_n of U_q' or V_q'");
    add_base(s);
    add_n(s);
    add_kind(s);
  }
  for (const char* name : {"dh-sym", "dh-real"}) {
    CLI::App* s = sub(name, std::string(name) == "dh-sym" ? "symbolic Hausdorff distance" : "real Hausdorff distance bracket");
    add_base(s);
    add_n(s);
    add_kind(s);
    s->add_option("--base2", cfg.base2, "second base (defaults to --base)");
    s->add_option("--kind2", cfg.kind2, "second kind (defaults to --kind)")->check(CLI::IsMember({"U", "V", "u", "v"}));
  }
  {
    CLI::App* s = sub("continuity", "one-sided continuity probe");
    add_base(s);
    add_n(s);
    add_kind(s);
    s->add_option("--side", cfg.side, "left or right")->check(CLI::IsMember({"left", "right"}));
    s->add_option("--steps", cfg.steps, "number of probe bases")->check(CLI::Range(std::size_t{1}, std::size_t{60}));
    s->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
  }
  {
    CLI::App* s = sub("gap", "symbolic distance between U_q' and V_q'");
    add_base(s);
    add_n(s);
  }
  sub("kl", "Komornik-Loreti constant");
  {
    CLI::App* s = sub("remark4", "periodic candidate built from a prefix of alpha");
    s->add_option("--seq", cfg.seq, "the sequence alpha")->required();
    s->add_option("--m", cfg.m, "pivot index")->required();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return exit_code::ok;
    }
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  }

  std::string command;
  for (auto& [name, s] : subs)
    if (s->parsed()) command = name;

  try {
    if (cfg.format == "csv" && command != "continuity")
      throw ParseError("--format csv is only available for continuity");
    CapGuard guard(command == "kl" ? std::nullopt : cfg.precision_bits);
    Outcome o = dispatch(command, cfg);
    out << o.text;
    if (cfg.require_certified && !o.certified) {
      err << "result is not certified\n";
      return exit_code::uncertified;
    }
    return exit_code::ok;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << "\n";
    return exit_code::precision;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::failure;
  }
}

}  // namespace univoque
