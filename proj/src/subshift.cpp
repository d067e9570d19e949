#include "univoque/subshift.hpp"

#include "univoque/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace univoque {

namespace {

constexpr std::size_t kMaxStates = std::size_t{1} << 20;

Word full_word(Alphabet a, std::size_t n, std::size_t index) {
  Digits d(n, 0);
  const std::size_t base = static_cast<std::size_t>(a.M + 1);
  for (std::size_t i = n; i-- > 0;) {
    d[i] = static_cast<Digit>(index % base);
    index /= base;
  }
  return Word(a, std::move(d));
}

PrefixTrie full_trie(Alphabet a, std::size_t n) {
  PrefixTrie trie(a, n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(a.M + 1);
  for (std::size_t i = 0; i < total; ++i) trie.insert(full_word(a, n, i));
  return trie;
}

bool window_at_least(const std::function<Digit(std::size_t)>& c, std::size_t j, const Word& w) {
  for (std::size_t i = 1; i <= w.size(); ++i) {
    Digit x = c(j + i), y = w.digit(i);
    if (x != y) return x > y;
  }
  return true;
}

bool window_at_most(const std::function<Digit(std::size_t)>& c, std::size_t j, const Word& w) {
  for (std::size_t i = 1; i <= w.size(); ++i) {
    Digit x = c(j + i), y = w.digit(i);
    if (x != y) return x < y;
  }
  return true;
}

std::optional<std::size_t> scan_violations(const std::function<Digit(std::size_t)>& c, int M, const Word& w,
                                           std::size_t first_j, std::size_t last_j) {
  const Word rw = reflect(w);
  for (std::size_t j = first_j; j <= last_j; ++j) {
    bool low = j == 0 || c(j) < M;
    bool high = j > 0 && c(j) > 0;
    if (low && window_at_least(c, j, w)) return j;
    if (high && window_at_most(c, j, rw)) return j;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(SetKind k) { return k == SetKind::U ? "U" : "V"; }

LexAutomaton::LexAutomaton(const PeriodicSeq& bound, LexMode mode)
    : bound_(bound), reflected_(reflect(bound)), mode_(mode) {
  explore();
  trim();
}

void LexAutomaton::explore() {
  const int M = alphabet().M;
  const std::uint32_t fold_end = static_cast<std::uint32_t>(bound_.distinct_tails());
  const std::uint32_t fold_to = static_cast<std::uint32_t>(bound_.preperiod().size());

  std::map<std::vector<Tie>, int> index_of;
  states_.push_back({});
  index_of[{}] = 0;
  for (std::size_t s = 0; s < states_.size(); ++s) {
    for (Digit d = 0; d <= M; ++d) {
      const std::vector<Tie> cur = states_[s];
      std::vector<Tie> nxt;
      bool dead = false;
      bool oldest_resolved = false;
      auto add = [&nxt](Tie t) {
        if (std::find(nxt.begin(), nxt.end(), t) == nxt.end()) nxt.push_back(t);
      };
      for (std::size_t i = 0; i < cur.size() && !dead; ++i) {
        const Tie& t = cur[i];
        Digit ref = (t.upper ? bound_ : reflected_).digit(t.pos + 1);
        if (d == ref) {
          std::uint32_t p = t.pos + 1;
          if (p == fold_end) p = fold_to;
          add(Tie{t.upper, p});
        } else if (t.upper ? d < ref : d > ref) {
          if (i == 0) oldest_resolved = true;
        } else {
          dead = true;
        }
      }
      int target = kDead;
      if (!dead) {
        if (d < M) add(Tie{true, 0});
        if (d > 0) add(Tie{false, 0});
        auto [it, inserted] = index_of.try_emplace(nxt, static_cast<int>(states_.size()));
        if (inserted) {
          if (states_.size() >= kMaxStates) throw Error("automaton exceeds state limit");
          states_.push_back(nxt);
        }
        target = it->second;
      }
      trans_.push_back(target);
      mark_.push_back(!dead && (oldest_resolved || cur.empty()) ? 1 : 0);
    }
  }
}

void LexAutomaton::trim() {
  const std::size_t n = states_.size();
  const int width = alphabet().M + 1;
  good_.assign(n, 1);
  core_.assign(n, 0);

  if (mode_ == LexMode::NonStrict) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < n; ++s) {
        if (!good_[s]) continue;
        bool any = false;
        for (Digit d = 0; d < width && !any; ++d) {
          int t = next(static_cast<int>(s), d);
          any = t >= 0 && good_[static_cast<std::size_t>(t)];
        }
        if (!any) {
          good_[s] = 0;
          changed = true;
        }
      }
    }
    core_ = good_;
    return;
  }

  // Strongly connected components (iterative Tarjan).
  std::vector<int> comp(n, -1), low(n, 0), num(n, -1);
  std::vector<int> stack;
  std::vector<char> on_stack(n, 0);
  int counter = 0, ncomp = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (num[root] >= 0) continue;
    std::vector<std::pair<int, int>> work{{static_cast<int>(root), 0}};
    num[root] = low[root] = counter++;
    stack.push_back(static_cast<int>(root));
    on_stack[root] = 1;
    while (!work.empty()) {
      auto& [v, di] = work.back();
      if (di < width) {
        int w = next(v, di++);
        if (w < 0) continue;
        if (num[static_cast<std::size_t>(w)] < 0) {
          num[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = 1;
          work.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], num[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      const int done = v;
      work.pop_back();
      if (!work.empty()) {
        int parent = work.back().first;
        low[static_cast<std::size_t>(parent)] = std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(done)]);
      }
      if (low[static_cast<std::size_t>(done)] == num[static_cast<std::size_t>(done)]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp[static_cast<std::size_t>(w)] = ncomp;
        } while (w != done);
        ++ncomp;
      }
    }
  }

  std::vector<char> core_comp(static_cast<std::size_t>(ncomp), 0);
  for (std::size_t s = 0; s < n; ++s)
    for (Digit d = 0; d < width; ++d) {
      int t = next(static_cast<int>(s), d);
      if (t >= 0 && comp[static_cast<std::size_t>(t)] == comp[s] && marked(static_cast<int>(s), d))
        core_comp[static_cast<std::size_t>(comp[s])] = 1;
    }

  std::vector<std::vector<int>> preds(n);
  for (std::size_t s = 0; s < n; ++s)
    for (Digit d = 0; d < width; ++d)
      if (int t = next(static_cast<int>(s), d); t >= 0) preds[static_cast<std::size_t>(t)].push_back(static_cast<int>(s));

  good_.assign(n, 0);
  std::deque<int> queue;
  for (std::size_t s = 0; s < n; ++s)
    if (core_comp[static_cast<std::size_t>(comp[s])]) {
      core_[s] = good_[s] = 1;
      queue.push_back(static_cast<int>(s));
    }
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int s : preds[static_cast<std::size_t>(t)])
      if (!good_[static_cast<std::size_t>(s)]) {
        good_[static_cast<std::size_t>(s)] = 1;
        queue.push_back(s);
      }
  }
}

bool LexAutomaton::unique_run(int state) const {
  if (!good(state)) return false;
  std::vector<char> seen(states_.size(), 0);
  std::vector<int> todo{state};
  seen[static_cast<std::size_t>(state)] = 1;
  while (!todo.empty()) {
    int s = todo.back();
    todo.pop_back();
    int count = 0;
    for (Digit d = 0; d <= alphabet().M; ++d) {
      int t = next(s, d);
      if (!good(t)) continue;
      if (++count > 1) return false;
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        todo.push_back(t);
      }
    }
  }
  return true;
}

int LexAutomaton::run(const Word& w) const {
  int s = kInitial;
  if (!good(s)) return kDead;
  for (Digit d : w.digits()) {
    if (!alphabet().valid(d)) throw InvalidDigit("digit " + std::to_string(d) + " outside the alphabet");
    s = next(s, d);
    if (!good(s)) return kDead;
  }
  return s;
}

bool LexAutomaton::accepts(const PeriodicSeq& c) const {
  if (!(c.alphabet() == alphabet())) throw InvalidDigit("sequence alphabet differs from automaton alphabet");
  int s = run(Word(c.alphabet(), c.preperiod()));
  if (s == kDead) return false;
  std::map<int, std::size_t> seen;
  std::vector<char> marks;
  while (true) {
    if (auto it = seen.find(s); it != seen.end())
      return mode_ == LexMode::NonStrict ||
             std::any_of(marks.begin() + static_cast<std::ptrdiff_t>(it->second), marks.end(), [](char m) { return m != 0; });
    seen[s] = marks.size();
    bool mark = false;
    for (Digit d : c.period()) {
      mark = mark || marked(s, d);
      s = next(s, d);
      if (!good(s)) return false;
    }
    marks.push_back(mark ? 1 : 0);
  }
}

std::pair<Digits, Digits> LexAutomaton::lasso(int state) const {
  if (!good(state)) throw Error("lasso requested from a state without accepted runs");
  const int width = alphabet().M + 1;
  const std::size_t n = states_.size();
  const bool strict = mode_ == LexMode::Strict;

  // Shortest cycle through `s` that uses a marked edge (any edge in NonStrict mode).
  // Search nodes are (state, marked-edge-seen) pairs encoded as 2 * state + flag.
  auto cycle_from = [&](int s) -> std::optional<Digits> {
    std::vector<int> parent(2 * n, -2);
    std::vector<Digit> via(2 * n, 0);
    const int start = 2 * s;
    parent[static_cast<std::size_t>(start)] = -1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop_front();
      const int v = node / 2, f = node % 2;
      for (Digit d = 0; d < width; ++d) {
        const int t = next(v, d);
        if (t < 0 || !core_[static_cast<std::size_t>(t)]) continue;
        const int g = (f || !strict || marked(v, d)) ? 1 : 0;
        if (t == s && g) {
          Digits cyc{d};
          for (int c = node; parent[static_cast<std::size_t>(c)] != -1; c = parent[static_cast<std::size_t>(c)])
            cyc.push_back(via[static_cast<std::size_t>(c)]);
          std::reverse(cyc.begin(), cyc.end());
          return cyc;
        }
        const auto tn = static_cast<std::size_t>(2 * t + g);
        if (parent[tn] != -2) continue;
        parent[tn] = node;
        via[tn] = d;
        queue.push_back(static_cast<int>(tn));
      }
    }
    return std::nullopt;
  };

  // Breadth-first over good states toward core states; digits ascending.
  std::vector<int> parent(n, -2);
  std::vector<Digit> via(n, 0);
  std::deque<int> queue{state};
  parent[static_cast<std::size_t>(state)] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (core_[static_cast<std::size_t>(v)]) {
      if (auto cyc = cycle_from(v)) {
        Digits path;
        for (int c = v; parent[static_cast<std::size_t>(c)] != -1; c = parent[static_cast<std::size_t>(c)])
          path.push_back(via[static_cast<std::size_t>(c)]);
        std::reverse(path.begin(), path.end());
        return {path, *cyc};
      }
    }
    for (Digit d = 0; d < width; ++d) {
      int t = next(v, d);
      if (!good(t) || parent[static_cast<std::size_t>(t)] != -2) continue;
      parent[static_cast<std::size_t>(t)] = v;
      via[static_cast<std::size_t>(t)] = d;
      queue.push_back(t);
    }
  }
  throw Error("no accepted lasso found");
}

LexAutomaton build_automaton(const PeriodicSeq& alpha, LexMode mode) {
  if (!is_infinite(alpha)) throw NotSelfAdmissible("alpha must not end with 0^inf: " + to_string(alpha));
  for (std::size_t k = 1; k <= alpha.distinct_tails(); ++k)
    if (lex_cmp(shift(alpha, k), alpha) > 0)
      throw NotSelfAdmissible("shift " + std::to_string(k) + " of " + to_string(alpha) + " exceeds it");
  return LexAutomaton(alpha, mode);
}

PrefixTrie::PrefixTrie(Alphabet alphabet, std::size_t depth, Mode mode)
    : alphabet_(alphabet), depth_(depth), mode_(mode), children_(width(), -1) {}

int PrefixTrie::locate(const Word& w) const {
  if (w.size() > depth_) return -1;
  int node = 0;
  for (Digit d : w.digits()) {
    if (!alphabet_.valid(d)) return -1;
    node = child(node, d);
    if (node < 0) return -1;
  }
  return node;
}

bool PrefixTrie::insert(const Word& w) {
  if (!(w.alphabet() == alphabet_)) throw InvalidDigit("word alphabet differs from trie alphabet");
  if (w.size() > depth_) return false;
  if (w.size() < depth_) return locate(w) >= 0;
  if (depth_ == 0) {
    leaves_ = 1;
    return true;
  }
  int node = 0;
  bool created = false;
  for (Digit d : w.digits()) {
    if (!alphabet_.valid(d)) throw InvalidDigit("digit " + std::to_string(d) + " outside the alphabet");
    std::size_t slot = static_cast<std::size_t>(node) * width() + static_cast<std::size_t>(d);
    if (children_[slot] < 0) {
      int fresh = static_cast<int>(node_count());
      children_.resize(children_.size() + width(), -1);
      children_[slot] = fresh;
      created = true;
    }
    node = children_[slot];
  }
  if (created) ++leaves_;
  return true;
}

bool PrefixTrie::contains(const Word& w) const { return w.size() == depth_ && locate(w) >= 0; }

std::vector<Word> PrefixTrie::prefixes(std::size_t k) const {
  if (k > depth_) throw DepthMismatch("prefix length exceeds trie depth");
  std::vector<Word> out;
  if (depth_ > 0 && leaves_ == 0) return out;
  if (depth_ == 0 && leaves_ == 0) return out;
  Digits cur;
  std::function<void(int)> walk = [&](int node) {
    if (cur.size() == k) {
      out.emplace_back(alphabet_, cur);
      return;
    }
    for (Digit d = 0; d <= alphabet_.M; ++d)
      if (int c = child(node, d); c >= 0) {
        cur.push_back(d);
        walk(c);
        cur.pop_back();
      }
  };
  walk(0);
  return out;
}

std::vector<Word> PrefixTrie::words() const { return prefixes(depth_); }

bool operator==(const PrefixTrie& a, const PrefixTrie& b) {
  return a.alphabet_ == b.alphabet_ && a.depth_ == b.depth_ && a.size() == b.size() && a.words() == b.words();
}

bool PrefixTrie::subset_of(const PrefixTrie& other) const {
  if (!(alphabet_ == other.alphabet_) || depth_ != other.depth_) return false;
  for (const Word& w : words())
    if (!other.contains(w)) return false;
  return true;
}

PrefixTrie enumerate_words(const LexAutomaton& automaton, std::size_t n) {
  const Alphabet a = automaton.alphabet();
  PrefixTrie trie(a, n);
  if (!automaton.good(LexAutomaton::kInitial)) return trie;
  Digits cur;
  std::function<void(int)> walk = [&](int s) {
    if (cur.size() == n) {
      trie.insert(Word(a, cur));
      return;
    }
    for (Digit d = 0; d <= a.M; ++d) {
      int t = automaton.next(s, d);
      if (!automaton.good(t)) continue;
      cur.push_back(d);
      walk(t);
      cur.pop_back();
    }
  };
  walk(LexAutomaton::kInitial);
  return trie;
}

EnumResult enum_prefixes(const BaseValue& q, std::size_t n, SetKind kind, std::size_t alpha_depth) {
  if (n == 0) throw std::invalid_argument("enum_prefixes needs n >= 1");
  const Alphabet a = q.alphabet();
  if (exceeds_full_base(q)) {
    PrefixTrie all = full_trie(a, n);
    return {all, all, true, std::nullopt};
  }
  const std::size_t depth = std::max(alpha_depth, 2 * n);
  AlphaExpansion alpha = quasi_greedy_alpha(q, depth, depth);
  const LexMode mode = mode_of(kind);
  if (alpha.certified) {
    PrefixTrie exact = enumerate_words(build_automaton(*alpha.certified, mode), n);
    return {exact, exact, true, alpha.certified};
  }

  std::vector<std::size_t> lengths;
  for (std::size_t L = n + 2; L < depth; L = std::max(L * 2, 2 * n)) lengths.push_back(L);
  lengths.push_back(depth);

  std::optional<EnumResult> result;
  for (std::size_t L : lengths) {
    Word w = alpha.prefix.slice(1, std::min(L, alpha.prefix.size()));
    PrefixTrie lower = enumerate_words(LexAutomaton(PeriodicSeq(w, Word(a, {0})), mode), n);
    PrefixTrie upper = enumerate_words(LexAutomaton(PeriodicSeq(w, Word(a, {a.M})), mode), n);
    lower.set_mode(PrefixTrie::Mode::Lower);
    upper.set_mode(PrefixTrie::Mode::Upper);
    bool certified = lower == upper;
    result = EnumResult{lower, upper, certified, std::nullopt};
    if (certified) break;
  }
  if (result->certified) {
    result->lower.set_mode(PrefixTrie::Mode::Certified);
    result->upper.set_mode(PrefixTrie::Mode::Certified);
  }
  return *result;
}

std::optional<std::size_t> first_violation_index(const PeriodicSeq& c, const Word& alpha_prefix, std::size_t first_j) {
  if (alpha_prefix.empty()) throw std::invalid_argument("empty alpha prefix");
  auto digit = [&c](std::size_t i) { return c.digit(i); };
  const std::size_t span = c.distinct_tails() + 1;
  return scan_violations(digit, c.alphabet().M, alpha_prefix, first_j, first_j + span);
}

std::optional<std::size_t> first_violation_index(const Word& c, const Word& alpha_prefix, std::size_t first_j) {
  if (alpha_prefix.empty()) throw std::invalid_argument("empty alpha prefix");
  if (c.size() < alpha_prefix.size() + first_j) return std::nullopt;
  auto digit = [&c](std::size_t i) { return c.digit(i); };
  return scan_violations(digit, c.alphabet().M, alpha_prefix, first_j, c.size() - alpha_prefix.size());
}

PeriodicSeq complete_with_alpha_tail(const PeriodicSeq& c, std::size_t j, const PeriodicSeq& tail) {
  return complete_with_alpha_tail(c.prefix(j), j, tail);
}

PeriodicSeq complete_with_alpha_tail(const Word& c, std::size_t j, const PeriodicSeq& tail) {
  if (j > c.size()) throw std::invalid_argument("completion index exceeds available digits");
  if (!(c.alphabet() == tail.alphabet())) throw InvalidDigit("alphabets differ");
  Digits pre(c.digits().begin(), c.digits().begin() + static_cast<std::ptrdiff_t>(j));
  pre.insert(pre.end(), tail.preperiod().begin(), tail.preperiod().end());
  return PeriodicSeq(c.alphabet(), std::move(pre), tail.period());
}

SymbolicDistance symbolic_hausdorff(const PrefixTrie& a, const PrefixTrie& b) {
  if (!(a.alphabet() == b.alphabet())) throw DepthMismatch("tries over different alphabets");
  const std::size_t D = std::min(a.depth(), b.depth());
  if (D == 0) throw DepthMismatch("no common positive depth");
  SymbolicDistance out;
  out.common_depth = D;
  for (std::size_t k = 1; k <= D; ++k) {
    if (a.prefixes(k) != b.prefixes(k)) {
      out.agreed_depth = k - 1;
      out.value = pow2(-static_cast<int>(k));
      return out;
    }
  }
  out.agreed_depth = D;
  out.value = 0;
  return out;
}

PeriodicSeq remark4_candidate(const PeriodicSeq& alpha, std::size_t m) {
  if (m == 0) throw InvalidPivot("m must be positive");
  const Word head = alpha.prefix(m);
  if (head.digit(m) == 0) throw InvalidPivot("alpha_" + std::to_string(m) + " is 0");
  Digits inner(head.digits().begin(), head.digits().end() - 1);
  inner.push_back(head.digit(m) - 1);
  inner.insert(inner.end(), head.digits().begin(), head.digits().end());
  Word tail = reflect(Word(alpha.alphabet(), inner));
  return PeriodicSeq(Word(alpha.alphabet(), {}), head + tail);
}

std::optional<PeriodicSeq> find_left_witness(const PeriodicSeq& alpha, std::size_t n, std::size_t max_half) {
  const Alphabet a = alpha.alphabet();
  const Word target = alpha.prefix(n);
  std::optional<PeriodicSeq> best;
  auto consider = [&](const Digits& v) {
    Word half(a, v);
    PeriodicSeq s(Word(a, {}), half + reflect(half));
    if (s.prefix(n) != target || lex_cmp(s, alpha) >= 0 || !is_infinite(s)) return;
    for (std::size_t k = 1; k <= s.distinct_tails(); ++k)
      if (lex_cmp(shift(s, k), s) > 0) return;
    AlphaExpansion as_alpha{s.prefix(s.distinct_tails()), s};
    if (check_lexicographic(s, as_alpha, false).status != MembershipVerdict::Status::In) return;
    if (!best || lex_cmp(s, *best) > 0) best = s;
  };
  for (std::size_t h = 1; h <= max_half; ++h) {
    Digits v;
    std::function<void()> grow = [&]() {
      if (v.size() == h) {
        consider(v);
        return;
      }
      std::size_t i = v.size() + 1;
      for (Digit d = 0; d <= a.M; ++d) {
        if (i <= n && d != target.digit(i)) continue;
        std::size_t mirror = i + h;
        if (mirror <= n && a.M - d != target.digit(mirror)) continue;
        v.push_back(d);
        grow();
        v.pop_back();
      }
    };
    grow();
  }
  return best;
}

std::string trie_to_text(const PrefixTrie& trie, const std::string& base_spec, SetKind kind) {
  std::ostringstream out;
  out << "# q=" << base_spec << " M=" << trie.alphabet().M << " n=" << trie.depth() << " kind=" << to_string(kind)
      << " certified=" << (trie.mode() == PrefixTrie::Mode::Certified ? "true" : "false");
  if (trie.mode() != PrefixTrie::Mode::Certified)
    out << " bound=" << (trie.mode() == PrefixTrie::Mode::Lower ? "lower" : "upper");
  out << "\n";
  for (const Word& w : trie.words()) out << to_string(w) << "\n";
  return out.str();
}

std::string trie_to_json(const PrefixTrie& trie, const std::string& base_spec, SetKind kind) {
  nlohmann::json j;
  j["q"] = base_spec;
  j["M"] = trie.alphabet().M;
  j["n"] = trie.depth();
  j["kind"] = to_string(kind);
  j["certified"] = trie.mode() == PrefixTrie::Mode::Certified;
  if (trie.mode() != PrefixTrie::Mode::Certified)
    j["bound"] = trie.mode() == PrefixTrie::Mode::Lower ? "lower" : "upper";
  nlohmann::json words = nlohmann::json::array();
  for (const Word& w : trie.words()) words.push_back(to_string(w));
  j["words"] = words;
  return j.dump(2);
}

}  // namespace univoque
