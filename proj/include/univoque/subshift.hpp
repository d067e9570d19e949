#pragma once

// Prefix sets B_n(U_q') and B_n(V_q'), the automaton that decides them, and
// the symbolic Hausdorff distance between prefix families.

#include "univoque/expansions.hpp"
#include "univoque/words.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace univoque {

enum class LexMode { Strict, NonStrict };  // U-type (<, >) or V-type (<=, >=) conditions
enum class SetKind { U, V };

std::string to_string(SetKind k);
inline LexMode mode_of(SetKind k) { return k == SetKind::U ? LexMode::Strict : LexMode::NonStrict; }

/// Finite automaton for the sequences c with σ^k c below `bound` whenever
/// c_k < M and σ^k c above reflect(bound) whenever c_k > 0.
///
/// A state is the list of pending comparisons ("ties") that agree so far with
/// the bound or its reflection, oldest first; tie positions are folded modulo
/// the bound's period. Reading a digit that breaks a tie the wrong way kills
/// the run. In Strict mode a tie that never resolves means equality with the
/// bound, which is forbidden: a run is accepted iff its oldest tie resolves
/// infinitely often (a Büchi condition on marked edges). NonStrict runs only
/// need to survive (safety).
class LexAutomaton {
 public:
  struct Tie {
    bool upper;          // compared against the bound (else against its reflection)
    std::uint32_t pos;   // digits matched so far, folded into [0, |pre| + |period|)
    friend bool operator==(const Tie&, const Tie&) = default;
    friend auto operator<=>(const Tie&, const Tie&) = default;
  };

  LexAutomaton(const PeriodicSeq& bound, LexMode mode);

  LexMode mode() const { return mode_; }
  const PeriodicSeq& bound() const { return bound_; }
  Alphabet alphabet() const { return bound_.alphabet(); }
  std::size_t state_count() const { return states_.size(); }
  const std::vector<Tie>& ties(int state) const { return states_.at(static_cast<std::size_t>(state)); }

  static constexpr int kInitial = 0;
  static constexpr int kDead = -1;

  /// Successor on digit d, or kDead on a violation.
  int next(int state, Digit d) const { return trans_[index(state, d)]; }
  /// The transition resolves the oldest pending tie (the Büchi mark).
  bool marked(int state, Digit d) const { return mark_[index(state, d)]; }
  /// Some accepted infinite run starts here.
  bool good(int state) const { return state >= 0 && good_[static_cast<std::size_t>(state)]; }
  /// Exactly one accepted infinite run starts here.
  bool unique_run(int state) const;

  /// Final state after reading w, or kDead (also when w leaves the good states).
  int run(const Word& w) const;
  /// The eventually periodic sequence is an accepted run.
  bool accepts(const PeriodicSeq& c) const;
  /// An eventually periodic accepted continuation from `state`, as digits
  /// (path, cycle) so that path cycle^∞ is accepted.
  std::pair<Digits, Digits> lasso(int state) const;

 private:
  std::size_t index(int state, Digit d) const {
    return static_cast<std::size_t>(state) * static_cast<std::size_t>(alphabet().M + 1) + static_cast<std::size_t>(d);
  }
  void explore();
  void trim();

  PeriodicSeq bound_;
  PeriodicSeq reflected_;
  LexMode mode_;
  std::vector<std::vector<Tie>> states_;
  std::vector<int> trans_;
  std::vector<char> mark_;
  std::vector<char> good_;
  std::vector<char> core_;  // state lies in an SCC holding a marked internal edge
};

/// The automaton for U_q' (Strict) or V_q' (NonStrict) from a certified α.
LexAutomaton build_automaton(const PeriodicSeq& alpha, LexMode mode);

/// Length-n words stored in a trie; iteration is lexicographic.
class PrefixTrie {
 public:
  enum class Mode { Certified, Lower, Upper };

  PrefixTrie(Alphabet alphabet, std::size_t depth, Mode mode = Mode::Certified);

  Alphabet alphabet() const { return alphabet_; }
  std::size_t depth() const { return depth_; }
  Mode mode() const { return mode_; }
  void set_mode(Mode m) { mode_ = m; }
  std::size_t node_count() const { return children_.size() / width(); }
  std::size_t size() const { return leaves_; }
  bool empty() const { return leaves_ == 0; }

  /// Inserts a word of length depth(); a shorter word is accepted only when
  /// it is already a prefix of a stored word (no-op), otherwise rejected.
  bool insert(const Word& w);
  bool contains(const Word& w) const;
  /// Words of length depth(), lexicographic.
  std::vector<Word> words() const;
  /// B_k: distinct prefixes of length k <= depth().
  std::vector<Word> prefixes(std::size_t k) const;

  /// Same word set.
  friend bool operator==(const PrefixTrie& a, const PrefixTrie& b);
  bool subset_of(const PrefixTrie& other) const;

 private:
  std::size_t width() const { return static_cast<std::size_t>(alphabet_.M + 1); }
  int child(int node, Digit d) const { return children_[static_cast<std::size_t>(node) * width() + static_cast<std::size_t>(d)]; }
  int locate(const Word& w) const;

  Alphabet alphabet_;
  std::size_t depth_;
  Mode mode_;
  std::vector<int> children_;
  std::size_t leaves_ = 0;
};

/// All words of length n accepted by the automaton (prefixes of accepted runs).
PrefixTrie enumerate_words(const LexAutomaton& automaton, std::size_t n);

struct EnumResult {
  PrefixTrie lower;
  PrefixTrie upper;
  bool certified = false;
  std::optional<PeriodicSeq> alpha;  // certified α, when available
};

/// B_n(U_q') or B_n(V_q'). With a certified α the automaton answers exactly;
/// otherwise the known prefix w of α brackets α between w0^∞ and wM^∞ and
/// the two automata give a lower and an upper prefix set.
EnumResult enum_prefixes(const BaseValue& q, std::size_t n, SetKind kind, std::size_t alpha_depth = kDefaultCertificationDepth);

/// Smallest j >= first_j with c_j < M and c_{j+1..j+n} >= w, or c_j > 0 and
/// c_{j+1..j+n} <= reflect(w); n = |w| and c_0 reads as 0.
std::optional<std::size_t> first_violation_index(const PeriodicSeq& c, const Word& alpha_prefix, std::size_t first_j = 0);
std::optional<std::size_t> first_violation_index(const Word& c, const Word& alpha_prefix, std::size_t first_j = 0);

/// c_1..c_j followed by tail.
PeriodicSeq complete_with_alpha_tail(const PeriodicSeq& c, std::size_t j, const PeriodicSeq& tail);
PeriodicSeq complete_with_alpha_tail(const Word& c, std::size_t j, const PeriodicSeq& tail);

/// Symbolic Hausdorff distance of two sets of sequences given by their
/// prefix tries: 2^-(k+1) where k is the largest depth at which the prefix
/// sets agree, or 0 when they agree at every common depth D (meaning the
/// distance is at most 2^-(D+1)).
struct SymbolicDistance {
  Rational value;
  std::size_t agreed_depth = 0;
  std::size_t common_depth = 0;

  bool at_floor() const { return value == 0; }
};

SymbolicDistance symbolic_hausdorff(const PrefixTrie& a, const PrefixTrie& b);

/// (α_1..α_m reflect(α_1..α_{m-1}(α_m - 1) α_1..α_m))^∞.
PeriodicSeq remark4_candidate(const PeriodicSeq& alpha, std::size_t m);

/// Searches quasi-greedy sequences (v reflect(v))^∞ with |v| <= max_half that
/// lie in V (non-strict self-admissible), are strictly below alpha and share
/// its first n digits. Such a sequence is α(t) for some t in V \ closure(U)
/// below the base of alpha. Not exhaustive.
std::optional<PeriodicSeq> find_left_witness(const PeriodicSeq& alpha, std::size_t n, std::size_t max_half = 12);

/// Text: metadata header then one word per line. JSON: object with "words".
std::string trie_to_text(const PrefixTrie& trie, const std::string& base_spec, SetKind kind);
std::string trie_to_json(const PrefixTrie& trie, const std::string& base_spec, SetKind kind);

}  // namespace univoque
