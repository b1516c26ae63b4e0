#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lingua/corpus.hpp"

namespace lingua {

// A grammar symbol: a POS digit ("0".."9") or a phrase label (or S).
class Symbol {
 public:
  Symbol() = default;
  static Symbol pos(int digit);
  static Symbol phrase(std::string label);
  static Symbol start() { return phrase(std::string(kStartSymbol)); }
  // "0".."9" become POS symbols, identifiers become phrases. Throws
  // ContractError for anything else.
  static Symbol parse(std::string_view text);

  bool is_pos() const noexcept { return name_.size() == 1 && name_[0] >= '0' && name_[0] <= '9'; }
  bool is_start() const noexcept { return name_ == kStartSymbol; }
  int digit() const noexcept { return name_[0] - '0'; }
  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;

 private:
  explicit Symbol(std::string name) : name_(std::move(name)) {}
  std::string name_;
};

struct Rule {
  Symbol lhs;
  std::vector<Symbol> rhs;
  std::uint64_t count = 1;

  friend bool operator==(const Rule&, const Rule&) = default;
};

std::string to_string(const Rule& rule);  // "NP -> 0 2 1"

// Flat CFG keyed by (lhs, rhs). Labels are the phrase categories the
// grammar may mention (the corpus palette).
class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::set<std::string> labels);

  // Adds `count` occurrences. Throws ContractError on malformed rules.
  void add(const Symbol& lhs, std::vector<Symbol> rhs, std::uint64_t count = 1);

  std::uint64_t count(const Symbol& lhs, std::span<const Symbol> rhs) const;
  bool has_lhs(const Symbol& lhs) const;
  bool knows(const Symbol& symbol) const;  // digit, S, or a known label

  // Sorted by (lhs, rhs).
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const std::set<std::string>& labels() const noexcept { return labels_; }
  Symbol start() const { return Symbol::start(); }

  friend bool operator==(const RuleSet&, const RuleSet&) = default;

 private:
  std::set<std::string> labels_;
  std::vector<Rule> rules_;
};

// Each span contributes label -> immediate children (maximal sub-spans and
// uncovered POS digits, left to right); each sentence contributes S -> its
// top-level children.
RuleSet extract_rules(const AnnotatedCorpus& corpus);
RuleSet extract_rules(std::span<const Sentence> sentences, std::set<std::string> labels);

// Immediate children of [start, end) in `sentence`, ignoring the span at
// `self` (use npos for the sentence level).
std::vector<Symbol> immediate_children(const Sentence& sentence, std::size_t start,
                                       std::size_t end, std::size_t self);

enum class RuleVerdict { Accepted, UnknownLhs, RhsNeverAttested };
std::string_view to_string(RuleVerdict verdict) noexcept;

struct RuleCheck {
  bool accepted = false;
  RuleVerdict verdict = RuleVerdict::RhsNeverAttested;
};

// Strict membership. Throws ContractError when the candidate mentions
// symbols the grammar cannot know (labels outside the palette, S on the rhs,
// empty rhs).
RuleCheck check_rule(const RuleSet& rules, const Symbol& lhs, std::span<const Symbol> rhs);

struct DerivationTree {
  Symbol symbol;
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<DerivationTree> children;  // empty for POS leaves

  std::size_t height() const;
  std::vector<int> leaves() const;
  std::string bracketed() const;  // "(S (NP 0 1) 2)"

  friend bool operator==(const DerivationTree&, const DerivationTree&) = default;
};

inline constexpr std::size_t kMaxParseLength = 25;

struct ParseResult {
  bool parsed = false;
  std::vector<DerivationTree> trees;
  // Longest prefix that is still a prefix of some sentence of the grammar.
  std::size_t longest_prefix = 0;
};

ParseResult parse_sequence(const RuleSet& rules, std::span<const int> pos_sequence);

struct DeckCard {
  std::string surface;
  int pos = 0;
  bool in_corpus = false;

  friend bool operator==(const DeckCard&, const DeckCard&) = default;
};

struct DerivedSentence {
  std::vector<std::string> words;
  std::vector<int> pos;
  DerivationTree tree;
};

inline constexpr std::size_t kDefaultDeriveDepth = 6;

// Expands S leftmost-first up to `max_depth` rule applications per path,
// then fills POS slots with deck cards (each card at most once).
std::vector<DerivedSentence> derive_sentences(const RuleSet& rules,
                                              std::span<const DeckCard> deck,
                                              std::size_t max_depth, std::size_t limit);

std::string serialize_rules(const RuleSet& rules);
RuleSet parse_rules(std::string_view document);

}  // namespace lingua
