#pragma once

// Integer view of a RuleSet shared by the parser and the generator.
// Symbol codes: 0..9 are POS terminals, kFirstNonterminal + k is nonterminal k.

#include <map>
#include <string>
#include <vector>

#include "lingua/grammar.hpp"

namespace lingua::detail {

inline constexpr int kFirstNonterminal = 10;

inline bool is_terminal(int code) { return code < kFirstNonterminal; }

struct CompiledRule {
  int lhs = 0;  // nonterminal index
  std::vector<int> rhs;
  const Rule* source = nullptr;
};

struct GrammarIndex {
  std::vector<Symbol> nonterminals;         // index 0 is S
  std::vector<CompiledRule> rules;          // in RuleSet order
  std::vector<std::vector<int>> by_lhs;     // nonterminal -> rule indices

  explicit GrammarIndex(const RuleSet& set) {
    std::map<std::string, int> ids;
    auto id_of = [&](const Symbol& s) {
      auto [it, inserted] = ids.emplace(s.name(), static_cast<int>(nonterminals.size()));
      if (inserted) nonterminals.push_back(s);
      return it->second;
    };
    id_of(Symbol::start());
    for (const Rule& r : set.rules()) {
      CompiledRule c;
      c.lhs = id_of(r.lhs);
      for (const Symbol& s : r.rhs) {
        c.rhs.push_back(s.is_pos() ? s.digit() : kFirstNonterminal + id_of(s));
      }
      c.source = &r;
      rules.push_back(std::move(c));
    }
    by_lhs.assign(nonterminals.size(), {});
    for (std::size_t i = 0; i < rules.size(); ++i) by_lhs[rules[i].lhs].push_back(static_cast<int>(i));
  }

  Symbol symbol(int code) const {
    return is_terminal(code) ? Symbol::pos(code) : nonterminals[code - kFirstNonterminal];
  }
};

}  // namespace lingua::detail
