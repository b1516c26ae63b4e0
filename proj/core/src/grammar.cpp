#include "lingua/grammar.hpp"

#include <algorithm>
#include <limits>

#include "json_codec.hpp"

namespace lingua {

Symbol Symbol::pos(int digit) {
  if (digit < kMinPos || digit > kMaxPos) {
    throw ContractError("POS digit " + std::to_string(digit) + " outside 0..9");
  }
  return Symbol(std::string(1, static_cast<char>('0' + digit)));
}

Symbol Symbol::phrase(std::string label) {
  if (!is_valid_label(label)) throw ContractError("'" + label + "' is not a phrase label");
  return Symbol(std::move(label));
}

Symbol Symbol::parse(std::string_view text) {
  if (text.size() == 1 && text[0] >= '0' && text[0] <= '9') return pos(text[0] - '0');
  return phrase(std::string(text));
}

std::string to_string(const Rule& rule) {
  std::string out = rule.lhs.name() + " ->";
  for (const Symbol& s : rule.rhs) out += " " + s.name();
  return out;
}

RuleSet::RuleSet(std::set<std::string> labels) : labels_(std::move(labels)) {
  for (const auto& l : labels_) {
    if (l == kStartSymbol || !is_valid_label(l)) {
      throw ContractError("'" + l + "' cannot be a phrase label");
    }
  }
}

bool RuleSet::knows(const Symbol& symbol) const {
  return symbol.is_pos() || symbol.is_start() || labels_.contains(symbol.name());
}

namespace {

bool key_less(const Rule& r, const Symbol& lhs, std::span<const Symbol> rhs) {
  if (r.lhs != lhs) return r.lhs < lhs;
  return std::lexicographical_compare(r.rhs.begin(), r.rhs.end(), rhs.begin(), rhs.end());
}

}  // namespace

void RuleSet::add(const Symbol& lhs, std::vector<Symbol> rhs, std::uint64_t count) {
  if (count == 0) throw ContractError("rule count must be >= 1");
  if (lhs.is_pos() || !knows(lhs)) {
    throw ContractError("'" + lhs.name() + "' cannot be a rule left-hand side");
  }
  if (rhs.empty()) throw ContractError("rule right-hand side must not be empty");
  for (const Symbol& s : rhs) {
    if (s.is_start() || !knows(s)) {
      throw ContractError("'" + s.name() + "' cannot appear on a right-hand side");
    }
  }
  auto it = std::lower_bound(rules_.begin(), rules_.end(), 0, [&](const Rule& r, int) {
    return key_less(r, lhs, rhs);
  });
  if (it != rules_.end() && it->lhs == lhs && it->rhs == rhs) {
    it->count += count;
    return;
  }
  rules_.insert(it, Rule{lhs, std::move(rhs), count});
}

std::uint64_t RuleSet::count(const Symbol& lhs, std::span<const Symbol> rhs) const {
  auto it = std::lower_bound(rules_.begin(), rules_.end(), 0, [&](const Rule& r, int) {
    return key_less(r, lhs, rhs);
  });
  if (it != rules_.end() && it->lhs == lhs &&
      std::equal(it->rhs.begin(), it->rhs.end(), rhs.begin(), rhs.end())) {
    return it->count;
  }
  return 0;
}

bool RuleSet::has_lhs(const Symbol& lhs) const {
  return std::any_of(rules_.begin(), rules_.end(), [&](const Rule& r) { return r.lhs == lhs; });
}

std::vector<Symbol> immediate_children(const Sentence& sentence, std::size_t start,
                                       std::size_t end, std::size_t self) {
  std::vector<std::size_t> inside;
  for (std::size_t j = 0; j < sentence.phrases.size(); ++j) {
    const PhraseSpan& p = sentence.phrases[j];
    if (j == self || p.start < start || p.end > end) continue;
    if (p.start == start && p.end == end) continue;
    inside.push_back(j);
  }
  // Maximal sub-spans start at distinct positions once nested ones are dropped.
  std::vector<std::size_t> starts_at(end - start, std::numeric_limits<std::size_t>::max());
  for (std::size_t j : inside) {
    const PhraseSpan& p = sentence.phrases[j];
    const bool covered = std::any_of(inside.begin(), inside.end(), [&](std::size_t k) {
      const PhraseSpan& q = sentence.phrases[k];
      return k != j && q.contains(p) && q.length() > p.length();
    });
    if (!covered) starts_at[p.start - start] = j;
  }
  std::vector<Symbol> children;
  for (std::size_t i = start; i < end;) {
    const std::size_t j = starts_at[i - start];
    if (j != std::numeric_limits<std::size_t>::max()) {
      children.push_back(Symbol::phrase(sentence.phrases[j].label));
      i = sentence.phrases[j].end;
    } else {
      children.push_back(Symbol::pos(sentence.tokens[i].pos));
      ++i;
    }
  }
  return children;
}

RuleSet extract_rules(std::span<const Sentence> sentences, std::set<std::string> labels) {
  RuleSet rules(std::move(labels));
  constexpr std::size_t kSentenceLevel = std::numeric_limits<std::size_t>::max();
  for (const Sentence& s : sentences) {
    if (s.tokens.empty()) continue;
    rules.add(Symbol::start(), immediate_children(s, 0, s.tokens.size(), kSentenceLevel));
    for (std::size_t j = 0; j < s.phrases.size(); ++j) {
      const PhraseSpan& p = s.phrases[j];
      rules.add(Symbol::phrase(p.label), immediate_children(s, p.start, p.end, j));
    }
  }
  return rules;
}

RuleSet extract_rules(const AnnotatedCorpus& corpus) {
  std::set<std::string> labels;
  for (const auto& [label, color] : corpus.palette) labels.insert(label);
  return extract_rules(std::span<const Sentence>(corpus.sentences), std::move(labels));
}

std::string_view to_string(RuleVerdict verdict) noexcept {
  switch (verdict) {
    case RuleVerdict::Accepted: return "accepted";
    case RuleVerdict::UnknownLhs: return "unknown_lhs";
    case RuleVerdict::RhsNeverAttested: return "rhs_never_attested";
  }
  return "unknown";
}

RuleCheck check_rule(const RuleSet& rules, const Symbol& lhs, std::span<const Symbol> rhs) {
  if (rhs.empty()) throw ContractError("candidate rule has an empty right-hand side");
  if (lhs.is_pos() || !rules.knows(lhs)) {
    throw ContractError("candidate left-hand side '" + lhs.name() + "' is not a phrase label");
  }
  for (const Symbol& s : rhs) {
    if (s.is_start() || !rules.knows(s)) {
      throw ContractError("candidate symbol '" + s.name() + "' is not in the palette");
    }
  }
  if (rules.count(lhs, rhs) > 0) return {true, RuleVerdict::Accepted};
  if (!rules.has_lhs(lhs)) return {false, RuleVerdict::UnknownLhs};
  return {false, RuleVerdict::RhsNeverAttested};
}

std::size_t DerivationTree::height() const {
  if (children.empty()) return 0;
  std::size_t h = 0;
  for (const auto& c : children) h = std::max(h, c.height());
  return h + 1;
}

std::vector<int> DerivationTree::leaves() const {
  if (children.empty()) return {symbol.digit()};
  std::vector<int> out;
  for (const auto& c : children) {
    auto sub = c.leaves();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::string DerivationTree::bracketed() const {
  if (children.empty()) return symbol.name();
  std::string out = "(" + symbol.name();
  for (const auto& c : children) out += " " + c.bracketed();
  return out + ")";
}

std::string serialize_rules(const RuleSet& rules) {
  using detail::json;
  json list = json::array();
  for (const Rule& r : rules.rules()) {
    json rhs = json::array();
    for (const Symbol& s : r.rhs) rhs.push_back(s.name());
    list.push_back({{"lhs", r.lhs.name()}, {"rhs", std::move(rhs)}, {"count", r.count}});
  }
  return detail::canonical_dump({{"start", std::string(kStartSymbol)},
                                 {"labels", rules.labels()},
                                 {"rules", std::move(list)}});
}

RuleSet parse_rules(std::string_view document) {
  using detail::json;
  const json root = detail::parse_json(document);
  try {
    const json& labels_json = detail::require(root, "labels", "rules");
    std::set<std::string> labels;
    for (const json& l : labels_json) labels.insert(l.get<std::string>());
    RuleSet rules(std::move(labels));
    for (const json& r : detail::require(root, "rules", "rules")) {
      std::vector<Symbol> rhs;
      for (const json& s : detail::require(r, "rhs", "rule")) {
        rhs.push_back(s.is_number_integer() ? Symbol::pos(s.get<int>())
                                            : Symbol::parse(s.get<std::string>()));
      }
      const long long count = detail::require_integer(r, "count", "rule");
      if (count <= 0) throw ParseError("rules: counts must be positive", 0, 0);
      const Symbol lhs = Symbol::parse(detail::require_string(r, "lhs", "rule"));
      if (rules.count(lhs, rhs) > 0) throw ParseError("rules: duplicate rule", 0, 0);
      rules.add(lhs, std::move(rhs), static_cast<std::uint64_t>(count));
    }
    return rules;
  } catch (const json::exception& e) {
    throw ParseError(std::string("rules: ") + e.what(), 0, 0);
  } catch (const ContractError& e) {
    throw ParseError(std::string("rules: ") + e.what(), 0, 0);
  }
}

}  // namespace lingua
