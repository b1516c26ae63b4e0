#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <set>

#include "grammar_index.hpp"

namespace lingua {

namespace {

using detail::GrammarIndex;
using detail::kFirstNonterminal;

constexpr std::size_t kInfeasible = std::numeric_limits<std::size_t>::max() / 4;

class Generator {
 public:
  Generator(const RuleSet& rules, std::span<const DeckCard> deck, std::size_t max_depth,
            std::size_t limit)
      : g_(rules), max_depth_(max_depth), limit_(limit) {
    for (std::size_t i = 0; i < deck.size(); ++i) {
      cards_by_pos_[deck[i].pos].push_back(i);
      ++budget_[deck[i].pos];
    }
    for (auto& ids : cards_by_pos_) {
      std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
        return deck[a].surface < deck[b].surface;
      });
    }
    deck_ = deck;
    total_ = deck.size();
    min_yield_.assign(g_.nonterminals.size() * (max_depth + 1), kInfeasible);
    for (std::size_t d = 1; d <= max_depth; ++d) {
      for (std::size_t nt = 0; nt < g_.nonterminals.size(); ++nt) {
        std::size_t best = kInfeasible;
        for (int r : g_.by_lhs[nt]) {
          std::size_t sum = 0;
          for (int code : g_.rules[r].rhs) sum = std::min(kInfeasible, sum + min_yield(code, d - 1));
          best = std::min(best, sum);
        }
        min_yield_[nt * (max_depth + 1) + d] = best;
      }
    }
  }

  std::vector<DerivedSentence> run() {
    if (max_depth_ == 0 || g_.by_lhs[0].empty()) return {};
    expand(kFirstNonterminal, max_depth_, [&](const DerivationTree& tree) {
      instantiate(tree);
      return out_.size() < limit_;
    });
    return std::move(out_);
  }

 private:
  using Sink = std::function<bool(const DerivationTree&)>;

  // Fewest terminals `code` can yield within `depth` rule applications.
  std::size_t min_yield(int code, std::size_t depth) const {
    if (detail::is_terminal(code)) return budget_[code] > 0 ? 1 : kInfeasible;
    if (depth == 0) return kInfeasible;
    return min_yield_[(code - kFirstNonterminal) * (max_depth_ + 1) + depth];
  }

  bool expand(int code, std::size_t depth, const Sink& sink) {
    if (detail::is_terminal(code)) {
      if (budget_[code] == 0 || total_ == 0) return true;
      --budget_[code];
      --total_;
      DerivationTree leaf;
      leaf.symbol = Symbol::pos(code);
      const bool more = sink(leaf);
      ++budget_[code];
      ++total_;
      return more;
    }
    if (depth == 0) return true;
    const int nt = code - kFirstNonterminal;
    for (int r : g_.by_lhs[nt]) {
      std::vector<DerivationTree> children;
      const auto& rhs = g_.rules[r].rhs;
      const bool more = expand_rhs(rhs, 0, depth - 1, children, [&](std::vector<DerivationTree>& kids) {
        DerivationTree node;
        node.symbol = g_.nonterminals[nt];
        node.children = kids;
        return sink(node);
      });
      if (!more) return false;
    }
    return true;
  }

  template <typename Done>
  bool expand_rhs(const std::vector<int>& rhs, std::size_t i, std::size_t depth,
                  std::vector<DerivationTree>& children, const Done& done) {
    if (i == rhs.size()) return done(children);
    std::size_t needed = 0;
    for (std::size_t k = i; k < rhs.size(); ++k) {
      needed = std::min(kInfeasible, needed + min_yield(rhs[k], depth));
    }
    if (needed > total_) return true;
    return expand(rhs[i], depth, [&](const DerivationTree& child) {
      children.push_back(child);
      const bool more = expand_rhs(rhs, i + 1, depth, children, done);
      children.pop_back();
      return more;
    });
  }

  static std::size_t place(DerivationTree& node, std::size_t at) {
    node.start = at;
    if (node.children.empty()) {
      node.end = at + 1;
      return node.end;
    }
    for (auto& c : node.children) at = place(c, at);
    node.end = at;
    return at;
  }

  void instantiate(const DerivationTree& shape) {
    DerivationTree tree = shape;
    place(tree, 0);
    const std::vector<int> pos = tree.leaves();
    std::vector<char> used(deck_.size(), 0);
    std::vector<std::string> words;
    auto fill = [&](auto& self, std::size_t i) -> bool {
      if (out_.size() >= limit_) return false;
      if (i == pos.size()) {
        if (seen_.insert(words).second) out_.push_back({words, pos, tree});
        return out_.size() < limit_;
      }
      std::string_view last_tried;
      bool tried_any = false;
      for (std::size_t card : cards_by_pos_[pos[i]]) {
        if (used[card]) continue;
        // Equal surfaces yield identical sentences.
        if (tried_any && deck_[card].surface == last_tried) continue;
        tried_any = true;
        last_tried = deck_[card].surface;
        used[card] = 1;
        words.push_back(deck_[card].surface);
        const bool more = self(self, i + 1);
        words.pop_back();
        used[card] = 0;
        if (!more) return false;
      }
      return true;
    };
    fill(fill, 0);
  }

  GrammarIndex g_;
  std::size_t max_depth_;
  std::size_t limit_;
  std::span<const DeckCard> deck_;
  std::array<std::vector<std::size_t>, 10> cards_by_pos_;
  std::array<std::size_t, 10> budget_{};
  std::size_t total_ = 0;
  std::vector<std::size_t> min_yield_;
  std::set<std::vector<std::string>> seen_;
  std::vector<DerivedSentence> out_;
};

}  // namespace

std::vector<DerivedSentence> derive_sentences(const RuleSet& rules, std::span<const DeckCard> deck,
                                              std::size_t max_depth, std::size_t limit) {
  if (deck.empty()) throw ContractError("deck must not be empty");
  if (limit == 0) throw ContractError("limit must be >= 1");
  for (const DeckCard& c : deck) {
    if (c.pos < kMinPos || c.pos > kMaxPos) {
      throw ContractError("card '" + c.surface + "' has POS outside 0..9");
    }
  }
  Generator gen(rules, deck, max_depth, limit);
  return gen.run();
}

}  // namespace lingua
