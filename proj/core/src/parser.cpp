// Earley recognition over POS digits, then minimal-height tree recovery.

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "grammar_index.hpp"

namespace lingua {

namespace {

using detail::GrammarIndex;
using detail::kFirstNonterminal;

struct Item {
  int rule;
  int dot;
  int origin;
  bool operator==(const Item&) const = default;
};

struct ItemHash {
  std::size_t operator()(const Item& i) const noexcept {
    return (static_cast<std::size_t>(i.rule) * 1315423911u) ^
           (static_cast<std::size_t>(i.dot) << 20) ^ static_cast<std::size_t>(i.origin);
  }
};

constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

class Chart {
 public:
  Chart(const GrammarIndex& g, std::span<const int> input) : g_(g), input_(input) {
    const std::size_t n = input.size();
    sets_.resize(n + 1);
    seen_.resize(n + 1);
    predicted_.assign(n + 1, std::vector<char>(g.nonterminals.size(), 0));
    const std::size_t nts = g.nonterminals.size();
    completed_.assign(nts * (n + 1) * (n + 1), {});
  }

  void run() {
    predict(0, 0);
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      for (std::size_t k = 0; k < sets_[i].size(); ++k) {
        const Item item = sets_[i][k];
        const auto& rule = g_.rules[item.rule];
        if (item.dot == static_cast<int>(rule.rhs.size())) {
          complete(item, i);
        } else if (const int next = rule.rhs[item.dot]; detail::is_terminal(next)) {
          if (i < input_.size() && input_[i] == next) {
            add(i + 1, {item.rule, item.dot + 1, item.origin});
          }
        } else {
          predict(next - kFirstNonterminal, i);
        }
      }
    }
  }

  std::size_t longest_prefix() const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (!sets_[i].empty()) best = i;
    }
    return best;
  }

  // Rules that complete nonterminal `nt` over [a, b).
  const std::vector<int>& completions(int nt, std::size_t a, std::size_t b) const {
    return completed_[index(nt, a, b)];
  }

  std::size_t index(int nt, std::size_t a, std::size_t b) const {
    const std::size_t w = input_.size() + 1;
    return (static_cast<std::size_t>(nt) * w + a) * w + b;
  }

 private:
  void add(std::size_t i, Item item) {
    if (seen_[i].insert(item).second) sets_[i].push_back(item);
  }

  void predict(int nt, std::size_t i) {
    if (predicted_[i][nt]) return;
    predicted_[i][nt] = 1;
    for (int r : g_.by_lhs[nt]) add(i, {r, 0, static_cast<int>(i)});
  }

  void complete(const Item& done, std::size_t i) {
    const int lhs = g_.rules[done.rule].lhs;
    auto& list = completed_[index(lhs, done.origin, i)];
    if (std::find(list.begin(), list.end(), done.rule) == list.end()) list.push_back(done.rule);
    const int code = kFirstNonterminal + lhs;
    // Without empty rules the origin set is already closed.
    const auto& origin_set = sets_[done.origin];
    for (std::size_t k = 0; k < origin_set.size(); ++k) {
      const Item waiting = origin_set[k];
      const auto& rule = g_.rules[waiting.rule];
      if (waiting.dot < static_cast<int>(rule.rhs.size()) && rule.rhs[waiting.dot] == code) {
        add(i, {waiting.rule, waiting.dot + 1, waiting.origin});
      }
    }
  }

  const GrammarIndex& g_;
  std::span<const int> input_;
  std::vector<std::vector<Item>> sets_;
  std::vector<std::unordered_set<Item, ItemHash>> seen_;
  std::vector<std::vector<char>> predicted_;
  std::vector<std::vector<int>> completed_;
};

// Minimal derivation heights for every completed (nonterminal, span).
class HeightTable {
 public:
  HeightTable(const GrammarIndex& g, const Chart& chart, std::span<const int> input)
      : g_(g), chart_(chart), input_(input) {
    const std::size_t n = input.size();
    heights_.assign(g.nonterminals.size() * (n + 1) * (n + 1), kUnreachable);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t len = 1; len <= n; ++len) {
        for (std::size_t a = 0; a + len <= n; ++a) {
          const std::size_t b = a + len;
          for (std::size_t nt = 0; nt < g.nonterminals.size(); ++nt) {
            for (int r : chart.completions(static_cast<int>(nt), a, b)) {
              const int h = 1 + best_split(r, a, b, nullptr);
              int& slot = heights_[chart.index(static_cast<int>(nt), a, b)];
              if (h < slot) {
                slot = h;
                changed = true;
              }
            }
          }
        }
      }
    }
  }

  int height(int code, std::size_t a, std::size_t b) const {
    if (detail::is_terminal(code)) {
      return (b == a + 1 && input_[a] == code) ? 0 : kUnreachable;
    }
    return heights_[chart_.index(code - kFirstNonterminal, a, b)];
  }

  // Smallest achievable max child height for rule r over [a, b); writes the
  // leftmost optimal boundaries into `cuts` when given.
  int best_split(int r, std::size_t a, std::size_t b, std::vector<std::size_t>* cuts) const {
    const auto& rhs = g_.rules[r].rhs;
    const std::size_t m = rhs.size();
    const std::size_t w = b - a + 1;
    // cost[k][p]: best max height covering the first k symbols ending at a+p.
    std::vector<int> cost((m + 1) * w, kUnreachable);
    std::vector<std::size_t> back((m + 1) * w, 0);
    cost[0] = 0;
    for (std::size_t k = 1; k <= m; ++k) {
      for (std::size_t p = k; p < w; ++p) {
        for (std::size_t q = k - 1; q < p; ++q) {
          const int prev = cost[(k - 1) * w + q];
          if (prev >= kUnreachable) continue;
          const int h = height(rhs[k - 1], a + q, a + p);
          if (h >= kUnreachable) continue;
          const int c = std::max(prev, h);
          if (c < cost[k * w + p]) {
            cost[k * w + p] = c;
            back[k * w + p] = q;
          }
        }
      }
    }
    const int best = cost[m * w + (w - 1)];
    if (cuts && best < kUnreachable) {
      cuts->assign(m + 1, 0);
      std::size_t p = w - 1;
      for (std::size_t k = m; k > 0; --k) {
        (*cuts)[k] = a + p;
        p = back[k * w + p];
      }
      (*cuts)[0] = a;
    }
    return best;
  }

  DerivationTree build(int code, std::size_t a, std::size_t b) const {
    DerivationTree node;
    node.symbol = g_.symbol(code);
    node.start = a;
    node.end = b;
    if (detail::is_terminal(code)) return node;
    const int nt = code - kFirstNonterminal;
    const int target = height(code, a, b);
    for (int r : chart_.completions(nt, a, b)) {
      std::vector<std::size_t> cuts;
      if (1 + best_split(r, a, b, &cuts) != target) continue;
      const auto& rhs = g_.rules[r].rhs;
      for (std::size_t k = 0; k < rhs.size(); ++k) {
        node.children.push_back(build(rhs[k], cuts[k], cuts[k + 1]));
      }
      return node;
    }
    return node;  // unreachable for derivable items
  }

 private:
  const GrammarIndex& g_;
  const Chart& chart_;
  std::span<const int> input_;
  std::vector<int> heights_;
};

}  // namespace

ParseResult parse_sequence(const RuleSet& rules, std::span<const int> pos_sequence) {
  if (pos_sequence.empty() || pos_sequence.size() > kMaxParseLength) {
    throw ContractError("POS sequence length must be in [1, " +
                        std::to_string(kMaxParseLength) + "]");
  }
  for (int d : pos_sequence) {
    if (d < kMinPos || d > kMaxPos) {
      throw ContractError("POS digit " + std::to_string(d) + " outside 0..9");
    }
  }
  const GrammarIndex g(rules);
  Chart chart(g, pos_sequence);
  chart.run();

  ParseResult result;
  result.longest_prefix = chart.longest_prefix();
  const std::size_t n = pos_sequence.size();
  if (chart.completions(0, 0, n).empty()) return result;

  const HeightTable heights(g, chart, pos_sequence);
  result.parsed = true;
  result.trees.push_back(heights.build(kFirstNonterminal, 0, n));
  return result;
}

}  // namespace lingua
