#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#ifndef LINGUA_FIXTURE_DIR
#error "LINGUA_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace lingua::testing {

std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(LINGUA_FIXTURE_DIR) / name;
}

AnnotatedCorpus load_fixture(const std::string& name) { return load_corpus(fixture(name)); }

PairCounts count_pairs(const std::vector<Sentence>& sentences) {
  PairCounts c;
  for (const Sentence& s : sentences) {
    std::vector<std::string> chain{"<s>"};
    for (const Token& t : s.tokens) {
      chain.push_back(t.surface);
      c.vocabulary.insert(t.surface);
    }
    chain.push_back("</s>");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      ++c.pairs[{chain[i], chain[i + 1]}];
      ++c.outgoing[chain[i]];
    }
  }
  return c;
}

namespace {

std::uint64_t lookup(const PairCounts& c, const std::string& a, const std::string& b) {
  auto it = c.pairs.find({a, b});
  return it == c.pairs.end() ? 0 : it->second;
}

}  // namespace

bool attested(const PairCounts& counts, const std::vector<std::string>& chain, bool boundaries) {
  std::vector<std::string> full;
  if (boundaries) full.push_back("<s>");
  full.insert(full.end(), chain.begin(), chain.end());
  if (boundaries) full.push_back("</s>");
  for (std::size_t i = 0; i + 1 < full.size(); ++i) {
    if (lookup(counts, full[i], full[i + 1]) == 0) return false;
  }
  return true;
}

double smoothed_score(const PairCounts& counts, const std::vector<std::string>& chain) {
  std::vector<std::string> full{"<s>"};
  full.insert(full.end(), chain.begin(), chain.end());
  full.push_back("</s>");
  const double classes = static_cast<double>(counts.vocabulary.size() + 1);
  double score = 0;
  for (std::size_t i = 0; i + 1 < full.size(); ++i) {
    auto out = counts.outgoing.find(full[i]);
    const double total = out == counts.outgoing.end() ? 0.0 : static_cast<double>(out->second);
    score += std::log((static_cast<double>(lookup(counts, full[i], full[i + 1])) + 1.0) /
                      (total + classes));
  }
  return score;
}

std::vector<ScoredOrdering> all_orderings(const PairCounts& counts, std::vector<std::string> salad) {
  std::sort(salad.begin(), salad.end());
  std::vector<ScoredOrdering> out;
  do {
    out.push_back({salad, smoothed_score(counts, salad)});
  } while (std::next_permutation(salad.begin(), salad.end()));
  std::stable_sort(out.begin(), out.end(), [](const ScoredOrdering& a, const ScoredOrdering& b) {
    return a.score > b.score;
  });
  return out;
}

std::vector<std::vector<std::string>> brute_force_chains(const PairCounts& counts,
                                                         const std::vector<std::string>& deck,
                                                         std::size_t min_len, std::size_t max_len) {
  std::set<std::vector<std::string>> found;
  std::vector<std::size_t> picked;
  std::vector<bool> used(deck.size(), false);
  std::function<void()> grow = [&] {
    if (picked.size() >= min_len) {
      std::vector<std::string> chain;
      for (std::size_t i : picked) chain.push_back(deck[i]);
      if (attested(counts, chain, true)) found.insert(chain);
    }
    if (picked.size() == max_len) return;
    for (std::size_t i = 0; i < deck.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      picked.push_back(i);
      grow();
      picked.pop_back();
      used[i] = false;
    }
  };
  grow();
  return {found.begin(), found.end()};
}

std::set<std::vector<int>> derivable_strings(const RuleSet& rules, std::size_t max_len,
                                             std::size_t max_height) {
  using Strings = std::set<std::vector<int>>;
  std::map<std::string, Strings> level;  // nonterminal -> strings with height <= h
  for (std::size_t h = 1; h <= max_height; ++h) {
    std::map<std::string, Strings> next = level;
    for (const Rule& r : rules.rules()) {
      // Concatenate one string per rhs symbol, capped at max_len.
      Strings partial{{}};
      for (const Symbol& sym : r.rhs) {
        Strings grown;
        const Strings* options = nullptr;
        Strings terminal;
        if (sym.is_pos()) {
          terminal.insert({sym.digit()});
          options = &terminal;
        } else {
          auto it = level.find(sym.name());
          if (it == level.end()) {
            partial.clear();
            break;
          }
          options = &it->second;
        }
        for (const auto& prefix : partial) {
          for (const auto& piece : *options) {
            if (prefix.size() + piece.size() > max_len) continue;
            auto joined = prefix;
            joined.insert(joined.end(), piece.begin(), piece.end());
            grown.insert(std::move(joined));
          }
        }
        partial = std::move(grown);
        if (partial.empty()) break;
      }
      next[r.lhs.name()].insert(partial.begin(), partial.end());
    }
    if (next == level) break;  // no taller tree adds anything new
    level = std::move(next);
  }
  auto it = level.find("S");
  return it == level.end() ? Strings{} : it->second;
}

AnnotatedCorpus random_corpus(SplitMix64& rng, std::size_t sentences, std::size_t vocab_size,
                              std::size_t max_len, int pos_count) {
  static const std::vector<std::string> kLabels{"NP", "VP", "PP"};
  AnnotatedCorpus c;
  c.id = "rand";
  c.hidden_language = "Random";
  for (int p = 0; p < pos_count; ++p) c.pos_legend[p] = "P" + std::to_string(p);
  for (const auto& l : kLabels) c.palette[l] = "black";
  // Each word keeps one POS most of the time.
  std::vector<std::string> words;
  std::vector<int> word_pos;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    std::string w;
    std::size_t n = i;
    do {
      w.push_back(static_cast<char>('a' + n % 26));
      n /= 26;
    } while (n > 0);
    words.push_back("w" + w);
    word_pos.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(pos_count))));
  }
  for (std::size_t si = 0; si < sentences; ++si) {
    Sentence s;
    const std::size_t len = 1 + rng.below(max_len);
    for (std::size_t t = 0; t < len; ++t) {
      const std::size_t w = rng.below(vocab_size);
      const int pos = rng.below(5) == 0 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(pos_count)))
                                        : word_pos[w];
      s.tokens.push_back({words[w], pos});
    }
    // Random nested bracketing: recursively split [a, b).
    std::function<void(std::size_t, std::size_t, bool)> bracket = [&](std::size_t a, std::size_t b,
                                                                      bool is_root) {
      if (b - a >= 1 && !is_root && rng.below(3) != 0) {
        s.phrases.push_back({a, b, kLabels[rng.below(kLabels.size())]});
      }
      if (b - a < 2) return;
      std::size_t cut = a + 1 + rng.below(b - a - 1);
      if (rng.below(2) == 0) bracket(a, cut, false);
      if (rng.below(2) == 0) bracket(cut, b, false);
    };
    bracket(0, len, true);
    std::sort(s.phrases.begin(), s.phrases.end(), [](const PhraseSpan& x, const PhraseSpan& y) {
      return x.start != y.start ? x.start < y.start : x.end > y.end;
    });
    s.phrases.erase(std::unique(s.phrases.begin(), s.phrases.end(),
                                [](const PhraseSpan& x, const PhraseSpan& y) {
                                  return x.start == y.start && x.end == y.end;
                                }),
                    s.phrases.end());
    c.sentences.push_back(std::move(s));
  }
  return c;
}

RuleSet random_grammar(SplitMix64& rng, std::size_t rule_count) {
  static const std::vector<std::string> kLabels{"A", "B", "C", "D", "E"};
  RuleSet rules({kLabels.begin(), kLabels.end()});
  const int digits = 4;
  // Drawing from a few labels keeps most of them productive.
  const std::size_t active = 1 + rng.below(3);
  auto random_label = [&] { return Symbol::phrase(kLabels[rng.below(active)]); };
  auto random_symbol = [&](bool allow_label) {
    if (allow_label && rng.below(2) == 0) return random_label();
    return Symbol::pos(static_cast<int>(rng.below(digits)));
  };
  std::size_t guard = 0;
  while (rules.rules().size() < rule_count && ++guard < 1000) {
    const bool start = rules.rules().empty() || rng.below(3) == 0;
    const Symbol lhs = start ? Symbol::start() : random_label();
    std::vector<Symbol> rhs;
    const std::size_t len = 1 + rng.below(3);
    if (len == 1) {
      rhs.push_back(start ? random_symbol(true) : Symbol::pos(static_cast<int>(rng.below(digits))));
    } else {
      for (std::size_t i = 0; i < len; ++i) rhs.push_back(random_symbol(true));
    }
    rules.add(lhs, std::move(rhs), 1);
  }
  return rules;
}

std::vector<std::vector<int>> all_sequences(int digits, std::size_t max_len) {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : frontier) {
      for (int d = 0; d < digits; ++d) {
        auto s = prefix;
        s.push_back(d);
        next.push_back(s);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace lingua::testing
