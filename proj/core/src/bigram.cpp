#include "lingua/bigram.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "json_codec.hpp"

namespace lingua {

BigramModel BigramModel::from_counts(BigramCounts counts) {
  BigramModel m;
  std::map<std::string, std::uint64_t, std::less<>> incoming;
  for (const auto& [pair, n] : counts) {
    const auto& [left, right] = pair;
    if (n == 0) throw ContractError("zero count for pair (" + left + ", " + right + ")");
    if (left == kEos || right == kBos) {
      throw ContractError("boundary marker on the wrong side of pair (" + left + ", " +
                          right + ")");
    }
    if (left == kBos && right == kEos) throw ContractError("empty sentence in counts");
    m.outgoing_[left] += n;
    incoming[right] += n;
    if (left != kBos) m.unigrams_[left] += n;
  }
  for (const auto& [w, n] : m.unigrams_) {
    auto it = incoming.find(w);
    if (it == incoming.end() || it->second != n) {
      throw ContractError("inconsistent counts around '" + w + "'");
    }
  }
  for (const auto& [w, n] : incoming) {
    if (w != kEos && !m.unigrams_.contains(w)) {
      throw ContractError("surface '" + w + "' never precedes anything");
    }
  }
  const auto bos = m.outgoing_.find(kBos);
  const auto eos = incoming.find(kEos);
  const std::uint64_t starts = bos == m.outgoing_.end() ? 0 : bos->second;
  const std::uint64_t ends = eos == incoming.end() ? 0 : eos->second;
  if (starts != ends) throw ContractError("sentence starts and ends disagree");
  m.counts_ = std::move(counts);
  return m;
}

std::uint64_t BigramModel::count(std::string_view left, std::string_view right) const {
  auto it = counts_.find(std::make_pair(std::string(left), std::string(right)));
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t BigramModel::unigram(std::string_view surface) const {
  auto it = unigrams_.find(surface);
  return it == unigrams_.end() ? 0 : it->second;
}

std::uint64_t BigramModel::outgoing(std::string_view left) const {
  auto it = outgoing_.find(left);
  return it == outgoing_.end() ? 0 : it->second;
}

double BigramModel::log_prob(std::string_view left, std::string_view right) const {
  const double num = static_cast<double>(count(left, right)) + 1.0;
  const double den =
      static_cast<double>(outgoing(left)) + static_cast<double>(smoothing_classes());
  return std::log(num / den);
}

BigramModel build_bigram_model(std::span<const Sentence> sentences) {
  BigramCounts counts;
  for (const Sentence& s : sentences) {
    if (s.tokens.empty()) continue;
    std::string prev(kBos);
    for (const Token& t : s.tokens) {
      ++counts[{prev, t.surface}];
      prev = t.surface;
    }
    ++counts[{prev, std::string(kEos)}];
  }
  return BigramModel::from_counts(std::move(counts));
}

BigramModel build_bigram_model(const AnnotatedCorpus& corpus) {
  return build_bigram_model(std::span<const Sentence>(corpus.sentences));
}

std::string serialize_model(const BigramModel& model) {
  using detail::json;
  json bigrams = json::array();
  for (const auto& [pair, n] : model.counts()) {
    bigrams.push_back({{"left", pair.first}, {"right", pair.second}, {"count", n}});
  }
  json unigrams = json::object();
  for (const auto& [w, n] : model.unigram_counts()) unigrams[w] = n;
  return detail::canonical_dump({{"bigrams", std::move(bigrams)},
                                 {"unigrams", std::move(unigrams)},
                                 {"sentences", model.sentence_count()}});
}

BigramModel parse_model(std::string_view document) {
  using detail::json;
  const json root = detail::parse_json(document);
  const json& bigrams = detail::require(root, "bigrams", "model");
  if (!bigrams.is_array()) throw ParseError("model: 'bigrams' must be an array", 0, 0);
  BigramCounts counts;
  for (const json& b : bigrams) {
    const long long n = detail::require_integer(b, "count", "model bigram");
    if (n <= 0) throw ParseError("model: counts must be positive", 0, 0);
    auto key = std::make_pair(detail::require_string(b, "left", "model bigram"),
                              detail::require_string(b, "right", "model bigram"));
    if (!counts.emplace(std::move(key), static_cast<std::uint64_t>(n)).second) {
      throw ParseError("model: duplicate bigram", 0, 0);
    }
  }
  BigramModel model;
  try {
    model = BigramModel::from_counts(std::move(counts));
  } catch (const ContractError& e) {
    throw ParseError(std::string("model: ") + e.what(), 0, 0);
  }
  if (auto it = root.find("unigrams"); it != root.end()) {
    for (const auto& [w, n] : it->items()) {
      if (!n.is_number_unsigned() || model.unigram(w) != n.get<std::uint64_t>()) {
        throw ParseError("model: unigram count for '" + w + "' disagrees with bigrams", 0, 0);
      }
    }
    if (it->size() != model.unigram_counts().size()) {
      throw ParseError("model: unigram table disagrees with bigrams", 0, 0);
    }
  }
  return model;
}

ChainVerdict validate_chain(const BigramModel& model, std::span<const std::string> chain,
                            bool require_boundaries) {
  if (chain.empty()) throw ContractError("chain must contain at least one card");
  ChainVerdict verdict;
  auto check = [&](int position, std::string_view left, std::string_view right) {
    verdict.score += model.log_prob(left, right);
    if (!verdict.first_failure && model.count(left, right) == 0) {
      verdict.first_failure = PairFailure{position, std::string(left), std::string(right)};
    }
  };
  if (require_boundaries) check(-1, kBos, chain.front());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    check(static_cast<int>(i), chain[i], chain[i + 1]);
  }
  if (require_boundaries) {
    check(static_cast<int>(chain.size()) - 1, chain.back(), kEos);
  }
  verdict.valid = !verdict.first_failure.has_value();
  return verdict;
}

namespace {

// Distinct sorted tokens of a multiset with their multiplicities, plus
// pairwise tables. Index `size()` stands for BOS on the left, EOS on the right.
struct TokenTable {
  std::vector<std::string> tokens;
  std::vector<int> multiplicity;
  std::vector<double> log_prob;   // (n+1) x (n+1)
  std::vector<char> attested;     // (n+1) x (n+1)

  TokenTable(const BigramModel& model, std::vector<std::string> items) {
    std::sort(items.begin(), items.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i == 0 || items[i] != items[i - 1]) {
        tokens.push_back(items[i]);
        multiplicity.push_back(0);
      }
      ++multiplicity.back();
    }
    const std::size_t n = tokens.size();
    log_prob.assign((n + 1) * (n + 1), 0.0);
    attested.assign((n + 1) * (n + 1), 0);
    for (std::size_t l = 0; l <= n; ++l) {
      const std::string_view left = l == n ? kBos : std::string_view(tokens[l]);
      for (std::size_t r = 0; r <= n; ++r) {
        const std::string_view right = r == n ? kEos : std::string_view(tokens[r]);
        log_prob[l * (n + 1) + r] = model.log_prob(left, right);
        attested[l * (n + 1) + r] = model.count(left, right) > 0 ? 1 : 0;
      }
    }
  }

  std::size_t size() const { return tokens.size(); }
  double lp(std::size_t l, std::size_t r) const { return log_prob[l * (size() + 1) + r]; }
  bool ok(std::size_t l, std::size_t r) const { return attested[l * (size() + 1) + r] != 0; }
};

long long rank_key(double score) { return std::llround(score * 1e9); }

struct Candidate {
  long long key;
  double score;
  std::vector<std::uint8_t> order;
};

// True when `a` ranks ahead of `b`.
bool ranks_before(const Candidate& a, const Candidate& b) {
  if (a.key != b.key) return a.key > b.key;
  return a.order < b.order;
}

}  // namespace

std::vector<RankedOrdering> order_tokens(const BigramModel& model,
                                         std::vector<std::string> salad, OrderMode mode,
                                         std::size_t limit) {
  if (salad.empty()) throw ContractError("salad must contain at least one token");
  if (salad.size() > kMaxSaladSize) {
    throw SizeError("salad has " + std::to_string(salad.size()) + " tokens; at most " +
                    std::to_string(kMaxSaladSize) + " are searched exhaustively");
  }
  if (limit == 0) throw ContractError("limit must be >= 1");

  const std::size_t length = salad.size();
  const TokenTable table(model, std::move(salad));
  const std::size_t n = table.size();
  const bool strict = mode == OrderMode::Strict;

  auto worse_on_top = [](const Candidate& a, const Candidate& b) { return ranks_before(a, b); };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(worse_on_top)> best(
      worse_on_top);

  std::vector<int> remaining = table.multiplicity;
  std::vector<std::uint8_t> path;
  path.reserve(length);

  auto offer = [&](double score) {
    Candidate c{rank_key(score), score, path};
    if (best.size() < limit) {
      best.push(std::move(c));
    } else if (ranks_before(c, best.top())) {
      best.pop();
      best.push(std::move(c));
    }
  };

  auto dfs = [&](auto& self, std::size_t prev, double score) -> void {
    if (path.size() == length) {
      if (strict && !table.ok(prev, n)) return;
      offer(score + table.lp(prev, n));
      return;
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (remaining[t] == 0) continue;
      if (strict && !table.ok(prev, t)) continue;
      --remaining[t];
      path.push_back(static_cast<std::uint8_t>(t));
      self(self, t, score + table.lp(prev, t));
      path.pop_back();
      ++remaining[t];
    }
  };
  dfs(dfs, n, 0.0);

  std::vector<Candidate> ranked;
  ranked.reserve(best.size());
  while (!best.empty()) {
    ranked.push_back(best.top());
    best.pop();
  }
  std::sort(ranked.begin(), ranked.end(), ranks_before);

  std::vector<RankedOrdering> out;
  out.reserve(ranked.size());
  for (const Candidate& c : ranked) {
    RankedOrdering r;
    r.score = c.score;
    for (std::uint8_t idx : c.order) r.tokens.push_back(table.tokens[idx]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<std::string>> enumerate_sentences(const BigramModel& model,
                                                          std::vector<std::string> deck,
                                                          std::size_t min_len,
                                                          std::size_t max_len,
                                                          std::size_t limit) {
  if (deck.empty()) throw ContractError("deck must not be empty");
  if (min_len < 2) throw ContractError("min_len must be >= 2");
  if (max_len > kMaxChainLength) {
    throw ContractError("max_len must be <= " + std::to_string(kMaxChainLength));
  }
  if (min_len > max_len) throw ContractError("min_len must not exceed max_len");
  if (limit == 0) throw ContractError("limit must be >= 1");

  const TokenTable table(model, std::move(deck));
  const std::size_t n = table.size();
  std::vector<int> remaining = table.multiplicity;
  std::vector<std::size_t> path;
  std::vector<std::vector<std::string>> out;

  auto dfs = [&](auto& self, std::size_t prev) -> void {
    if (out.size() >= limit) return;
    if (path.size() >= min_len && table.ok(prev, n)) {
      std::vector<std::string> chain;
      chain.reserve(path.size());
      for (std::size_t idx : path) chain.push_back(table.tokens[idx]);
      out.push_back(std::move(chain));
      if (out.size() >= limit) return;
    }
    if (path.size() == max_len) return;
    for (std::size_t t = 0; t < n; ++t) {
      if (remaining[t] == 0 || !table.ok(prev, t)) continue;
      --remaining[t];
      path.push_back(t);
      self(self, t);
      path.pop_back();
      ++remaining[t];
      if (out.size() >= limit) return;
    }
  };
  dfs(dfs, n);
  return out;
}

}  // namespace lingua
