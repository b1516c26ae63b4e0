#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lingua/corpus.hpp"

namespace lingua {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";

// Largest salad order_tokens will search exhaustively (10! orderings).
inline constexpr std::size_t kMaxSaladSize = 10;
inline constexpr std::size_t kMaxChainLength = 12;

using BigramCounts = std::map<std::pair<std::string, std::string>, std::uint64_t>;

// Boundary-aware adjacency counts. Immutable once built.
class BigramModel {
 public:
  BigramModel() = default;

  // Counts must be consistent: every surface with an outgoing pair, one
  // (BOS, w) per sentence start and one (w, EOS) per sentence end. Throws
  // ContractError otherwise.
  static BigramModel from_counts(BigramCounts counts);

  std::uint64_t count(std::string_view left, std::string_view right) const;
  std::uint64_t unigram(std::string_view surface) const;
  // Total count of pairs whose left side is `left` (BOS included).
  std::uint64_t outgoing(std::string_view left) const;

  const BigramCounts& counts() const noexcept { return counts_; }
  const std::map<std::string, std::uint64_t, std::less<>>& unigram_counts() const noexcept {
    return unigrams_;
  }
  std::size_t sentence_count() const noexcept { return outgoing(kBos); }

  // Add-one smoothed log P(right | left); the event space is the surface
  // vocabulary plus EOS.
  double log_prob(std::string_view left, std::string_view right) const;
  std::size_t smoothing_classes() const noexcept { return unigrams_.size() + 1; }

  friend bool operator==(const BigramModel& a, const BigramModel& b) {
    return a.counts_ == b.counts_;
  }

 private:
  BigramCounts counts_;
  std::map<std::string, std::uint64_t, std::less<>> unigrams_;
  std::map<std::string, std::uint64_t, std::less<>> outgoing_;
};

BigramModel build_bigram_model(std::span<const Sentence> sentences);
BigramModel build_bigram_model(const AnnotatedCorpus& corpus);

std::string serialize_model(const BigramModel& model);
BigramModel parse_model(std::string_view document);

struct PairFailure {
  // Chain index of the left element; -1 for the (BOS, first) pair.
  int position = 0;
  std::string left;
  std::string right;

  friend bool operator==(const PairFailure&, const PairFailure&) = default;
};

struct ChainVerdict {
  bool valid = false;
  std::optional<PairFailure> first_failure;
  double score = 0.0;  // sum of smoothed log-probabilities of checked pairs
};

ChainVerdict validate_chain(const BigramModel& model, std::span<const std::string> chain,
                            bool require_boundaries);

enum class OrderMode { Strict, Smoothed };

struct RankedOrdering {
  std::vector<std::string> tokens;
  double score = 0.0;
};

// Best `limit` distinct orderings of the salad, highest score first, ties
// broken lexicographically. Strict mode keeps only fully attested chains
// (boundaries included).
std::vector<RankedOrdering> order_tokens(const BigramModel& model,
                                         std::vector<std::string> salad, OrderMode mode,
                                         std::size_t limit);

// Depth-first, lexicographic enumeration of boundary-valid chains built from
// deck cards (each card at most once). Stops after `limit` chains.
std::vector<std::vector<std::string>> enumerate_sentences(const BigramModel& model,
                                                          std::vector<std::string> deck,
                                                          std::size_t min_len,
                                                          std::size_t max_len,
                                                          std::size_t limit);

}  // namespace lingua
