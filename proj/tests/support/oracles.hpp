#pragma once

// Reference implementations used to check the library. They work from the
// corpus text directly and share no code with the engines under test.

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lingua/corpus.hpp"
#include "lingua/grammar.hpp"
#include "lingua/text.hpp"

namespace lingua::testing {

std::filesystem::path fixture(const std::string& name);
AnnotatedCorpus load_fixture(const std::string& name);

// Adjacency counts with "<s>"/"</s>" boundaries, counted from scratch.
struct PairCounts {
  std::map<std::pair<std::string, std::string>, std::uint64_t> pairs;
  std::map<std::string, std::uint64_t> outgoing;
  std::set<std::string> vocabulary;
};
PairCounts count_pairs(const std::vector<Sentence>& sentences);

bool attested(const PairCounts& counts, const std::vector<std::string>& chain, bool boundaries);
double smoothed_score(const PairCounts& counts, const std::vector<std::string>& chain);

// Every distinct ordering of `salad`, with its score, best first; ties by
// lexicographic token order.
struct ScoredOrdering {
  std::vector<std::string> tokens;
  double score;
};
std::vector<ScoredOrdering> all_orderings(const PairCounts& counts, std::vector<std::string> salad);

// All distinct surface sequences of length [min_len, max_len] drawn from
// distinct deck positions that are attested with boundaries, sorted.
std::vector<std::vector<std::string>> brute_force_chains(const PairCounts& counts,
                                                         const std::vector<std::string>& deck,
                                                         std::size_t min_len, std::size_t max_len);

// Terminal strings of length <= max_len derivable from S by trees of height
// <= max_height (bottom-up over heights).
std::set<std::vector<int>> derivable_strings(const RuleSet& rules, std::size_t max_len,
                                             std::size_t max_height);

// Random well-formed corpus: sentences of 1..max_len tokens over a
// vocabulary of `vocab_size` words, POS in [0, pos_count), nested spans.
AnnotatedCorpus random_corpus(SplitMix64& rng, std::size_t sentences, std::size_t vocab_size,
                              std::size_t max_len, int pos_count = 10);

// Random flat grammar over 1..3 of the labels A..E (all five are known): every rhs is a single POS digit or
// has at least two symbols; only S may have a unit rule to a label.
RuleSet random_grammar(SplitMix64& rng, std::size_t rule_count);

// Every sequence over digits [0, digits) of length 1..max_len.
std::vector<std::vector<int>> all_sequences(int digits, std::size_t max_len);

}  // namespace lingua::testing
