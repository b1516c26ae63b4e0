// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "game_script.hpp"
#include "lingua/bigram.hpp"
#include "lingua/grammar.hpp"
#include "lingua/masking.hpp"
#include "oracles.hpp"

namespace lingua {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Wall-clock budgets in seconds; 0 means no limit.
constexpr double kRoundTripBudget = 5.0;
constexpr double kLexiconBudget = 10.0;
constexpr double kBigramOracleBudget = 60.0;
constexpr double kSaladBudget = 1.0;
constexpr double kCompletenessBudget = 5.0;
constexpr double kSoundnessBudget = 30.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget;
  std::function<Outcome()> check;
};

Outcome round_trip() {
  const AnnotatedCorpus en = testing::load_fixture("snow_white_en.json");
  int exact = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (const MaskScheme& scheme : {MaskScheme::dings(seed), MaskScheme::pseudowords(seed)}) {
      const Lexicon lex = build_lexicon(en, scheme);
      if (reveal(mask_corpus(en, lex), lex) == en) ++exact;
    }
  }
  return {en.sentences.size() == 60 && exact == 40,
          std::to_string(exact) + "/40 exact reveals of " + std::to_string(en.sentences.size()) + " sentences"};
}

Outcome lexicon_injectivity() {
  SplitMix64 rng(1000);
  std::size_t collisions = 0, alien_hits = 0, words_total = 0;
  for (int v = 0; v < 1000; ++v) {
    const bool ding = v % 2 == 0;
    const MaskScheme scheme = ding ? MaskScheme::dings(rng.next()) : MaskScheme::pseudowords(rng.next());
    const std::size_t size = 1 + rng.below(200);
    std::set<std::string> vocab;
    // Half plain letter strings, half strings shaped like masks so that
    // alienness is actually exercised.
    while (vocab.size() < size) {
      std::string w;
      if (!ding && rng.below(2)) {
        w = candidate_mask(scheme, "probe" + std::to_string(rng.next()), 0, 0);
      } else {
        for (std::size_t k = 0, n = 1 + rng.below(8); k < n; ++k) w.push_back(static_cast<char>('a' + rng.below(26)));
      }
      vocab.insert(w);
    }
    AnnotatedCorpus c;
    c.id = "v" + std::to_string(v);
    c.pos_legend = {{0, "X"}};
    Sentence s;
    for (const std::string& w : vocab) {
      s.tokens.push_back({w, 0});
      if (s.tokens.size() == 10) {
        c.sentences.push_back(std::move(s));
        s = {};
      }
    }
    if (!s.tokens.empty()) c.sentences.push_back(std::move(s));
    const Lexicon lex = build_lexicon(c, scheme);
    std::set<std::string> range;
    for (const auto& [surface, mask] : lex.forward()) {
      range.insert(mask);
      if (vocab.contains(mask)) ++alien_hits;
    }
    collisions += lex.forward().size() - range.size();
    words_total += vocab.size();
  }
  return {collisions == 0 && alien_hits == 0,
          std::to_string(collisions) + " collisions, " + std::to_string(alien_hits) + " vocabulary hits over " +
              std::to_string(words_total) + " words"};
}

Outcome bigram_oracle() {
  SplitMix64 rng(4242);
  int equal = 0;
  std::size_t chains = 0;
  for (int i = 0; i < 100; ++i) {
    const AnnotatedCorpus c = testing::random_corpus(rng, 1 + rng.below(10), 2 + rng.below(11), 6);
    const BigramModel model = build_bigram_model(c);
    const auto surfaces = vocabulary(c).surfaces;
    const std::vector<std::string> vocab(surfaces.begin(), surfaces.end());
    std::vector<std::string> deck;
    for (std::size_t k = 0, n = 1 + rng.below(8); k < n; ++k) deck.push_back(vocab[rng.below(vocab.size())]);
    const std::size_t max_len = 2 + rng.below(5);
    const std::size_t min_len = 2 + rng.below(max_len - 1);
    const auto got = enumerate_sentences(model, deck, min_len, max_len, std::size_t{1} << 30);
    const auto expected = testing::brute_force_chains(testing::count_pairs(c.sentences), deck, min_len, max_len);
    if (got == expected) ++equal;
    chains += expected.size();
  }
  return {equal == 100, std::to_string(equal) + "/100 corpora equal, " + std::to_string(chains) + " chains"};
}

Outcome word_salad() {
  const AnnotatedCorpus plus = testing::load_fixture("mini_plus.json");
  const BigramModel model = build_bigram_model(plus);
  const std::vector<std::string> salad{"garden", "my", "is", "the", "in", "dog"};
  const std::vector<std::string> expected{"the", "dog", "is", "in", "my", "garden"};
  const auto ranked = order_tokens(model, salad, OrderMode::Smoothed, 1);
  const auto oracle = testing::all_orderings(testing::count_pairs(plus.sentences), salad);
  const bool ok = !ranked.empty() && ranked[0].tokens == expected && oracle.size() == 720 &&
                  oracle[0].tokens == expected;
  return {ok, "top: " + (ranked.empty() ? std::string("-") : join(ranked[0].tokens, " ")) + ", oracle over " +
                  std::to_string(oracle.size()) + " orderings"};
}

Outcome grammar_completeness() {
  const AnnotatedCorpus en = testing::load_fixture("snow_white_en.json");
  const RuleSet rules = extract_rules(en);
  std::size_t parsed = 0;
  for (const Sentence& s : en.sentences) parsed += parse_sequence(rules, s.pos_sequence()).parsed ? 1 : 0;
  return {parsed == en.sentences.size() && parsed == 60,
          std::to_string(parsed) + "/" + std::to_string(en.sentences.size()) + " parsed"};
}

Outcome grammar_soundness() {
  const AnnotatedCorpus en = testing::load_fixture("snow_white_en.json");
  const RuleSet rules = extract_rules(en);
  const auto pairs = vocabulary(en).pairs;
  const std::vector<std::pair<std::string, int>> pool(pairs.begin(), pairs.end());
  SplitMix64 rng(50);
  std::size_t outputs = 0, reparsed = 0;
  for (int d = 0; d < 50; ++d) {
    std::vector<DeckCard> deck;
    std::set<std::size_t> picked;
    for (std::size_t n = 6 + rng.below(15); picked.size() < n;) picked.insert(rng.below(pool.size()));
    for (std::size_t i : picked) deck.push_back({pool[i].first, pool[i].second, true});
    for (const DerivedSentence& s : derive_sentences(rules, deck, kDefaultDeriveDepth, 200)) {
      ++outputs;
      if (parse_sequence(rules, s.pos).parsed && s.tree.leaves() == s.pos) ++reparsed;
    }
  }
  return {outputs > 0 && reparsed == outputs,
          std::to_string(reparsed) + "/" + std::to_string(outputs) + " derivations re-parse"};
}

Outcome parser_oracle() {
  SplitMix64 rng(8);
  const auto sequences = testing::all_sequences(4, 6);
  std::size_t agree = 0, total = 0, derivable = 0, productive = 0;
  for (int g = 0; g < 50; ++g) {
    const RuleSet rules = testing::random_grammar(rng, 4 + rng.below(12));
    const auto language = testing::derivable_strings(rules, 6, 8);
    derivable += language.size();
    productive += language.empty() ? 0 : 1;
    for (const auto& seq : sequences) {
      ++total;
      if (parse_sequence(rules, seq).parsed == language.contains(seq)) ++agree;
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " sequences agree (" +
                              std::to_string(derivable) + " derivable, " + std::to_string(productive) + "/50 grammars non-empty)"};
}

std::map<std::string, std::string> tree_of(const fs::path& root) {
  std::map<std::string, std::string> out;
  if (!fs::exists(root)) return out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = read_file(e.path());
  }
  return out;
}

Outcome deterministic_emission() {
  const fs::path dir = fs::temp_directory_path() / ("lingua_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const std::string corpus = testing::fixture("snow_white_en.json").string();
  std::ostringstream out, err;
  int status = cli::run({"mask", "--corpus", corpus, "--scheme", "ding", "--seed", "11", "--lexicon-out",
                         (dir / "lexicon.json").string()},
                        out, err);
  for (const char* run : {"a", "b"}) {
    status |= cli::run({"emit", "all", "--corpus", corpus, "--lexicon", (dir / "lexicon.json").string(), "--out",
                        (dir / run).string()},
                       out, err);
  }
  const auto a = tree_of(dir / "a");
  const auto b = tree_of(dir / "b");
  std::size_t bytes = 0;
  for (const auto& [name, content] : a) bytes += content.size();
  fs::remove_all(dir);
  const bool ok = status == 0 && !a.empty() && a == b && a.contains("manifest.json") &&
                  a.contains("sheets/coordinates.json") && a.contains("cards/cards.json") &&
                  a.contains("dictionary.csv") && a.contains("overlay/p1.svg");
  return {ok, std::to_string(a.size()) + " files, " + std::to_string(bytes) + " bytes, identical: " +
                  (a == b ? "yes" : "no")};
}

Outcome service_no_leak() {
  std::vector<RegistryEntry> entries;
  for (const char* name : {"snow_white_en.json", "biancaneve_it.json"}) {
    entries.push_back({testing::load_fixture(name), {}, std::nullopt, std::nullopt});
  }
  const auto registry = std::make_shared<const CorpusRegistry>(CorpusRegistry::build(std::move(entries)));
  ServiceOptions options;
  options.facilitator_token = "token";

  std::size_t responses = 0, leaks = 0, script_errors = 0;
  for (const std::string corpus : {"en", "it"}) {
    for (MaskKind kind : {MaskKind::DingGlyphs, MaskKind::Pseudoword}) {
      GameService service(registry, options);
      testing::ScriptedClient c(service);
      const json view = c.post("/v1/sessions", {{"corpus_id", corpus}, {"scheme", to_string(kind)}}, 201);
      testing::play_full_game(c, view["id"], *registry->find(corpus, kind));
      for (const Response& r : c.transcript()) {
        ++responses;
        leaks += testing::leaked_words(r.body, *registry->find(corpus, kind)).size();
      }
      script_errors += c.errors().size();
    }
  }

  // Every (phase, target) pair with and without the token.
  const std::vector<std::string> phases{"bracelet", "grammar", "derivation", "revealed"};
  std::size_t backward = 0, backward_rejected = 0, forward = 0, forward_right = 0;
  for (std::size_t from = 0; from < phases.size(); ++from) {
    for (std::size_t to = 0; to < phases.size(); ++to) {
      for (bool token : {false, true}) {
        GameService service(registry, options);
        testing::ScriptedClient c(service);
        const std::string id = c.post("/v1/sessions", {{"corpus_id", "en"}}, 201)["id"];
        if (from > 0) c.post(testing::session_path(id) + "/phase", {{"to", phases[from]}}, 200, "token");
        const Response r = c.call("POST", testing::session_path(id) + "/phase", {{"to", phases[to]}},
                                  token ? "token" : "");
        const std::string phase_after = c.get(testing::session_path(id))["phase"];
        if (to <= from) {
          ++backward;
          if (r.status == 409 && phase_after == phases[from]) ++backward_rejected;
        } else {
          ++forward;
          const bool allowed = token || to == from + 1;
          if ((r.status == 200) == allowed && phase_after == phases[allowed ? to : from]) ++forward_right;
        }
        script_errors += c.errors().size();
      }
    }
  }
  const bool ok = leaks == 0 && script_errors == 0 && backward_rejected == backward && forward_right == forward;
  return {ok, std::to_string(leaks) + " leaks in " + std::to_string(responses) + " responses; " +
                  std::to_string(backward_rejected) + "/" + std::to_string(backward) + " backward rejected; " +
                  std::to_string(forward_right) + "/" + std::to_string(forward) + " forward transitions correct"};
}

}  // namespace
}  // namespace lingua

int main() {
  using namespace lingua;
  const std::vector<Criterion> criteria{
      {"round_trip_reveal", kRoundTripBudget, round_trip},
      {"lexicon_injectivity_alienness", kLexiconBudget, lexicon_injectivity},
      {"bigram_oracle_equivalence", kBigramOracleBudget, bigram_oracle},
      {"word_salad_ranking", kSaladBudget, word_salad},
      {"grammar_completeness", kCompletenessBudget, grammar_completeness},
      {"grammar_soundness", kSoundnessBudget, grammar_soundness},
      {"parser_oracle_equivalence", 0, parser_oracle},
      {"deterministic_emission", 0, deterministic_emission},
      {"service_no_leak_and_phase_matrix", 0, service_no_leak},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget == 0 || secs < c.budget;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    char timing[64];
    if (c.budget > 0) {
      std::snprintf(timing, sizeof timing, "%.3f s, limit %.0f s", secs, c.budget);
    } else {
      std::snprintf(timing, sizeof timing, "%.3f s", secs);
    }
    std::printf("%s %-34s %s [%s]\n", pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), timing);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed;
}
