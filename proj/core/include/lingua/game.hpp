#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "lingua/bigram.hpp"
#include "lingua/corpus.hpp"
#include "lingua/deck.hpp"
#include "lingua/grammar.hpp"
#include "lingua/masking.hpp"
#include "lingua/materials.hpp"

namespace lingua {

enum class Phase { Bracelet, Grammar, Derivation, Revealed };

std::string_view to_string(Phase phase) noexcept;
std::optional<Phase> parse_phase(std::string_view name) noexcept;

// A card handed to participants: its id and the masked face they see.
struct ServedCard {
  std::string id;
  std::string mask;
  std::string surface;  // never serialized before reveal
  std::optional<int> pos;
};

// Everything the service needs for one (corpus, scheme) pair, computed once.
struct CorpusArtifacts {
  AnnotatedCorpus corpus;
  Lexicon lexicon;
  MaskedCorpus masked;
  BigramModel model;  // over masked surfaces
  RuleSet rules;
  std::vector<ServedCard> bracelet_deck;
  std::vector<ServedCard> grammar_deck;
  SheetSet sheets;
  std::vector<std::string> overlay;

  const ServedCard* bracelet_card(std::string_view id) const;
  const ServedCard* grammar_card(std::string_view id) const;
};

struct RegistryEntry {
  AnnotatedCorpus corpus;
  std::map<MaskKind, Lexicon> lexica;  // missing kinds are built with default schemes
  std::optional<std::vector<DeckEntry>> bracelet_deck;
  std::optional<std::vector<DeckEntry>> grammar_deck;
};

class CorpusRegistry {
 public:
  // Directory layout: <dir>/<id>/corpus.json, lexicon.ding.json,
  // lexicon.pseudoword.json, bracelet_deck.csv, grammar_deck.csv. Only
  // corpus.json is required.
  static CorpusRegistry load(const std::filesystem::path& dir, const SheetLayout& layout = {});
  static CorpusRegistry build(std::vector<RegistryEntry> entries, const SheetLayout& layout = {});

  const CorpusArtifacts* find(std::string_view corpus_id, MaskKind kind) const;
  std::vector<std::string> corpus_ids() const;

 private:
  std::map<std::pair<std::string, MaskKind>, std::shared_ptr<const CorpusArtifacts>> artifacts_;
};

struct Response {
  int status = 200;
  std::string body;
};

struct Request {
  std::string method;
  std::string path;
  std::string body;
  std::string facilitator_token;  // X-Facilitator-Token header, may be empty
};

struct ServiceOptions {
  std::optional<std::filesystem::path> session_dir;  // no persistence when absent
  std::string facilitator_token;                      // empty disables overrides
  std::function<std::string()> clock;                 // ISO-8601 timestamps; defaults to UTC now
  std::function<std::string()> id_source;             // defaults to 128 random bits in hex
};

// The HTTP+JSON game API, transport-agnostic. Sessions persisted under
// `session_dir` are replayed by the constructor.
class GameService {
 public:
  GameService(std::shared_ptr<const CorpusRegistry> registry, ServiceOptions options);
  ~GameService();

  GameService(const GameService&) = delete;
  GameService& operator=(const GameService&) = delete;

  Response handle(const Request& request);

  std::size_t session_count() const;
  std::vector<std::string> session_ids() const;

 private:
  struct Session;
  std::shared_ptr<Session> find_session(const std::string& id) const;
  Response create_session(const std::string& body);
  Response session_action(const std::string& id, std::string_view action, const Request& request);
  void replay(const std::filesystem::path& log);

  std::shared_ptr<const CorpusRegistry> registry_;
  ServiceOptions options_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace lingua
