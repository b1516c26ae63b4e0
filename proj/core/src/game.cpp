#include "lingua/game.hpp"

#include <algorithm>
#include <ctime>
#include <mutex>
#include <random>

#include "json_codec.hpp"
#include "session_log.hpp"

namespace lingua {

using detail::json;

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::Bracelet: return "bracelet";
    case Phase::Grammar: return "grammar";
    case Phase::Derivation: return "derivation";
    case Phase::Revealed: return "revealed";
  }
  return "bracelet";
}

std::optional<Phase> parse_phase(std::string_view name) noexcept {
  for (Phase p : {Phase::Bracelet, Phase::Grammar, Phase::Derivation, Phase::Revealed}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

struct SubmittedRule {
  std::string lhs;
  std::vector<std::string> rhs;
  friend bool operator==(const SubmittedRule&, const SubmittedRule&) = default;
};

struct GameService::Session {
  std::mutex mutex;
  std::string id;
  std::string corpus_id;
  std::string team;
  MaskKind kind = MaskKind::Pseudoword;
  std::string created_at;
  Phase phase = Phase::Bracelet;
  const CorpusArtifacts* art = nullptr;
  std::vector<std::vector<std::string>> chains;
  std::vector<SubmittedRule> rules;
  std::vector<std::vector<std::string>> derivations;
  std::unique_ptr<detail::SessionLog> log;
};

namespace {

Response error(int status, std::string_view code, std::string_view message) {
  return {status, detail::canonical_dump({{"code", code}, {"message", message}})};
}

Response ok(const json& body, int status = 200) { return {status, detail::canonical_dump(body)}; }

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string random_id() {
  std::random_device rd;
  std::string out;
  static constexpr char kHex[] = "0123456789abcdef";
  for (int i = 0; i < 8; ++i) {
    std::uint32_t word = rd();
    for (int k = 0; k < 4; ++k) {
      out.push_back(kHex[(word >> 4) & 0xf]);
      out.push_back(kHex[word & 0xf]);
      word >>= 8;
    }
  }
  return out;
}

struct BadRequest {
  std::string code;
};

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw BadRequest{"malformed_json"};
  if (!j.is_object()) throw BadRequest{"body_not_object"};
  return j;
}

std::vector<std::string> card_list(const json& body) {
  auto it = body.find("cards");
  if (it == body.end() || !it->is_array()) throw BadRequest{"cards_missing"};
  if (it->empty()) throw BadRequest{"empty_submission"};
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const json& c : *it) {
    if (!c.is_string()) throw BadRequest{"card_id_not_string"};
    if (!seen.insert(c.get<std::string>()).second) throw BadRequest{"duplicate_card"};
    out.push_back(c.get<std::string>());
  }
  return out;
}

template <class Lookup>
std::vector<const ServedCard*> resolve_cards(const std::vector<std::string>& ids, Lookup lookup) {
  std::vector<const ServedCard*> cards;
  for (const std::string& id : ids) {
    const ServedCard* c = lookup(id);
    if (!c) throw BadRequest{"unknown_card"};
    cards.push_back(c);
  }
  return cards;
}

json masks_of(const std::vector<const ServedCard*>& cards) {
  json out = json::array();
  for (const ServedCard* c : cards) out.push_back(c->mask);
  return out;
}

std::string clear_text_of(const std::vector<const ServedCard*>& cards) {
  std::string out;
  for (const ServedCard* c : cards) {
    if (!out.empty()) out.push_back(' ');
    out += c->surface;
  }
  return out;
}

json served_deck(const std::vector<ServedCard>& deck, bool with_pos) {
  json out = json::array();
  for (const ServedCard& c : deck) {
    json card = {{"id", c.id}, {"face", c.mask}};
    if (with_pos) card["pos"] = *c.pos;
    out.push_back(std::move(card));
  }
  return out;
}

// Everything outside "reveal" must stay free of clear text.
json view_of(const CorpusArtifacts& art, const std::string& id, const std::string& corpus_id,
             const std::string& team, MaskKind kind, const std::string& created_at, Phase phase,
             const std::vector<std::vector<std::string>>& chains,
             const std::vector<SubmittedRule>& rules,
             const std::vector<std::vector<std::string>>& derivations) {
  auto bracelet = [&](const std::string& cid) { return art.bracelet_card(cid); };
  auto grammar = [&](const std::string& cid) { return art.grammar_card(cid); };

  json accepted_chains = json::array();
  json chain_translations = json::array();
  for (const auto& ids : chains) {
    const auto cards = resolve_cards(ids, bracelet);
    accepted_chains.push_back({{"cards", ids}, {"masks", masks_of(cards)}});
    chain_translations.push_back({{"cards", ids}, {"text", clear_text_of(cards)}});
  }
  json accepted_derivations = json::array();
  json derivation_translations = json::array();
  for (const auto& ids : derivations) {
    const auto cards = resolve_cards(ids, grammar);
    json pos = json::array();
    for (const ServedCard* c : cards) pos.push_back(*c->pos);
    accepted_derivations.push_back({{"cards", ids}, {"masks", masks_of(cards)}, {"pos", pos}});
    derivation_translations.push_back({{"cards", ids}, {"text", clear_text_of(cards)}});
  }
  json accepted_rules = json::array();
  for (const SubmittedRule& r : rules) accepted_rules.push_back({{"lhs", r.lhs}, {"rhs", r.rhs}});

  json view = {
      {"id", id},
      {"corpus_id", corpus_id},
      {"team", team},
      {"scheme", to_string(kind)},
      {"phase", to_string(phase)},
      {"created_at", created_at},
      {"masked_corpus", detail::parse_json(serialize_masked_corpus(art.masked))},
      {"sheets",
       {{"pages", art.sheets.pages},
        {"coordinates", detail::parse_json(serialize_manifest(art.sheets.manifest))}}},
      {"decks",
       {{"bracelet", served_deck(art.bracelet_deck, false)},
        {"grammar", served_deck(art.grammar_deck, true)}}},
      {"labels", art.rules.labels()},
      {"accepted_chains", std::move(accepted_chains)},
      {"accepted_rules", std::move(accepted_rules)},
      {"accepted_derivations", std::move(accepted_derivations)},
  };
  if (phase == Phase::Revealed) {
    view["reveal"] = {
        {"hidden_language", art.corpus.hidden_language},
        {"corpus", detail::parse_json(serialize_corpus(art.corpus))},
        {"overlay", art.overlay},
        {"dictionary", emit_dictionary(art.lexicon, art.corpus)},
        {"translations",
         {{"chains", std::move(chain_translations)},
          {"derivations", std::move(derivation_translations)}}},
    };
  }
  return view;
}

}  // namespace

GameService::GameService(std::shared_ptr<const CorpusRegistry> registry, ServiceOptions options)
    : registry_(std::move(registry)), options_(std::move(options)) {
  if (!registry_) throw ContractError("game service needs a corpus registry");
  if (!options_.clock) options_.clock = utc_now;
  if (!options_.id_source) options_.id_source = random_id;
  if (options_.session_dir && std::filesystem::is_directory(*options_.session_dir)) {
    std::vector<std::filesystem::path> logs;
    for (const auto& e : std::filesystem::directory_iterator(*options_.session_dir)) {
      if (e.is_regular_file() && e.path().extension() == ".jsonl") logs.push_back(e.path());
    }
    std::sort(logs.begin(), logs.end());
    for (const auto& log : logs) replay(log);
  }
}

GameService::~GameService() = default;

std::size_t GameService::session_count() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

std::vector<std::string> GameService::session_ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, s] : sessions_) ids.push_back(id);
  return ids;
}

std::shared_ptr<GameService::Session> GameService::find_session(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void GameService::replay(const std::filesystem::path& path) {
  const std::vector<json> events = detail::SessionLog::read(path);
  if (events.empty() || events.front().value("type", "") != "created") return;
  const json& created = events.front();
  auto s = std::make_shared<Session>();
  try {
    s->id = created.at("id").get<std::string>();
    s->corpus_id = created.at("corpus_id").get<std::string>();
    s->team = created.at("team").get<std::string>();
    s->kind = parse_mask_kind(created.at("scheme").get<std::string>());
    s->created_at = created.at("created_at").get<std::string>();
    s->art = registry_->find(s->corpus_id, s->kind);
    if (!s->art) return;  // corpus withdrawn from the registry
    for (std::size_t i = 1; i < events.size(); ++i) {
      const json& e = events[i];
      const std::string type = e.at("type").get<std::string>();
      if (type == "chain") {
        s->chains.push_back(e.at("cards").get<std::vector<std::string>>());
      } else if (type == "rule") {
        s->rules.push_back({e.at("lhs").get<std::string>(),
                            e.at("rhs").get<std::vector<std::string>>()});
      } else if (type == "derivation") {
        s->derivations.push_back(e.at("cards").get<std::vector<std::string>>());
      } else if (type == "phase") {
        auto p = parse_phase(e.at("to").get<std::string>());
        if (!p) throw ParseError("unknown phase in " + path.string(), i + 1, 0);
        s->phase = *p;
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what(), 0, 0);
  }
  s->log = std::make_unique<detail::SessionLog>(path);
  std::unique_lock lock(mutex_);
  sessions_[s->id] = std::move(s);
}

Response GameService::handle(const Request& request) {
  try {
    std::string_view path = request.path;
    if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
    constexpr std::string_view kPrefix = "/v1/sessions";
    if (path.substr(0, kPrefix.size()) != kPrefix) {
      return error(404, "route_not_found", "route_not_found");
    }
    std::string_view rest = path.substr(kPrefix.size());
    if (rest.empty() || rest == "/") {
      if (request.method != "POST") return error(404, "route_not_found", "route_not_found");
      return create_session(request.body);
    }
    if (rest.front() != '/') return error(404, "route_not_found", "route_not_found");
    rest.remove_prefix(1);
    const auto slash = rest.find('/');
    const std::string id(rest.substr(0, slash));
    const std::string_view action =
        slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);
    if (id.empty()) return error(404, "route_not_found", "route_not_found");
    return session_action(id, action, request);
  } catch (const BadRequest& e) {
    return error(400, e.code, e.code);
  }
}

Response GameService::create_session(const std::string& body) {
  const json req = parse_body(body);
  auto string_field = [&](const char* key) -> std::string {
    auto it = req.find(key);
    if (it == req.end() || !it->is_string()) throw BadRequest{std::string(key) + "_missing"};
    return it->get<std::string>();
  };
  const std::string corpus_id = string_field("corpus_id");
  MaskKind kind = MaskKind::Pseudoword;
  if (req.contains("scheme")) {
    try {
      kind = parse_mask_kind(string_field("scheme"));
    } catch (const ContractError&) {
      throw BadRequest{"unknown_scheme"};
    }
  }
  const std::string team = req.contains("team") ? string_field("team") : std::string("team");
  const CorpusArtifacts* art = registry_->find(corpus_id, kind);
  if (!art) return error(404, "unknown_corpus", "unknown_corpus");

  auto s = std::make_shared<Session>();
  s->corpus_id = corpus_id;
  s->team = team;
  s->kind = kind;
  s->created_at = options_.clock();
  s->art = art;

  std::unique_lock lock(mutex_);
  do {
    s->id = options_.id_source();
  } while (sessions_.contains(s->id));
  if (options_.session_dir) {
    s->log = std::make_unique<detail::SessionLog>(*options_.session_dir / (s->id + ".jsonl"));
    s->log->append({{"type", "created"},
                    {"id", s->id},
                    {"corpus_id", s->corpus_id},
                    {"team", s->team},
                    {"scheme", to_string(kind)},
                    {"created_at", s->created_at}});
  }
  sessions_[s->id] = s;
  lock.unlock();

  std::lock_guard guard(s->mutex);
  return ok(view_of(*art, s->id, s->corpus_id, s->team, s->kind, s->created_at, s->phase,
                    s->chains, s->rules, s->derivations),
            201);
}

Response GameService::session_action(const std::string& id, std::string_view action,
                                     const Request& request) {
  const std::shared_ptr<Session> s = find_session(id);
  if (!s) return error(404, "unknown_session", "unknown_session");
  std::lock_guard guard(s->mutex);
  const CorpusArtifacts& art = *s->art;
  auto view = [&] {
    return ok(view_of(art, s->id, s->corpus_id, s->team, s->kind, s->created_at, s->phase,
                      s->chains, s->rules, s->derivations));
  };
  auto record = [&](const json& event) {
    if (s->log) s->log->append(event);
  };
  auto move_result = [&](bool accepted, json detail) {
    return ok({{"accepted", accepted}, {"detail", std::move(detail)}, {"phase", to_string(s->phase)}});
  };
  const bool facilitator =
      !options_.facilitator_token.empty() && request.facilitator_token == options_.facilitator_token;

  if (action.empty()) {
    if (request.method != "GET") return error(404, "route_not_found", "route_not_found");
    return view();
  }
  if (request.method != "POST") return error(404, "route_not_found", "route_not_found");

  if (action == "chains") {
    const json body = parse_body(request.body);
    if (s->phase != Phase::Bracelet) return error(409, "wrong_phase", "wrong_phase");
    const std::vector<std::string> ids = card_list(body);
    if (ids.size() > kMaxChainLength) throw BadRequest{"chain_too_long"};
    const auto cards =
        resolve_cards(ids, [&](const std::string& cid) { return art.bracelet_card(cid); });
    std::vector<std::string> masks;
    for (const ServedCard* c : cards) masks.push_back(c->mask);
    const ChainVerdict v = validate_chain(art.model, masks, true);
    json failure = nullptr;
    if (v.first_failure) {
      const int pos = v.first_failure->position;
      auto card_at = [&](int index) -> json {
        if (index < 0 || index >= static_cast<int>(ids.size())) return nullptr;
        return ids[static_cast<std::size_t>(index)];
      };
      failure = {{"position", pos},
                 {"left", v.first_failure->left},
                 {"right", v.first_failure->right},
                 {"left_card", card_at(pos)},
                 {"right_card", card_at(pos + 1)}};
    }
    if (v.valid && std::find(s->chains.begin(), s->chains.end(), ids) == s->chains.end()) {
      s->chains.push_back(ids);
      record({{"type", "chain"}, {"cards", ids}});
    }
    return move_result(v.valid, {{"kind", "chain"},
                                 {"valid", v.valid},
                                 {"failure", std::move(failure)},
                                 {"score", v.score}});
  }

  if (action == "rules") {
    const json body = parse_body(request.body);
    if (s->phase != Phase::Grammar) return error(409, "wrong_phase", "wrong_phase");
    auto lhs_it = body.find("lhs");
    auto rhs_it = body.find("rhs");
    if (lhs_it == body.end() || !lhs_it->is_string()) throw BadRequest{"lhs_missing"};
    if (rhs_it == body.end() || !rhs_it->is_array() || rhs_it->empty()) {
      throw BadRequest{"rhs_missing"};
    }
    SubmittedRule submitted{lhs_it->get<std::string>(), {}};
    auto symbol = [](const std::string& name) -> std::optional<Symbol> {
      try {
        return Symbol::parse(name);
      } catch (const ContractError&) {
        return std::nullopt;
      }
    };
    std::optional<Symbol> lhs = symbol(submitted.lhs);
    if (!lhs || lhs->is_pos()) throw BadRequest{"malformed_rule"};
    std::vector<Symbol> rhs;
    std::string verdict;
    if (!lhs->is_start() && !art.rules.labels().contains(submitted.lhs)) verdict = "unknown_lhs";
    for (const json& item : *rhs_it) {
      if (!item.is_string()) throw BadRequest{"malformed_rule"};
      const std::string name = item.get<std::string>();
      std::optional<Symbol> sym = symbol(name);
      if (!sym || sym->is_start()) throw BadRequest{"malformed_rule"};
      if (!sym->is_pos() && !art.rules.labels().contains(name) && verdict.empty()) {
        verdict = "unknown_label";
      }
      submitted.rhs.push_back(name);
      rhs.push_back(*sym);
    }
    bool accepted = false;
    if (verdict.empty()) {
      const RuleCheck check = check_rule(art.rules, *lhs, rhs);
      accepted = check.accepted;
      verdict = std::string(to_string(check.verdict));
    }
    if (accepted && std::find(s->rules.begin(), s->rules.end(), submitted) == s->rules.end()) {
      s->rules.push_back(submitted);
      record({{"type", "rule"}, {"lhs", submitted.lhs}, {"rhs", submitted.rhs}});
    }
    return move_result(accepted, {{"kind", "rule"}, {"verdict", verdict}});
  }

  if (action == "derivations") {
    const json body = parse_body(request.body);
    if (s->phase != Phase::Derivation) return error(409, "wrong_phase", "wrong_phase");
    const std::vector<std::string> ids = card_list(body);
    if (ids.size() > kMaxParseLength) throw BadRequest{"derivation_too_long"};
    const auto cards =
        resolve_cards(ids, [&](const std::string& cid) { return art.grammar_card(cid); });
    std::vector<int> pos;
    for (const ServedCard* c : cards) pos.push_back(*c->pos);
    const ParseResult parse = parse_sequence(art.rules, pos);
    if (parse.parsed &&
        std::find(s->derivations.begin(), s->derivations.end(), ids) == s->derivations.end()) {
      s->derivations.push_back(ids);
      record({{"type", "derivation"}, {"cards", ids}});
    }
    return move_result(parse.parsed,
                       {{"kind", "derivation"},
                        {"pos", pos},
                        {"parsed", parse.parsed},
                        {"longest_prefix", parse.longest_prefix},
                        {"tree", parse.parsed ? json(parse.trees.front().bracketed()) : json(nullptr)}});
  }

  if (action == "phase") {
    const json body = parse_body(request.body);
    if (s->phase == Phase::Revealed) return error(409, "backward_transition", "backward_transition");
    Phase target = static_cast<Phase>(static_cast<int>(s->phase) + 1);
    if (auto it = body.find("to"); it != body.end()) {
      if (!it->is_string()) throw BadRequest{"unknown_phase"};
      auto p = parse_phase(it->get<std::string>());
      if (!p) throw BadRequest{"unknown_phase"};
      target = *p;
    }
    if (target <= s->phase) return error(409, "backward_transition", "backward_transition");
    if (static_cast<int>(target) > static_cast<int>(s->phase) + 1 && !facilitator) {
      return error(409, "skip_requires_facilitator", "skip_requires_facilitator");
    }
    s->phase = target;
    record({{"type", "phase"}, {"to", to_string(target)}});
    return view();
  }

  if (action == "reveal") {
    parse_body(request.body);
    if (s->phase == Phase::Revealed) return view();
    if (s->phase != Phase::Derivation && !facilitator) {
      return error(409, "reveal_not_allowed", "reveal_not_allowed");
    }
    s->phase = Phase::Revealed;
    record({{"type", "phase"}, {"to", to_string(Phase::Revealed)}});
    return view();
  }

  return error(404, "route_not_found", "route_not_found");
}

}  // namespace lingua
