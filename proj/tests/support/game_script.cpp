#include "game_script.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "lingua/text.hpp"

namespace lingua::testing {

using nlohmann::json;

Response ScriptedClient::call(const std::string& method, const std::string& path, const json& body,
                              const std::string& token) {
  Response r = service_.handle({method, path, body.is_null() ? std::string() : body.dump(), token});
  transcript_.push_back(r);
  return r;
}

json ScriptedClient::post(const std::string& path, const json& body, int expected, const std::string& token) {
  const Response r = call("POST", path, body, token);
  if (r.status != expected) {
    errors_.push_back(path + " " + body.dump() + " -> " + std::to_string(r.status) + " " + r.body);
  }
  return json::parse(r.body);
}

json ScriptedClient::get(const std::string& path) {
  const Response r = call("GET", path);
  if (r.status != 200) errors_.push_back(path + " -> " + std::to_string(r.status));
  return json::parse(r.body);
}

std::string session_path(const std::string& id) { return "/v1/sessions/" + id; }

std::optional<std::vector<std::string>> card_ids_for(const std::vector<ServedCard>& deck,
                                                     const Sentence& sentence, bool match_pos) {
  std::vector<std::string> ids;
  std::set<std::string> used;
  for (const Token& t : sentence.tokens) {
    auto it = std::find_if(deck.begin(), deck.end(), [&](const ServedCard& c) {
      return c.surface == t.surface && (!match_pos || c.pos == t.pos);
    });
    if (it == deck.end() || !used.insert(it->id).second) return std::nullopt;
    ids.push_back(it->id);
  }
  return ids;
}

void play_full_game(ScriptedClient& c, const std::string& id, const CorpusArtifacts& art) {
  const std::string base = session_path(id);
  for (const Sentence& s : art.corpus.sentences) {
    if (s.tokens.size() > kMaxChainLength) continue;
    if (auto ids = card_ids_for(art.bracelet_deck, s, false)) {
      c.post(base + "/chains", {{"cards", *ids}}, 200);
      std::vector<std::string> rev(ids->rbegin(), ids->rend());
      c.post(base + "/chains", {{"cards", rev}}, 200);
    }
  }
  c.post(base + "/chains", {{"cards", {"nope"}}}, 400);
  c.post(base + "/phase", {{"to", "grammar"}}, 200);
  for (const Rule& r : art.rules.rules()) {
    json rhs = json::array();
    for (const Symbol& s : r.rhs) rhs.push_back(s.name());
    c.post(base + "/rules", {{"lhs", r.lhs.name()}, {"rhs", rhs}}, 200);
  }
  c.post(base + "/rules", {{"lhs", "NP"}, {"rhs", {"9", "9"}}}, 200);
  c.post(base + "/phase", {{"to", "derivation"}}, 200);
  for (const Sentence& s : art.corpus.sentences) {
    if (s.tokens.size() > kMaxParseLength) continue;
    if (auto ids = card_ids_for(art.grammar_deck, s, true)) c.post(base + "/derivations", {{"cards", *ids}}, 200);
  }
  c.post(base + "/derivations", {{"cards", {art.grammar_deck.front().id}}}, 200);
  c.get(base);
}

namespace {

// Word-like runs: ASCII alphanumerics, apostrophes, underscores and any
// non-ASCII byte.
std::set<std::string> word_tokens(const std::string& text) {
  std::set<std::string> out;
  std::string cur;
  for (unsigned char ch : text) {
    if (std::isalnum(ch) || ch == '_' || ch == '\'' || ch >= 0x80) {
      cur.push_back(static_cast<char>(ch));
    } else if (!cur.empty()) {
      out.insert(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.insert(cur);
  return out;
}

}  // namespace

std::vector<std::string> leaked_words(const std::string& body, const CorpusArtifacts& art) {
  // Scan decoded keys and string values, not the escaped JSON text.
  std::string decoded;
  std::function<void(const json&)> collect = [&](const json& j) {
    if (j.is_string()) decoded += j.get<std::string>() + "\n";
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) {
        decoded += k + "\n";
        collect(v);
      }
    }
    if (j.is_array()) {
      for (const json& v : j) collect(v);
    }
  };
  collect(json::parse(body));
  const std::set<std::string> tokens = word_tokens(decoded);
  std::set<std::string> found;
  for (const auto& [surface, mask] : art.lexicon.forward()) {
    if (tokens.contains(surface)) found.insert(surface);
    for (const std::string& piece : split(surface, '\'')) {
      if (piece.size() > 1 && tokens.contains(piece)) found.insert(piece);
    }
  }
  if (decoded.find(art.corpus.hidden_language) != std::string::npos) found.insert(art.corpus.hidden_language);
  return {found.begin(), found.end()};
}

}  // namespace lingua::testing
