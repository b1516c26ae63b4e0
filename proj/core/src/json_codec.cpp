#include "json_codec.hpp"

#include "lingua/text.hpp"

namespace lingua::detail {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t upto = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string("malformed JSON (byte ") +
                         std::to_string(e.byte) + ")",
                     line, column);
  }
}

std::string canonical_dump(const json& value) {
  return value.dump(2, ' ', false, json::error_handler_t::strict) + "\n";
}

const json& require(const json& object, std::string_view key,
                    std::string_view context) {
  if (!object.is_object()) {
    throw ParseError(std::string(context) + ": expected an object", 0, 0);
  }
  auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(std::string(context) + ": missing key '" +
                         std::string(key) + "'",
                     0, 0);
  }
  return *it;
}

std::string require_string(const json& object, std::string_view key,
                           std::string_view context) {
  const json& v = require(object, key, context);
  if (!v.is_string()) {
    throw ParseError(std::string(context) + ": '" + std::string(key) +
                         "' must be a string",
                     0, 0);
  }
  return v.get<std::string>();
}

long long require_integer(const json& object, std::string_view key,
                          std::string_view context) {
  const json& v = require(object, key, context);
  if (!v.is_number_integer()) {
    throw ParseError(std::string(context) + ": '" + std::string(key) +
                         "' must be an integer",
                     0, 0);
  }
  return v.get<long long>();
}

json sentences_to_json(const std::vector<Sentence>& sentences) {
  json out = json::array();
  for (const Sentence& s : sentences) {
    json tokens = json::array();
    for (const Token& t : s.tokens) {
      tokens.push_back({{"surface", t.surface}, {"pos", t.pos}});
    }
    json phrases = json::array();
    for (const PhraseSpan& p : s.phrases) {
      phrases.push_back({{"start", p.start}, {"end", p.end}, {"label", p.label}});
    }
    out.push_back({{"tokens", std::move(tokens)}, {"phrases", std::move(phrases)}});
  }
  return out;
}

std::vector<Sentence> sentences_from_json(const json& array, bool normalize) {
  if (!array.is_array()) throw ParseError("'sentences' must be an array", 0, 0);
  std::vector<Sentence> out;
  out.reserve(array.size());
  for (std::size_t si = 0; si < array.size(); ++si) {
    const std::string ctx = "sentence " + std::to_string(si);
    const json& js = array[si];
    const json& tokens = require(js, "tokens", ctx);
    if (!tokens.is_array()) throw ParseError(ctx + ": 'tokens' must be an array", 0, 0);
    Sentence s;
    for (std::size_t ti = 0; ti < tokens.size(); ++ti) {
      const std::string tctx = ctx + " token " + std::to_string(ti);
      Token t;
      t.surface = require_string(tokens[ti], "surface", tctx);
      if (normalize) t.surface = normalize_surface(t.surface);
      const long long pos = require_integer(tokens[ti], "pos", tctx);
      if (pos < -1000 || pos > 1000) {
        throw ParseError(tctx + ": 'pos' is not a small integer", 0, 0);
      }
      t.pos = static_cast<int>(pos);
      s.tokens.push_back(std::move(t));
    }
    if (auto it = js.find("phrases"); it != js.end()) {
      if (!it->is_array()) throw ParseError(ctx + ": 'phrases' must be an array", 0, 0);
      for (std::size_t pi = 0; pi < it->size(); ++pi) {
        const std::string pctx = ctx + " phrase " + std::to_string(pi);
        const json& jp = (*it)[pi];
        const long long start = require_integer(jp, "start", pctx);
        const long long end = require_integer(jp, "end", pctx);
        if (start < 0 || end < 0) throw ParseError(pctx + ": negative index", 0, 0);
        s.phrases.push_back({static_cast<std::size_t>(start),
                             static_cast<std::size_t>(end),
                             require_string(jp, "label", pctx)});
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

json legend_to_json(const std::map<int, std::string>& legend) {
  json out = json::object();
  for (const auto& [digit, name] : legend) out[std::to_string(digit)] = name;
  return out;
}

std::map<int, std::string> legend_from_json(const json& object) {
  if (!object.is_object()) throw ParseError("'pos_legend' must be an object", 0, 0);
  std::map<int, std::string> out;
  for (const auto& [key, value] : object.items()) {
    int digit = 0;
    std::size_t used = 0;
    try {
      digit = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != key.size()) {
      throw ParseError("pos_legend key '" + key + "' is not an integer", 0, 0);
    }
    if (!value.is_string()) {
      throw ParseError("pos_legend value for '" + key + "' must be a string", 0, 0);
    }
    out[digit] = value.get<std::string>();
  }
  return out;
}

std::map<std::string, std::string> palette_from_json(const json& object) {
  if (!object.is_object()) throw ParseError("'palette' must be an object", 0, 0);
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : object.items()) {
    if (!value.is_string()) {
      throw ParseError("palette value for '" + key + "' must be a string", 0, 0);
    }
    out[key] = value.get<std::string>();
  }
  return out;
}

}  // namespace lingua::detail
