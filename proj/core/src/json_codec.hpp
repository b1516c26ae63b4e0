#pragma once

// Shared JSON plumbing for the .cpp files; not part of the public surface.

#include <string>
#include <string_view>

#include <json.hpp>

#include "lingua/corpus.hpp"

namespace lingua::detail {

using nlohmann::json;

// Parses JSON, turning nlohmann's byte offsets into line/column ParseErrors.
json parse_json(std::string_view text);

// Sorted keys (nlohmann's default object is a std::map), 2-space indent, LF.
std::string canonical_dump(const json& value);

// Schema helpers: throw ParseError naming `context` when the shape is wrong.
const json& require(const json& object, std::string_view key,
                    std::string_view context);
std::string require_string(const json& object, std::string_view key,
                           std::string_view context);
long long require_integer(const json& object, std::string_view key,
                          std::string_view context);

json sentences_to_json(const std::vector<Sentence>& sentences);
std::vector<Sentence> sentences_from_json(const json& array, bool normalize);
json legend_to_json(const std::map<int, std::string>& legend);
std::map<int, std::string> legend_from_json(const json& object);
std::map<std::string, std::string> palette_from_json(const json& object);

}  // namespace lingua::detail
