#pragma once

// Append-only JSON-lines event log, one file per session.

#include <filesystem>
#include <fstream>
#include <vector>

#include "json_codec.hpp"

namespace lingua::detail {

class SessionLog {
 public:
  explicit SessionLog(std::filesystem::path path);

  // One compact line per event, flushed before returning. Throws IoError.
  void append(const json& event);

  const std::filesystem::path& path() const noexcept { return path_; }

  // Reads every complete event. A torn final line (crash mid-write) is
  // dropped; corruption anywhere else throws ParseError.
  static std::vector<json> read(const std::filesystem::path& path);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace lingua::detail
