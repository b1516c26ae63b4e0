#include "session_log.hpp"

#include "lingua/error.hpp"
#include "lingua/text.hpp"

namespace lingua::detail {

SessionLog::SessionLog(std::filesystem::path path) : path_(std::move(path)) {
  std::error_code ec;
  std::filesystem::create_directories(path_.parent_path(), ec);
  // Cut a torn tail so the next event starts on a fresh line.
  if (std::filesystem::exists(path_)) {
    const std::string text = read_file(path_);
    const std::size_t keep = text.rfind('\n') == std::string::npos ? 0 : text.rfind('\n') + 1;
    if (keep != text.size()) std::filesystem::resize_file(path_, keep, ec);
    if (ec) throw IoError("cannot trim session log " + path_.string());
  }
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw IoError("cannot open session log " + path_.string());
}

void SessionLog::append(const json& event) {
  out_ << event.dump() << '\n';
  out_.flush();
  if (!out_) throw IoError("cannot append to session log " + path_.string());
}

std::vector<json> SessionLog::read(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<json> events;
  std::size_t begin = 0;
  std::size_t line = 1;
  while (begin < text.size()) {
    const std::size_t end = text.find('\n', begin);
    if (end == std::string::npos) break;  // torn tail
    const std::string_view row(text.data() + begin, end - begin);
    if (!row.empty()) {
      try {
        events.push_back(json::parse(row));
      } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), line, e.byte);
      }
    }
    begin = end + 1;
    ++line;
  }
  return events;
}

}  // namespace lingua::detail
