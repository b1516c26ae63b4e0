#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lingua {

// Decodes UTF-8 into code points. Throws ParseError on ill-formed input.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view code_points);
void utf8_append(std::string& out, char32_t code_point);

// Number of code points in a UTF-8 string.
std::size_t utf8_length(std::string_view text);

// Lowercases ASCII and Latin-1 capitals (U+00C0..U+00DE except U+00D7).
std::string normalize_surface(std::string_view surface);

// True when `surface` is non-empty and made of [a-z], U+00E0..U+00FF, or '.
bool is_valid_surface(std::string_view surface);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Minimal RFC 4180 reader: quoted fields, doubled quotes, LF or CRLF rows.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_field(std::string_view value);

std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::vector<std::string> split(std::string_view text, char sep);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

// SplitMix64 finaliser and stream. Stable across platforms, unlike the
// standard distributions.
std::uint64_t mix64(std::uint64_t x) noexcept;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}
  std::uint64_t next() noexcept;
  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace lingua
