#pragma once

// Small deterministic SVG writer. Lengths are micrometres printed as mm.

#include <cstdint>
#include <string>
#include <string_view>

namespace lingua::detail {

// 12345 -> "12.345", 297000 -> "297", -500 -> "-0.5".
std::string mm(std::int64_t micrometres);

std::string xml_escape(std::string_view text);

class SvgPage {
 public:
  SvgPage(std::int64_t width, std::int64_t height, bool opaque_background);

  void text(std::int64_t x, std::int64_t y, std::int64_t size, std::string_view body,
            std::string_view extra_attributes = {});
  void line(std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2,
            std::string_view stroke, std::int64_t width, std::string_view extra_attributes = {});
  void rect(std::int64_t x, std::int64_t y, std::int64_t w, std::int64_t h,
            std::string_view attributes);
  void circle(std::int64_t cx, std::int64_t cy, std::int64_t r, std::string_view attributes);
  void raw(std::string_view fragment);

  std::string finish(std::string_view font_family) &&;

 private:
  std::int64_t width_;
  std::int64_t height_;
  bool opaque_;
  std::string body_;
};

}  // namespace lingua::detail
