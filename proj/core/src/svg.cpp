#include "svg.hpp"

namespace lingua::detail {

std::string mm(std::int64_t um) {
  std::string out;
  if (um < 0) {
    out.push_back('-');
    um = -um;
  }
  out += std::to_string(um / 1000);
  std::int64_t frac = um % 1000;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 3 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

SvgPage::SvgPage(std::int64_t width, std::int64_t height, bool opaque_background)
    : width_(width), height_(height), opaque_(opaque_background) {}

void SvgPage::text(std::int64_t x, std::int64_t y, std::int64_t size, std::string_view body,
                   std::string_view extra) {
  body_ += "<text x=\"" + mm(x) + "\" y=\"" + mm(y) + "\" font-size=\"" + mm(size) + "\"";
  if (!extra.empty()) {
    body_ += " ";
    body_ += extra;
  }
  body_ += ">" + xml_escape(body) + "</text>\n";
}

void SvgPage::line(std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2,
                   std::string_view stroke, std::int64_t width, std::string_view extra) {
  body_ += "<line x1=\"" + mm(x1) + "\" y1=\"" + mm(y1) + "\" x2=\"" + mm(x2) + "\" y2=\"" +
           mm(y2) + "\" stroke=\"" + xml_escape(stroke) + "\" stroke-width=\"" + mm(width) + "\"";
  if (!extra.empty()) {
    body_ += " ";
    body_ += extra;
  }
  body_ += "/>\n";
}

void SvgPage::rect(std::int64_t x, std::int64_t y, std::int64_t w, std::int64_t h,
                   std::string_view attributes) {
  body_ += "<rect x=\"" + mm(x) + "\" y=\"" + mm(y) + "\" width=\"" + mm(w) + "\" height=\"" +
           mm(h) + "\" ";
  body_ += attributes;
  body_ += "/>\n";
}

void SvgPage::circle(std::int64_t cx, std::int64_t cy, std::int64_t r,
                     std::string_view attributes) {
  body_ += "<circle cx=\"" + mm(cx) + "\" cy=\"" + mm(cy) + "\" r=\"" + mm(r) + "\" ";
  body_ += attributes;
  body_ += "/>\n";
}

void SvgPage::raw(std::string_view fragment) { body_ += fragment; }

std::string SvgPage::finish(std::string_view font_family) && {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
      mm(width_) + "mm\" height=\"" + mm(height_) + "mm\" viewBox=\"0 0 " + mm(width_) + " " +
      mm(height_) + "\">\n";
  if (opaque_) {
    out += "<rect x=\"0\" y=\"0\" width=\"" + mm(width_) + "\" height=\"" + mm(height_) +
           "\" fill=\"#ffffff\"/>\n";
  }
  out += "<g font-family=\"" + xml_escape(font_family) + "\">\n";
  out += body_;
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace lingua::detail
