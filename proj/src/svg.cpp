#include "fregier/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fregier {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

SvgCanvas::SvgCanvas(const Vec2& lo, const Vec2& hi) {
  const double w = std::max(hi.x() - lo.x(), 1e-12);
  const double h = std::max(hi.y() - lo.y(), 1e-12);
  const double uw = kWidth * (1 - 2 * kMargin), uh = kHeight * (1 - 2 * kMargin);
  scale_ = std::min(uw / w, uh / h);
  const Vec2 mid = 0.5 * (lo + hi);
  offset_ = Vec2(kWidth / 2 - scale_ * mid.x(), kHeight / 2 + scale_ * mid.y());
}

static Vec2 half_extent(const EllipseAxes& e) {
  const double c = std::cos(e.tilt), s = std::sin(e.tilt);
  return {std::hypot(e.major * c, e.minor * s), std::hypot(e.major * s, e.minor * c)};
}

SvgCanvas::SvgCanvas(const EllipseAxes& frame)
    : SvgCanvas(frame.center - half_extent(frame), frame.center + half_extent(frame)) {}

Vec2 SvgCanvas::map(const Vec2& p) const { return {offset_.x() + scale_ * p.x(), offset_.y() - scale_ * p.y()}; }

void SvgCanvas::ellipse(const EllipseAxes& e, std::string_view stroke, double width) {
  const Vec2 c = map(e.center);
  const double deg = -e.tilt * 180.0 / kPi;
  body_ += "  <ellipse cx=\"" + num(c.x()) + "\" cy=\"" + num(c.y()) + "\" rx=\"" + num(scale_ * e.major) +
           "\" ry=\"" + num(scale_ * e.minor) + "\" transform=\"rotate(" + num(deg) + " " + num(c.x()) + " " +
           num(c.y()) + ")\" fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) +
           "\"/>\n";
}

void SvgCanvas::circle(const Vec2& center, double r, std::string_view stroke, double width) {
  const Vec2 c = map(center);
  body_ += "  <circle cx=\"" + num(c.x()) + "\" cy=\"" + num(c.y()) + "\" r=\"" + num(scale_ * r) +
           "\" fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void SvgCanvas::segment(const Vec2& p, const Vec2& q, std::string_view stroke, double width) {
  const Vec2 a = map(p), b = map(q);
  body_ += "  <line x1=\"" + num(a.x()) + "\" y1=\"" + num(a.y()) + "\" x2=\"" + num(b.x()) + "\" y2=\"" +
           num(b.y()) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void SvgCanvas::dot(const Vec2& p, std::string_view fill, std::string_view label) {
  const Vec2 a = map(p);
  body_ += "  <circle cx=\"" + num(a.x()) + "\" cy=\"" + num(a.y()) + "\" r=\"4\" fill=\"" + std::string(fill) +
           "\"/>\n";
  if (!label.empty())
    body_ += "  <text x=\"" + num(a.x() + 6) + "\" y=\"" + num(a.y() - 6) +
             "\" font-family=\"sans-serif\" font-size=\"16\">" + escape(label) + "</text>\n";
}

void SvgCanvas::caption(std::string_view text) {
  body_ += "  <text x=\"10\" y=\"" + num(kHeight - 10) + "\" font-family=\"sans-serif\" font-size=\"14\">" +
           escape(text) + "</text>\n";
}

std::string SvgCanvas::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1000\" height=\"700\" "
         "viewBox=\"0 0 1000 700\">\n"
         "  <rect width=\"1000\" height=\"700\" fill=\"white\"/>\n" +
         body_ + "</svg>\n";
}

}  // namespace fregier
