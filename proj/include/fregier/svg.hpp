#pragma once

// Minimal SVG 1.1 emitter. Scene coordinates are mapped into a fixed
// 1000x700 viewBox with a 5% margin, y pointing up.

#include "fregier/conic.hpp"

#include <string>
#include <string_view>

namespace fregier {

class SvgCanvas {
 public:
  static constexpr double kWidth = 1000.0;
  static constexpr double kHeight = 700.0;
  static constexpr double kMargin = 0.05;

  /// Fit the axis-aligned box [lo, hi] into the view.
  SvgCanvas(const Vec2& lo, const Vec2& hi);
  /// Fit the bounding box of an ellipse into the view.
  explicit SvgCanvas(const EllipseAxes& frame);

  void ellipse(const EllipseAxes& e, std::string_view stroke, double width = 1.5);
  void circle(const Vec2& c, double r, std::string_view stroke, double width = 1.0);
  void segment(const Vec2& p, const Vec2& q, std::string_view stroke, double width = 0.6);
  void dot(const Vec2& p, std::string_view fill, std::string_view label = {});
  void caption(std::string_view text);

  Vec2 map(const Vec2& p) const;
  double scale() const { return scale_; }
  std::string str() const;

 private:
  double scale_ = 1.0;
  Vec2 offset_ = Vec2::Zero();
  std::string body_;
};

}  // namespace fregier
