#pragma once

// Projective-plane primitives: homogeneous points and lines, symmetric conic
// matrices (point-form and line-form), fitting, intersection, tangency and
// the Euclidean metrics of real ellipses.

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fregier {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

/// Singular-value ratio below which a matrix is treated as rank deficient.
inline constexpr double kRankTolerance = 1e-9;

/// Scale-normalized homogeneous vector: largest-magnitude coordinate is 1.
Vec3 normalize_homogeneous(const Vec3& v);

struct ProjPoint {
  Vec3 v;

  static ProjPoint from_cartesian(const Vec2& p) { return {Vec3(p.x(), p.y(), 1.0)}; }

  bool is_ideal(double tol = 1e-14) const;
  /// Throws GeometryError for points at infinity.
  Vec2 cartesian() const;
  ProjPoint normalized() const { return {normalize_homogeneous(v)}; }
};

struct ProjLine {
  Vec3 v;

  /// a*x + b*y + c = 0
  static ProjLine from_coefficients(double a, double b, double c) { return {Vec3(a, b, c)}; }

  bool passes_through(const ProjPoint& p, double tol) const;
  /// Euclidean distance from a finite point; the line must not be the line at infinity.
  double distance_to(const Vec2& p) const;
  ProjLine normalized() const { return {normalize_homogeneous(v)}; }
};

ProjLine join(const ProjPoint& p, const ProjPoint& q);
ProjPoint meet(const ProjLine& l, const ProjLine& m);

/// Scale-free distance between two projective rays: |a x b| / (|a| |b|).
double projective_distance(const Vec3& a, const Vec3& b);

enum class ConicForm { point, line };

enum class ConicClass {
  real_ellipse,
  imaginary_ellipse,
  hyperbola,
  parabola,
  point,          ///< single real point (pair of conjugate complex lines)
  line_pair,      ///< two real lines (or, in line-form, two real points)
  rank_deficient  ///< rank one or zero
};

std::string_view to_string(ConicClass c);

/// Symmetric 3x3 matrix of a conic, defined up to scale.
class ConicMatrix {
 public:
  ConicMatrix() = default;
  ConicMatrix(const Mat3& m, ConicForm form);

  /// A x^2 + B xy + C y^2 + D x + E y + F = 0
  static ConicMatrix from_coefficients(double A, double B, double C, double D, double E, double F);

  const Mat3& matrix() const { return m_; }
  ConicForm form() const { return form_; }

  double evaluate(const Vec3& x) const { return x.dot(m_ * x); }
  double frobenius() const { return m_.norm(); }
  /// Frobenius-normalized copy with a non-negative trace-free sign convention
  /// (largest-magnitude entry positive).
  ConicMatrix normalized() const;
  /// Rank from singular values with `kRankTolerance`.
  int rank() const;
  /// Point-form classification; a line-form conic is classified through its
  /// adjugate when full rank, otherwise directly (rank one = single point).
  ConicClass classify() const;

 private:
  Mat3 m_ = Mat3::Zero();
  ConicForm form_ = ConicForm::point;
};

/// Proportionality defect of two conic matrices: min over signs of the
/// distance between their Frobenius-normalized forms.
double proportionality_defect(const Mat3& a, const Mat3& b);

struct EllipseAxes {
  Vec2 center = Vec2::Zero();
  double major = 1.0;  ///< a1 >= minor
  double minor = 1.0;
  double tilt = 0.0;   ///< angle of the major axis in [0, pi)

  double area() const { return kPi * major * minor; }
  ConicMatrix to_conic() const;
  /// Point at parametric angle t: center + R(tilt) (major cos t, minor sin t).
  Vec2 point_at(double t) const;
  /// Coordinates in the ellipse's own frame (major axis along x).
  Vec2 to_local(const Vec2& p) const;
  Vec2 from_local(const Vec2& q) const;
  /// Parametric angle of a point (projected onto the ellipse along the local ray).
  double parameter_of(const Vec2& p) const;
  /// (x/a)^2 + (y/b)^2 - 1 in the local frame.
  double implicit_residual(const Vec2& p) const;
};

ConicMatrix conic_from_points(std::span<const ProjPoint> points);
ConicMatrix dual_conic_from_lines(std::span<const ProjLine> lines);
ConicMatrix adjugate(const ConicMatrix& c);

/// Throws GeometryError(invalid_argument) naming the classification when the
/// conic is not a real ellipse.
EllipseAxes ellipse_metrics(const ConicMatrix& c);

struct LineIntersection {
  std::vector<ProjPoint> points;  ///< 0, 1 (tangency) or 2
  bool tangent = false;
};

LineIntersection line_conic_intersection(const ConicMatrix& c, const ProjLine& line);

struct TangentsFromPoint {
  ProjLine polar;
  std::vector<ProjLine> tangents;   ///< 0 (inside), 1 (on the conic), 2 (outside)
  std::vector<ProjPoint> contacts;  ///< tangency points, parallel to `tangents`
  bool on_conic = false;
};

TangentsFromPoint tangent_lines_from_point(const ConicMatrix& c, const ProjPoint& p);

/// |l^T C* l| / (|l|^2 |C*|_F); zero iff l is tangent to the conic of C*.
double tangency_residual(const ConicMatrix& dual, const ProjLine& line);

/// Real intersection points of an ellipse with an arbitrary point-form conic.
/// Uses the rational parametrization of the ellipse, checks the excluded
/// parameter point separately and polishes each root with Newton steps.
/// Throws GeometryError(degeneracy) when the conic contains the whole ellipse.
std::vector<Vec2> ellipse_conic_intersection(const EllipseAxes& ellipse, const ConicMatrix& other);

/// Unsigned angle between two vectors in [0, pi].
double unsigned_angle(const Vec2& u, const Vec2& v);

/// Circle through three points as a point-form conic.
ConicMatrix circle_through(const Vec2& p, const Vec2& q, const Vec2& r);

}  // namespace fregier
