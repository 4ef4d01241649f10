#pragma once

// Algebraic frame of the isosceles billiard 3-orbit: billiard parameters
// (h, s, rho), the reference triangle ABC with A on the minor axis, trilinear
// <-> Cartesian conversion and the closed-form trilinear expressions for the
// Frégier envelope, its center locus and the 3-orbit caustic.

#include "fregier/conic.hpp"

#include <array>

namespace fregier {

struct TrilinearPoint {
  Vec3 v;  ///< alpha : beta : gamma
};

struct TrilinearLine {
  Vec3 v;  ///< l : m : n, the line l*alpha + m*beta + n*gamma = 0
};

/// Positive root in [0, 1) of (a/b)^2 = (1+h)(3-h) / ((1-h)(3+h)).
double solve_h(double a, double b);

struct BilliardFrame {
  double a = 1.0;  ///< outer ellipse semi-axes, a >= b
  double b = 1.0;
  double h = 0.0;
  double s = 0.0;    ///< semi-perimeter of ABC
  double rho = 0.5;  ///< (1 - h^2) / 2
  Vec2 A, B, C;
  double side_ab = 0.0;  ///< AB = AC
  double side_bc = 0.0;
  Mat3 cart_to_tri;  ///< rows: inward signed-distance functionals of BC, CA, AB
  Mat3 tri_to_cart;

  EllipseAxes ellipse() const { return {Vec2::Zero(), a, b, 0.0}; }

  TrilinearPoint to_trilinear(const Vec2& p) const;
  /// Homogeneous Cartesian image; may be ideal.
  ProjPoint to_cartesian(const TrilinearPoint& p) const;
  /// Throws GeometryError for ideal points.
  Vec2 to_cartesian_point(const TrilinearPoint& p) const;
  ProjLine to_cartesian(const TrilinearLine& l) const;
  TrilinearLine to_trilinear(const ProjLine& l) const;
  /// Conic given by a symmetric matrix in trilinear coordinates.
  ConicMatrix to_cartesian(const ConicMatrix& trilinear_conic) const;
};

/// Throws GeometryError(invalid_argument) when a < b.
BilliardFrame build_frame(double a, double b);

/// M(u) = u+1 : u(u+1) : -u on the billiard ellipse. Infinite u gives vertex B.
TrilinearPoint ellipse_point_tri(double u);

/// Squashed point (x(u), y(u)) on the circle of radius b (major axis scaled by b/a).
Vec2 circle_picture_point(double u, const BilliardFrame& frame);

struct TrilinearChordHits {
  TrilinearPoint first, second;
  bool tangent = false;
};

/// Intersection of the line 1 : m : n with the billiard ellipse, solved on the
/// parametrization M(u): m u^2 + (m + 1 - n) u + 1 = 0.
TrilinearChordHits line_ellipse_intersection_tri(double m, double n);

/// Closed-form M+- = -2mn : (m - n + 1 +- sqrt(D)) n : -(m - n - 1 +- sqrt(D)) m,
/// D = (m - n)^2 - 2(m + n) + 1. Used as a cross-check of the direct solve.
std::array<TrilinearPoint, 2> line_ellipse_intersection_formula(double m, double n);

/// w = sqrt(3 + h) sqrt(1 - h) cot(theta).
double w_parameter(double h, double theta);

/// The two tangent lines from M(u) to the Frégier ellipse of angle theta:
/// (k1 +- k2 u w) u : k3 +- k2 w : (k4 +- k2 (u + 1) w)(u + 1).
std::array<TrilinearLine, 2> tangent_lines_closed_form(double u, double theta, const BilliardFrame& frame);

/// Trilinear center K(u, theta) of the Frégier ellipse.
TrilinearPoint envelope_center_tri(double u, double theta, const BilliardFrame& frame);

/// k1 alpha^2 + k2 beta^2 + k3 gamma^2 + k4 beta gamma + k5 gamma alpha + k6 alpha beta = 0
struct TrilinearConicCoeffs {
  std::array<double, 6> k{};

  ConicMatrix matrix(ConicForm form = ConicForm::point) const;
};

/// Conic through all envelope centers K(u, theta) for fixed theta.
TrilinearConicCoeffs locus_conic_coeffs(double theta, const BilliardFrame& frame);

struct MandartCaustic {
  TrilinearConicCoeffs point_form;  ///< (h+1)^4 : (1-h)^2 : (1-h)^2 : -2(1-h)^2 : -2(1+h)^2(1-h) : -2(1+h)^2(1-h)
  TrilinearConicCoeffs line_form;   ///< (1+h)^2 beta gamma + (1-h) gamma alpha + (1-h) alpha beta = 0
};

MandartCaustic mandart_caustic(const BilliardFrame& frame);

struct CausticTangentParams {
  double mu = 0.0;
  double psi = 0.0;
  double u2 = 0.0;  ///< u2 + u3 = mu, u2 u3 = psi
  double u3 = 0.0;
};

/// Throws GeometryError(invalid_argument) at the poles u = 0, u = -1 and h = 1.
CausticTangentParams caustic_tangent_params(double u, const BilliardFrame& frame);

/// Line through E(u) and E(x): u x : 1 : (u + 1)(x + 1).
TrilinearLine chord_line_tri(double u, double x);

/// One step of the 3-orbit map: the caustic-tangent partner of `current`
/// other than `previous`.
double caustic_orbit_step(double previous, double current, const BilliardFrame& frame);

}  // namespace fregier
