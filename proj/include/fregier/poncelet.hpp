#pragma once

// Concentric circle/ellipse Poncelet configurations obtained by squashing an
// elliptic billiard along its major axis, their n-periodic orbits, the
// Frégier circles at each vertex and the sums that stay constant (or not)
// along the porism.

#include "fregier/conic.hpp"

#include <vector>

namespace fregier {

struct CirclePictureConfig {
  double radius = 1.0;     ///< outer circle R = b
  double caustic_a = 0.5;  ///< (b/a) sqrt(a^2 - lambda)
  double caustic_b = 0.5;  ///< sqrt(b^2 - lambda)
  double a = 1.0, b = 1.0, h = 0.0, rho = 0.5;
  double lambda = 0.75;  ///< confocal parameter of the billiard caustic

  ConicMatrix caustic() const;
  ConicMatrix caustic_dual() const;
};

/// Throws GeometryError(invalid_argument) unless lambda lies in (0, b^2).
CirclePictureConfig circle_picture(double a, double b, double lambda);

enum class Orientation { counterclockwise, clockwise };

/// Follows the caustic tangent through P that advances in the given orientation
/// and returns its second intersection with the circle.
Vec2 next_vertex(const CirclePictureConfig& cfg, const Vec2& p,
                 Orientation orientation = Orientation::counterclockwise);

/// Total angle swept by n counterclockwise steps from angle `start`, minus 2 pi p.
double closure_defect(const CirclePictureConfig& cfg, double start, int n, int p = 1);

/// Confocal parameter making the orbit n-periodic with winding p, by bisection.
/// Throws GeometryError(invalid_argument) when the bracket has no sign change and
/// GeometryError(numerical_failure) if the porism check at 8 phases fails.
double find_caustic_for_period(double a, double b, int n, int p = 1);

struct PonceletOrbit {
  int n = 0;
  std::vector<Vec2> vertices;
  std::vector<double> angles;  ///< internal angle P_{i-1} P_i P_{i+1}
  std::vector<double> radii;   ///< Frégier circle radius R |cos theta_i|
  double closure = 0.0;        ///< angular gap between P_{n+1} and P_1
};

/// Throws GeometryError(numerical_failure, "not n-periodic") when the closure
/// gap exceeds 1e-6.
PonceletOrbit orbit(const CirclePictureConfig& cfg, double start_angle, int n);

struct InvariantSums {
  double sum_cos2 = 0.0;
  double sum_area = 0.0;   ///< sum of pi r_i^2
  double sum_diag2 = 0.0;  ///< sum of |P_{i-1} P_{i+1}|^2
};

InvariantSums invariant_sums(const PonceletOrbit& orb);

/// 3/4 <= sum r_i^2 / R^2 <= 1; 3-orbits only.
bool radii_bound_check(const PonceletOrbit& orb, double radius);

/// Max tangency residual of the orbit edges against the caustic.
double edge_tangency_max(const CirclePictureConfig& cfg, const PonceletOrbit& orb);

struct SpreadStats {
  double min = 0.0, max = 0.0, mean = 0.0;
  double spread = 0.0;  ///< (max - min) / max(|mean|, 1)
};

SpreadStats spread_of(const std::vector<double>& values);

struct PhaseSample {
  double phase = 0.0;
  InvariantSums sums;
  double closure = 0.0;
};

struct InvariantReport {
  int n = 0;
  double lambda = 0.0;
  std::vector<PhaseSample> samples;
  SpreadStats cos2, area, diag2;
  bool has_prediction = false;  ///< n == 3
  double predicted_cos2 = 0.0;  ///< 1 - rho/2
  double predicted_area = 0.0;  ///< pi b^2 (1 - rho/2)
  double predicted_diag2 = 0.0; ///< 2 b^2 (rho + 4)
};

/// Evenly spaced start angles 2 pi k / phases.
std::vector<double> phase_angles(int phases);

InvariantReport summarize(const CirclePictureConfig& cfg, int n, std::vector<PhaseSample> samples);

}  // namespace fregier
