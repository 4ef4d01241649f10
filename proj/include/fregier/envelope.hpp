#pragma once

// Chords NL of an ellipse seen from a fixed point M on it under a constant
// angle theta, their envelope (the Frégier ellipse E'), the right-angle limit
// (Frégier point) and the angle/area/orthoptic properties of E'.

#include "fregier/conic.hpp"

#include <optional>
#include <vector>

namespace fregier {

struct Chord {
  Vec2 n;  ///< N = E(t)
  Vec2 l;  ///< L, second intersection of the ray from M at +theta from MN
  ProjLine line;
};

/// Throws GeometryError(degeneracy, "degenerate sample") when N or L falls on M.
Chord chord_at(const EllipseAxes& e, const Vec2& m, double theta, double t);

/// Directions of MN whose +theta rotation still enters the ellipse, sampled at
/// `count` midpoints of the open range. Returned as parametric angles t of N.
std::vector<double> chord_parameters(const EllipseAxes& e, const Vec2& m, double theta, int count);

enum class EnvelopeKind { ellipse, point, degenerate };

std::string_view to_string(EnvelopeKind k);

struct EnvelopeResult {
  ConicMatrix dual;  ///< line-form conic of the chord family
  EnvelopeKind kind = EnvelopeKind::degenerate;
  Vec2 center = Vec2::Zero();  ///< K; the common point when kind == point
  EllipseAxes axes;            ///< zero axes when kind == point
  double area = 0.0;
  double fit_residual_max = 0.0;       ///< over the chords used for fitting
  double holdout_residual_max = 0.0;   ///< over held-out chords
  double holdout_residual_mean = 0.0;
  int chords_fitted = 0;
  int chords_held_out = 0;
};

inline constexpr int kDefaultEnvelopeSamples = 48;

/// Every fourth sample is held out for validation.
EnvelopeResult fit_envelope(const EllipseAxes& e, const Vec2& m, double theta,
                            int samples = kDefaultEnvelopeSamples);

/// Least-squares common point of 16 right-angle chords.
Vec2 fregier_point(const EllipseAxes& e, const Vec2& m);

/// k^2 = rho^3 (rho+4)^3 cos^2 theta / ((rho+1)^2 + (2 rho - 1) cos^2 theta)^3
double area_ratio_sq(double rho, double theta);

/// Angle at M subtended by E' (the sector containing E').
double tangent_angle(const EnvelopeResult& env, const Vec2& m);

struct LocusReport {
  std::vector<Vec2> centers;     ///< K(M) at the sampled M, in sampling order
  std::vector<double> m_params;  ///< parametric angles of the sampled M
  std::optional<ConicMatrix> conic;  ///< absent for a point locus
  std::optional<EllipseAxes> axes;   ///< present when the fitted locus is a real ellipse
  Vec2 center = Vec2::Zero();
  bool point_locus = false;    ///< all centers coincide
  bool fregier_locus = false;  ///< theta at the right angle
  double center_offset = 0.0;  ///< |locus center - ellipse center|
};

LocusReport center_locus(const EllipseAxes& e, double theta, int num_m = 12);

/// Points M on the ellipse seeing the chord NL under angle theta, oriented as in
/// chord_at (L - M is N - M turned counterclockwise by theta); at most two.
/// The unoriented problem is the union with the call for (L, N).
/// Throws GeometryError(degeneracy, "infinite solutions") when the inscribed-angle
/// circle coincides with the ellipse.
std::vector<Vec2> reverse_problem(const EllipseAxes& e, const Vec2& n, const Vec2& l, double theta);

struct OrthopticCheck {
  bool on_circle = false;
  double residual = 0.0;  ///< |MK|^2 - (a1^2 + b1^2)
};

/// Tolerance 1e-8 * (minor semi-axis of e)^2.
OrthopticCheck orthoptic_check(const EllipseAxes& e, const EnvelopeResult& env, const Vec2& m);

/// (a1, b1) from area = pi a1 b1 and d^2 = a1^2 + b1^2.
std::pair<double, double> axes_from_area_and_KM(double area, double d);

struct InscribedCheck {
  double residual = 0.0;  ///< tangency residual of line T1T2 against E'
  Vec2 t1, t2;            ///< tangents from M to E' meet the ellipse again here
  std::optional<Vec2> fourth_point;  ///< M': circumcircle(M T1 T2) meets the ellipse again; absent on a circle
  double fourth_angle = 0.0;         ///< angle T1 M' T2
};

InscribedCheck inscribed_special_check(const EllipseAxes& e, const Vec2& m, double theta,
                                       int samples = kDefaultEnvelopeSamples);

}  // namespace fregier
