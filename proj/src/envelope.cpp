#include "fregier/envelope.hpp"

#include "fregier/error.hpp"

#include <algorithm>
#include <cmath>

namespace fregier {

namespace {

void require_angle(double theta) {
  if (!(theta > 0.0 && theta < kPi))
    throw GeometryError(ErrorKind::invalid_argument, "theta must lie in (0, pi)");
}

void require_on_ellipse(const EllipseAxes& e, const Vec2& m) {
  if (std::abs(e.implicit_residual(m)) > 1e-10)
    throw GeometryError(ErrorKind::invalid_argument, "M is not on the ellipse");
}

Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

// Ray parameter of the second intersection of m + s d with the ellipse
// (local frame, m on the ellipse). Positive when d points inside.
double second_hit(const EllipseAxes& e, const Vec2& m_local, const Vec2& d_local) {
  const double ia = 1.0 / (e.major * e.major), ib = 1.0 / (e.minor * e.minor);
  const double lin = m_local.x() * d_local.x() * ia + m_local.y() * d_local.y() * ib;
  const double quad = d_local.x() * d_local.x() * ia + d_local.y() * d_local.y() * ib;
  return -2 * lin / quad;
}

// Point minimizing the squared distances to a set of lines.
Vec2 least_squares_point(const std::vector<ProjLine>& lines) {
  Mat2 normal = Mat2::Zero();
  Vec2 rhs = Vec2::Zero();
  for (const ProjLine& l : lines) {
    const double len = std::hypot(l.v.x(), l.v.y());
    const Vec2 n(l.v.x() / len, l.v.y() / len);
    const double c = l.v.z() / len;
    normal += n * n.transpose();
    rhs -= c * n;
  }
  return normal.ldlt().solve(rhs);
}

// Second intersection of the ray from m (on e) through p.
Vec2 ray_exit(const EllipseAxes& e, const Vec2& m, const Vec2& p) {
  const Vec2 ml = e.to_local(m);
  const Vec2 dl = e.to_local(p) - ml;
  return e.from_local(ml + second_hit(e, ml, dl) * dl);
}

}  // namespace

Chord chord_at(const EllipseAxes& e, const Vec2& m, double theta, double t) {
  require_angle(theta);
  require_on_ellipse(e, m);
  const double scale = e.major;
  const Vec2 n = e.point_at(t);
  if ((n - m).norm() <= 1e-9 * scale)
    throw GeometryError(ErrorKind::degeneracy, "degenerate sample: N coincides with M");

  const Vec2 ml = e.to_local(m);
  const Vec2 dl = rotate(e.to_local(n) - ml, theta);
  const double s = second_hit(e, ml, dl);
  if (!(s * dl.norm() > 1e-9 * scale))
    throw GeometryError(ErrorKind::degeneracy, "degenerate sample: L coincides with M");
  const Vec2 l = e.from_local(ml + s * dl);
  return {n, l, join(ProjPoint::from_cartesian(n), ProjPoint::from_cartesian(l))};
}

std::vector<double> chord_parameters(const EllipseAxes& e, const Vec2& m, double theta, int count) {
  require_angle(theta);
  const Vec2 ml = e.to_local(m);
  const Vec2 inward(-ml.x() / (e.major * e.major), -ml.y() / (e.minor * e.minor));
  const double start = std::atan2(inward.y(), inward.x()) - kPi / 2;
  const double span = kPi - theta;

  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double phi = start + (k + 0.5) / count * span;
    const Vec2 d(std::cos(phi), std::sin(phi));
    const Vec2 nl = ml + second_hit(e, ml, d) * d;
    ts.push_back(std::atan2(nl.y() / e.minor, nl.x() / e.major));
  }
  return ts;
}

std::string_view to_string(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::ellipse: return "ellipse";
    case EnvelopeKind::point: return "point";
    case EnvelopeKind::degenerate: return "degenerate";
  }
  return "unknown";
}

EnvelopeResult fit_envelope(const EllipseAxes& e, const Vec2& m, double theta, int samples) {
  require_angle(theta);
  require_on_ellipse(e, m);
  if (samples < 24) throw GeometryError(ErrorKind::invalid_argument, "envelope fit needs at least 24 samples");

  std::vector<ProjLine> fit, held_out;
  const std::vector<double> ts = chord_parameters(e, m, theta, samples);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    try {
      const Chord c = chord_at(e, m, theta, ts[k]);
      (k % 4 == 3 ? held_out : fit).push_back(c.line);
    } catch (const GeometryError& err) {
      if (err.kind() != ErrorKind::degeneracy) throw;
    }
  }
  if (fit.size() < 5 || held_out.empty())
    throw GeometryError(ErrorKind::numerical_failure, "sampling failure: too few non-degenerate chords");

  EnvelopeResult r;
  r.chords_fitted = static_cast<int>(fit.size());
  r.chords_held_out = static_cast<int>(held_out.size());
  r.dual = dual_conic_from_lines(fit).normalized();

  const bool right_angle = std::abs(theta - kPi / 2) < 1e-9;
  if (right_angle || r.dual.rank() == 1) {
    std::vector<ProjLine> all = fit;
    all.insert(all.end(), held_out.begin(), held_out.end());
    const Vec2 k = least_squares_point(all);
    const Vec3 p(k.x(), k.y(), 1.0);
    r.dual = ConicMatrix(p * p.transpose(), ConicForm::line).normalized();
    r.kind = EnvelopeKind::point;
    r.center = k;
    r.axes = EllipseAxes{k, 0.0, 0.0, 0.0};
  } else if (r.dual.classify() == ConicClass::real_ellipse) {
    r.kind = EnvelopeKind::ellipse;
    // pole of the line at infinity
    const Vec3 pole = r.dual.matrix().col(2);
    r.center = pole.head<2>() / pole.z();
    r.axes = ellipse_metrics(r.dual);
    r.axes.center = r.center;
    r.area = r.axes.area();
  } else {
    r.kind = EnvelopeKind::degenerate;
  }

  for (const ProjLine& l : fit) r.fit_residual_max = std::max(r.fit_residual_max, tangency_residual(r.dual, l));
  double sum = 0.0;
  for (const ProjLine& l : held_out) {
    const double res = tangency_residual(r.dual, l);
    r.holdout_residual_max = std::max(r.holdout_residual_max, res);
    sum += res;
  }
  r.holdout_residual_mean = sum / static_cast<double>(held_out.size());
  return r;
}

Vec2 fregier_point(const EllipseAxes& e, const Vec2& m) {
  require_on_ellipse(e, m);
  std::vector<ProjLine> lines;
  for (double t : chord_parameters(e, m, kPi / 2, 16)) {
    try {
      lines.push_back(chord_at(e, m, kPi / 2, t).line);
    } catch (const GeometryError& err) {
      if (err.kind() != ErrorKind::degeneracy) throw;
    }
  }
  if (lines.size() < 8) throw GeometryError(ErrorKind::numerical_failure, "sampling failure: too few right-angle chords");
  return least_squares_point(lines);
}

double area_ratio_sq(double rho, double theta) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double num = std::pow(rho, 3) * std::pow(rho + 4, 3) * c2;
  const double den = std::pow((rho + 1) * (rho + 1) + (2 * rho - 1) * c2, 3);
  return num / den;
}

double tangent_angle(const EnvelopeResult& env, const Vec2& m) {
  if (env.kind != EnvelopeKind::ellipse)
    throw GeometryError(ErrorKind::invalid_argument, "tangent angle needs an ellipse envelope");
  const TangentsFromPoint t = tangent_lines_from_point(env.axes.to_conic(), ProjPoint::from_cartesian(m));
  if (t.contacts.size() != 2) throw GeometryError(ErrorKind::numerical_failure, "no tangents: M is not outside E'");
  return unsigned_angle(t.contacts[0].cartesian() - m, t.contacts[1].cartesian() - m);
}

LocusReport center_locus(const EllipseAxes& e, double theta, int num_m) {
  require_angle(theta);
  if (num_m < 8) throw GeometryError(ErrorKind::invalid_argument, "center locus needs at least 8 samples of M");

  LocusReport r;
  r.fregier_locus = std::abs(theta - kPi / 2) < 1e-9;
  for (int j = 0; j < num_m; ++j) {
    const double t = 2 * kPi * (j + 0.25) / num_m;
    r.m_params.push_back(t);
    r.centers.push_back(fit_envelope(e, e.point_at(t), theta).center);
  }

  Vec2 mean = Vec2::Zero();
  for (const Vec2& k : r.centers) mean += k;
  mean /= static_cast<double>(r.centers.size());
  double spread = 0.0;
  for (const Vec2& k : r.centers) spread = std::max(spread, (k - mean).norm());

  if (spread < 1e-9 * e.minor) {
    r.point_locus = true;
    r.center = mean;
  } else {
    std::vector<ProjPoint> pts;
    for (const Vec2& k : r.centers) pts.push_back(ProjPoint::from_cartesian(k));
    r.conic = conic_from_points(pts).normalized();
    if (r.conic->classify() == ConicClass::real_ellipse) {
      r.axes = ellipse_metrics(*r.conic);
      r.center = r.axes->center;
    } else {
      const Mat3& q = r.conic->matrix();
      r.center = -q.topLeftCorner<2, 2>().fullPivLu().solve(q.topRightCorner<2, 1>());
    }
  }
  r.center_offset = (r.center - e.center).norm();
  return r;
}

std::vector<Vec2> reverse_problem(const EllipseAxes& e, const Vec2& n, const Vec2& l, double theta) {
  require_angle(theta);
  require_on_ellipse(e, n);
  require_on_ellipse(e, l);
  const double chord = (l - n).norm();
  if (chord <= 1e-12 * e.major) throw GeometryError(ErrorKind::invalid_argument, "N and L coincide");

  const Vec2 mid = 0.5 * (n + l);
  const Vec2 perp = Vec2(-(l - n).y(), (l - n).x()) / chord;
  const double offset = chord / (2 * std::tan(theta));
  const double radius = chord / (2 * std::sin(theta));
  const double near = 1e-7 * e.major;

  std::vector<Vec2> out;
  for (double side : {1.0, -1.0}) {
    const Vec2 c = mid + side * offset * perp;
    const ConicMatrix circle =
        ConicMatrix::from_coefficients(1, 0, 1, -2 * c.x(), -2 * c.y(), c.squaredNorm() - radius * radius);
    for (const Vec2& p : ellipse_conic_intersection(e, circle)) {
      if ((p - n).norm() < near || (p - l).norm() < near) continue;
      const Vec2 pn = n - p, pl = l - p;
      if (pn.x() * pl.y() - pn.y() * pl.x() <= 0) continue;
      if (std::abs(unsigned_angle(pn, pl) - theta) > 1e-9) continue;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const Vec2& q) { return (p - q).norm() < near; });
      if (!dup) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Vec2& a, const Vec2& b) {
    return e.parameter_of(a) < e.parameter_of(b);
  });
  return out;
}

OrthopticCheck orthoptic_check(const EllipseAxes& e, const EnvelopeResult& env, const Vec2& m) {
  if (env.kind != EnvelopeKind::ellipse)
    throw GeometryError(ErrorKind::invalid_argument, "orthoptic check needs an ellipse envelope");
  OrthopticCheck out;
  out.residual = (m - env.center).squaredNorm() -
                 (env.axes.major * env.axes.major + env.axes.minor * env.axes.minor);
  out.on_circle = std::abs(out.residual) < 1e-8 * e.minor * e.minor;
  return out;
}

std::pair<double, double> axes_from_area_and_KM(double area, double d) {
  const double product = area / kPi;
  const double d2 = d * d;
  double disc = d2 * d2 - 4 * product * product;
  if (disc < 0) {
    if (disc < -1e-12 * d2 * d2) throw GeometryError(ErrorKind::invalid_argument, "inconsistent inputs");
    disc = 0;
  }
  const double sq = std::sqrt(disc);
  const double big = 0.5 * (d2 + sq);
  const double small = big > 0 ? product * product / big : 0.0;
  return {std::sqrt(big), std::sqrt(small)};
}

InscribedCheck inscribed_special_check(const EllipseAxes& e, const Vec2& m, double theta, int samples) {
  const EnvelopeResult env = fit_envelope(e, m, theta, samples);
  if (env.kind != EnvelopeKind::ellipse)
    throw GeometryError(ErrorKind::invalid_argument, "inscribed check needs an ellipse envelope");
  const TangentsFromPoint tangents = tangent_lines_from_point(env.axes.to_conic(), ProjPoint::from_cartesian(m));
  if (tangents.contacts.size() != 2)
    throw GeometryError(ErrorKind::numerical_failure, "no tangents: M is not outside E'");

  InscribedCheck out;
  out.t1 = ray_exit(e, m, tangents.contacts[0].cartesian());
  out.t2 = ray_exit(e, m, tangents.contacts[1].cartesian());
  out.residual = tangency_residual(env.dual, join(ProjPoint::from_cartesian(out.t1), ProjPoint::from_cartesian(out.t2)));

  const double near = 1e-7 * e.major;
  std::vector<Vec2> hits;
  try {
    hits = ellipse_conic_intersection(e, circle_through(m, out.t1, out.t2));
  } catch (const GeometryError& err) {
    // E is itself a circle: every point lies on the circumcircle
    if (err.kind() != ErrorKind::degeneracy) throw;
  }
  for (const Vec2& p : hits) {
    if ((p - m).norm() < near || (p - out.t1).norm() < near || (p - out.t2).norm() < near) continue;
    out.fourth_point = p;
    out.fourth_angle = unsigned_angle(out.t1 - p, out.t2 - p);
    break;
  }
  return out;
}

}  // namespace fregier
