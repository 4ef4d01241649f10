#include "fregier/poncelet.hpp"

#include "fregier/error.hpp"
#include "fregier/trilinear.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fregier {

namespace {

double cross(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

// Angle swept counterclockwise from p to q, in [0, 2 pi).
double ccw_sweep(const Vec2& p, const Vec2& q) {
  double a = std::atan2(cross(p, q), p.dot(q));
  if (a < 0) a += 2 * kPi;
  return a;
}

}  // namespace

ConicMatrix CirclePictureConfig::caustic() const {
  return EllipseAxes{Vec2::Zero(), caustic_a, caustic_b, 0.0}.to_conic();
}

ConicMatrix CirclePictureConfig::caustic_dual() const {
  const Mat3 m = Vec3(caustic_a * caustic_a, caustic_b * caustic_b, -1.0).asDiagonal();
  return {m, ConicForm::line};
}

CirclePictureConfig circle_picture(double a, double b, double lambda) {
  CirclePictureConfig cfg;
  cfg.h = solve_h(a, b);
  if (!(lambda > 0.0 && lambda < b * b))
    throw GeometryError(ErrorKind::invalid_argument, "invalid confocal parameter: lambda must lie in (0, b^2)");
  cfg.a = a;
  cfg.b = b;
  cfg.rho = (1 - cfg.h * cfg.h) / 2;
  cfg.lambda = lambda;
  cfg.radius = b;
  cfg.caustic_a = (b / a) * std::sqrt(a * a - lambda);
  cfg.caustic_b = std::sqrt(b * b - lambda);
  return cfg;
}

Vec2 next_vertex(const CirclePictureConfig& cfg, const Vec2& p, Orientation orientation) {
  const TangentsFromPoint t = tangent_lines_from_point(cfg.caustic(), ProjPoint::from_cartesian(p));
  if (t.contacts.size() != 2)
    throw GeometryError(ErrorKind::numerical_failure, "vertex is not outside the caustic");
  const double want = orientation == Orientation::counterclockwise ? 1.0 : -1.0;
  for (const ProjPoint& c : t.contacts) {
    const Vec2 d = c.cartesian() - p;
    if (want * cross(p, d) > 0) {
      const double s = -2 * p.dot(d) / d.squaredNorm();
      return p + s * d;
    }
  }
  throw GeometryError(ErrorKind::numerical_failure, "no advancing caustic tangent");
}

double closure_defect(const CirclePictureConfig& cfg, double start, int n, int p) {
  Vec2 cur(cfg.radius * std::cos(start), cfg.radius * std::sin(start));
  double swept = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec2 nxt = next_vertex(cfg, cur);
    swept += ccw_sweep(cur, nxt);
    cur = nxt;
  }
  return swept - 2 * kPi * p;
}

double find_caustic_for_period(double a, double b, int n, int p) {
  if (n < 3) throw GeometryError(ErrorKind::invalid_argument, "period must be at least 3");
  if (p < 1) throw GeometryError(ErrorKind::invalid_argument, "winding number must be positive");
  solve_h(a, b);

  auto defect = [&](double lambda) { return closure_defect(circle_picture(a, b, lambda), 0.0, n, p); };
  double lo = 1e-6 * b * b;
  double hi = b * b * (1 - 1e-6);
  if (!(defect(lo) < 0 && defect(hi) > 0))
    throw GeometryError(ErrorKind::invalid_argument, "period/p not attainable");

  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (defect(mid) > 0 ? hi : lo) = mid;
  }
  const double lambda = 0.5 * (lo + hi);
  if (std::abs(defect(lambda)) > 1e-9)
    throw GeometryError(ErrorKind::numerical_failure, "caustic search did not close the orbit");

  // Porism: the orbit must close from any start.
  const CirclePictureConfig cfg = circle_picture(a, b, lambda);
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  for (int k = 0; k < 8; ++k)
    if (std::abs(closure_defect(cfg, phase(rng), n, p)) > 1e-9)
      throw GeometryError(ErrorKind::numerical_failure, "orbit does not close from every start");
  return lambda;
}

PonceletOrbit orbit(const CirclePictureConfig& cfg, double start_angle, int n) {
  if (n < 3) throw GeometryError(ErrorKind::invalid_argument, "orbit needs n >= 3");
  PonceletOrbit o;
  o.n = n;
  Vec2 cur(cfg.radius * std::cos(start_angle), cfg.radius * std::sin(start_angle));
  for (int i = 0; i < n; ++i) {
    o.vertices.push_back(cur);
    cur = next_vertex(cfg, cur);
  }
  o.closure = unsigned_angle(cur, o.vertices.front());
  if (o.closure > 1e-6) throw GeometryError(ErrorKind::numerical_failure, "not n-periodic");

  for (int i = 0; i < n; ++i) {
    const Vec2& prev = o.vertices[static_cast<std::size_t>((i + n - 1) % n)];
    const Vec2& here = o.vertices[static_cast<std::size_t>(i)];
    const Vec2& next = o.vertices[static_cast<std::size_t>((i + 1) % n)];
    const double angle = unsigned_angle(prev - here, next - here);
    o.angles.push_back(angle);
    o.radii.push_back(cfg.radius * std::abs(std::cos(angle)));
  }
  return o;
}

InvariantSums invariant_sums(const PonceletOrbit& orb) {
  InvariantSums s;
  const int n = orb.n;
  for (int i = 0; i < n; ++i) {
    const double c = std::cos(orb.angles[static_cast<std::size_t>(i)]);
    const double r = orb.radii[static_cast<std::size_t>(i)];
    s.sum_cos2 += c * c;
    s.sum_area += kPi * r * r;
    const Vec2& prev = orb.vertices[static_cast<std::size_t>((i + n - 1) % n)];
    const Vec2& next = orb.vertices[static_cast<std::size_t>((i + 1) % n)];
    s.sum_diag2 += (next - prev).squaredNorm();
  }
  return s;
}

bool radii_bound_check(const PonceletOrbit& orb, double radius) {
  if (orb.n != 3) throw GeometryError(ErrorKind::invalid_argument, "bound holds for n=3 only");
  double sum = 0.0;
  for (double r : orb.radii) sum += r * r;
  const double v = sum / (radius * radius);
  // the equilateral orbit sits exactly on the lower bound
  constexpr double slack = 1e-12;
  return v >= 0.75 - slack && v <= 1.0 + slack;
}

double edge_tangency_max(const CirclePictureConfig& cfg, const PonceletOrbit& orb) {
  const ConicMatrix dual = cfg.caustic_dual();
  double worst = 0.0;
  for (int i = 0; i < orb.n; ++i) {
    const Vec2& p = orb.vertices[static_cast<std::size_t>(i)];
    const Vec2& q = orb.vertices[static_cast<std::size_t>((i + 1) % orb.n)];
    worst = std::max(worst, tangency_residual(dual, join(ProjPoint::from_cartesian(p), ProjPoint::from_cartesian(q))));
  }
  return worst;
}

SpreadStats spread_of(const std::vector<double>& values) {
  SpreadStats s;
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  s.spread = (s.max - s.min) / std::max(std::abs(s.mean), 1.0);
  return s;
}

std::vector<double> phase_angles(int phases) {
  if (phases < 1) throw GeometryError(ErrorKind::invalid_argument, "phase count must be positive");
  std::vector<double> out;
  for (int k = 0; k < phases; ++k) out.push_back(2 * kPi * k / phases);
  return out;
}

InvariantReport summarize(const CirclePictureConfig& cfg, int n, std::vector<PhaseSample> samples) {
  InvariantReport r;
  r.n = n;
  r.lambda = cfg.lambda;
  std::vector<double> cos2, area, diag2;
  for (const PhaseSample& s : samples) {
    cos2.push_back(s.sums.sum_cos2);
    area.push_back(s.sums.sum_area);
    diag2.push_back(s.sums.sum_diag2);
  }
  r.cos2 = spread_of(cos2);
  r.area = spread_of(area);
  r.diag2 = spread_of(diag2);
  r.samples = std::move(samples);
  if (n == 3) {
    r.has_prediction = true;
    r.predicted_cos2 = 1 - cfg.rho / 2;
    r.predicted_area = kPi * cfg.b * cfg.b * (1 - cfg.rho / 2);
    r.predicted_diag2 = 2 * cfg.b * cfg.b * (cfg.rho + 4);
  }
  return r;
}

}  // namespace fregier
