#include "fregier/trilinear.hpp"

#include "fregier/error.hpp"

#include <cmath>
#include <limits>

namespace fregier {

namespace {

// Inward unit normal and offset of the side through p, q, oriented so the
// opposite vertex has positive signed distance.
Eigen::RowVector3d side_functional(const Vec2& p, const Vec2& q, const Vec2& opposite) {
  const Vec2 d = q - p;
  Vec2 n(-d.y(), d.x());
  n.normalize();
  double c = -n.dot(p);
  if (n.dot(opposite) + c < 0) {
    n = -n;
    c = -c;
  }
  return {n.x(), n.y(), c};
}

}  // namespace

double solve_h(double a, double b) {
  if (!(b > 0) || a < b)
    throw GeometryError(ErrorKind::invalid_argument, "orient ellipse with a >= b > 0");
  const double q = (a / b) * (a / b);
  // (1 - q) h^2 - 2 (q + 1) h - 3 (1 - q) = 0
  const double qa = 1 - q, qb = -2 * (q + 1), qc = -3 * (1 - q);
  if (qa == 0.0) return 0.0;
  const double disc = std::sqrt(qb * qb - 4 * qa * qc);
  // q > 1: qa < 0 and qb < 0, so -qb + disc is free of cancellation.
  const double root = (2 * qc) / (-qb + disc);
  return root;
}

BilliardFrame build_frame(double a, double b) {
  BilliardFrame f;
  f.a = a;
  f.b = b;
  f.h = solve_h(a, b);
  const double h = f.h;
  f.rho = (1 - h * h) / 2;
  f.s = b * (3 - h) * std::sqrt(3 + h) / (2 * std::sqrt(1 - h));
  f.side_ab = 2 * f.s / (3 + h);
  f.side_bc = 2 * (1 + h) * f.s / (3 + h);

  const double half_base = f.side_bc / 2;
  const double drop = std::sqrt(f.side_ab * f.side_ab - half_base * half_base);
  f.A = Vec2(0.0, b);
  f.B = Vec2(-half_base, b - drop);
  f.C = Vec2(half_base, b - drop);

  const EllipseAxes e = f.ellipse();
  for (const Vec2& v : {f.B, f.C})
    if (std::abs(e.implicit_residual(v)) > 1e-10)
      throw GeometryError(ErrorKind::numerical_failure, "reference triangle vertex off the ellipse");

  f.cart_to_tri.row(0) = side_functional(f.B, f.C, f.A);
  f.cart_to_tri.row(1) = side_functional(f.C, f.A, f.B);
  f.cart_to_tri.row(2) = side_functional(f.A, f.B, f.C);
  f.tri_to_cart = f.cart_to_tri.inverse();
  return f;
}

TrilinearPoint BilliardFrame::to_trilinear(const Vec2& p) const {
  return {cart_to_tri * Vec3(p.x(), p.y(), 1.0)};
}

ProjPoint BilliardFrame::to_cartesian(const TrilinearPoint& p) const { return {tri_to_cart * p.v}; }

Vec2 BilliardFrame::to_cartesian_point(const TrilinearPoint& p) const {
  const ProjPoint q = to_cartesian(p);
  if (q.is_ideal(1e-13)) throw GeometryError(ErrorKind::numerical_failure, "ideal point");
  return q.cartesian();
}

ProjLine BilliardFrame::to_cartesian(const TrilinearLine& l) const {
  return {cart_to_tri.transpose() * l.v};
}

TrilinearLine BilliardFrame::to_trilinear(const ProjLine& l) const {
  return {tri_to_cart.transpose() * l.v};
}

ConicMatrix BilliardFrame::to_cartesian(const ConicMatrix& trilinear_conic) const {
  const Mat3& q = trilinear_conic.matrix();
  if (trilinear_conic.form() == ConicForm::point)
    return {cart_to_tri.transpose() * q * cart_to_tri, ConicForm::point};
  return {tri_to_cart * q * tri_to_cart.transpose(), ConicForm::line};
}

TrilinearPoint ellipse_point_tri(double u) {
  if (std::isinf(u)) return {Vec3(0, 1, 0)};
  if (std::abs(u) > 1.0) {
    // divided through by u^2
    const double r = 1.0 / u;
    return {Vec3(r + r * r, 1 + r, -r)};
  }
  return {Vec3(u + 1, u * (u + 1), -u)};
}

Vec2 circle_picture_point(double u, const BilliardFrame& frame) {
  const double h = frame.h, s = frame.s;
  const double den = u * u + (1 + h) * (u + 1);
  if (std::abs(den) < 1e-300) throw GeometryError(ErrorKind::invalid_argument, "parameter pole");
  const double x = -u * (u + 2) * s * std::sqrt(1 - h * h) / (den * std::sqrt(9 - h * h));
  const double y = ((h - 1) * u * u + 2 * (1 + h) * u + 2 * (1 + h)) * s * std::sqrt(1 - h) /
                   (den * (3 - h) * std::sqrt(3 + h));
  return {x, y};
}

TrilinearChordHits line_ellipse_intersection_tri(double m, double n) {
  const double disc = (m - n) * (m - n) - 2 * (m + n) + 1;
  const double scale = 1.0 + m * m + n * n;
  if (disc < -1e-14 * scale) throw GeometryError(ErrorKind::invalid_argument, "line misses ellipse");

  TrilinearChordHits out;
  const double p = m + 1 - n;  // m u^2 + p u + 1 = 0
  if (std::abs(disc) <= 1e-14 * scale) {
    out.tangent = true;
    const TrilinearPoint t = m == 0.0 ? ellipse_point_tri(std::numeric_limits<double>::infinity())
                                      : ellipse_point_tri(-p / (2 * m));
    out.first = out.second = t;
    return out;
  }
  const double sq = std::sqrt(std::max(disc, 0.0));
  const double q = -0.5 * (p + (p >= 0 ? sq : -sq));
  // roots q / m and 1 / q; m == 0 sends one root to infinity (vertex B)
  out.first = m == 0.0 ? ellipse_point_tri(std::numeric_limits<double>::infinity()) : ellipse_point_tri(q / m);
  out.second = ellipse_point_tri(1.0 / q);
  return out;
}

std::array<TrilinearPoint, 2> line_ellipse_intersection_formula(double m, double n) {
  const double disc = (m - n) * (m - n) - 2 * (m + n) + 1;
  if (disc < 0) throw GeometryError(ErrorKind::invalid_argument, "line misses ellipse");
  const double sq = std::sqrt(disc);
  std::array<TrilinearPoint, 2> out;
  for (int i = 0; i < 2; ++i) {
    const double r = i == 0 ? sq : -sq;
    out[i] = {Vec3(-2 * m * n, (m - n + 1 + r) * n, -(m - n - 1 + r) * m)};
  }
  return out;
}

double w_parameter(double h, double theta) {
  return std::sqrt(3 + h) * std::sqrt(1 - h) * std::cos(theta) / std::sin(theta);
}

std::array<TrilinearLine, 2> tangent_lines_closed_form(double u, double theta, const BilliardFrame& frame) {
  const double h = frame.h;
  const double w = w_parameter(h, theta);
  const double k1 = (h * h * u - h * u * u + h * h + 2 * h * u + u * u + u + 2 * h + 1) * (u + 2);
  const double k2 = h * u + u * u + h + u + 1;
  const double k3 = 2 * h * u * u * u - h * h * u + 3 * h * u * u - 2 * u * u * u - h * h - 3 * u * u -
                    2 * h - 3 * u - 1;
  const double k4 = h * h * u * u + h * u * u * u + 2 * h * h * u + 3 * h * u * u - u * u * u + h * h +
                    6 * h * u + 2 * h + 1;
  std::array<TrilinearLine, 2> out;
  for (int i = 0; i < 2; ++i) {
    const double sg = i == 0 ? 1.0 : -1.0;
    out[i] = {Vec3((k1 + sg * k2 * u * w) * u, k3 + sg * k2 * w, (k4 + sg * k2 * (u + 1) * w) * (u + 1))};
  }
  return out;
}

TrilinearPoint envelope_center_tri(double u, double theta, const BilliardFrame& frame) {
  const double h = frame.h;
  const double w2 = std::pow(w_parameter(h, theta), 2);
  const double k = h * u + u * u + h + u + 1;
  const double base = 3 - h * h;
  const double alpha = (-(h * u + h + 2) * h - h * (u + 2) * u + u * u + u + 1) * base + k * (1 - h) * w2;
  const double beta = ((h * u + h + 2) * h + h * (u + 4) * u + u * u + u + 1) * base + k * (1 + h) * w2;
  const double gamma = ((h * u + h + 2) * h - h * u * u + u * u + u + 1) * base + k * (1 + h) * w2;
  return {Vec3(alpha, beta, gamma)};
}

ConicMatrix TrilinearConicCoeffs::matrix(ConicForm form) const {
  Mat3 m;
  m << k[0], k[5] / 2, k[4] / 2,
       k[5] / 2, k[1], k[3] / 2,
       k[4] / 2, k[3] / 2, k[2];
  return {m, form};
}

TrilinearConicCoeffs locus_conic_coeffs(double theta, const BilliardFrame& frame) {
  const double h = frame.h;
  const double w2 = std::pow(w_parameter(h, theta), 2);
  const double base = 3 - h * h;
  const double lead = (1 + h) * (3 - h) * w2;
  TrilinearConicCoeffs c;
  const double k2 = (lead + base * (3 + h) * (1 - h)) * (w2 + base);
  c.k[1] = c.k[2] = k2;
  c.k[0] = k2 * (1 + h) * (1 + h);
  c.k[3] = -(lead + 2 * base * base) * (1 + 2 * h - h * h) * w2 -
           (std::pow(h, 4) - 4 * h * h + 4 * h + 3) * base * base;
  c.k[4] = c.k[5] = -(lead + 2 * base * base) * (1 - h * h) * w2 -
                    (std::pow(h, 4) + 2 * std::pow(h, 3) - 2 * h + 3) * base * base;
  return c;
}

MandartCaustic mandart_caustic(const BilliardFrame& frame) {
  const double h = frame.h;
  const double p = (1 + h) * (1 + h), m = 1 - h;
  MandartCaustic out;
  out.point_form.k = {p * p, m * m, m * m, -2 * m * m, -2 * p * m, -2 * p * m};
  out.line_form.k = {0, 0, 0, p, m, m};
  return out;
}

CausticTangentParams caustic_tangent_params(double u, const BilliardFrame& frame) {
  const double h = frame.h;
  if (u == 0.0 || u == -1.0 || h == 1.0)
    throw GeometryError(ErrorKind::invalid_argument, "parameter pole");
  CausticTangentParams out;
  out.mu = ((1 - h) * u * u + (3 + h * h) * u + (1 + h) * (1 + h)) / ((h - 1) * (u + 1) * u);
  out.psi = -(h + 1) * (h + 1) / ((h - 1) * u);
  const double disc = out.mu * out.mu - 4 * out.psi;
  if (disc < 0) throw GeometryError(ErrorKind::numerical_failure, "caustic tangents are not real");
  const double sq = std::sqrt(disc);
  const double q = 0.5 * (out.mu + (out.mu >= 0 ? sq : -sq));
  out.u2 = q;
  out.u3 = q != 0.0 ? out.psi / q : 0.0;
  return out;
}

TrilinearLine chord_line_tri(double u, double x) { return {Vec3(u * x, 1.0, (u + 1) * (x + 1))}; }

double caustic_orbit_step(double previous, double current, const BilliardFrame& frame) {
  const CausticTangentParams p = caustic_tangent_params(current, frame);
  return std::abs(p.u2 - previous) > std::abs(p.u3 - previous) ? p.u2 : p.u3;
}

}  // namespace fregier
