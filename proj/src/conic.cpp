#include "fregier/conic.hpp"

#include "fregier/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>

namespace fregier {

namespace {

Mat3 symmetric_from6(const Eigen::Matrix<double, 6, 1>& c) {
  Mat3 m;
  m << c(0), c(3), c(4),
       c(3), c(1), c(5),
       c(4), c(5), c(2);
  return m;
}

std::vector<double> singular_values(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m);
  const auto& s = svd.singularValues();
  return {s(0), s(1), s(2)};
}

// Real roots of c[0] + c[1] x + ... + c[d] x^d via the companion matrix.
std::vector<double> real_polynomial_roots(std::vector<double> c) {
  double scale = 0.0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return {};
  for (double& x : c) x /= scale;
  while (!c.empty() && std::abs(c.back()) < 1e-14) c.pop_back();
  const int degree = static_cast<int>(c.size()) - 1;
  if (degree < 1) return {};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -c[i] / c[degree];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<double> roots;
  for (int i = 0; i < degree; ++i) {
    const std::complex<double> z = solver.eigenvalues()(i);
    if (std::abs(z.imag()) <= 1e-6 * (1.0 + std::abs(z.real()))) roots.push_back(z.real());
  }
  return roots;
}

}  // namespace

Vec3 normalize_homogeneous(const Vec3& v) {
  Eigen::Index idx = 0;
  const double m = v.cwiseAbs().maxCoeff(&idx);
  if (m == 0.0) throw GeometryError(ErrorKind::invalid_argument, "homogeneous vector is zero");
  return v / v(idx);
}

bool ProjPoint::is_ideal(double tol) const {
  return std::abs(v.z()) <= tol * v.cwiseAbs().maxCoeff();
}

Vec2 ProjPoint::cartesian() const {
  if (is_ideal()) throw GeometryError(ErrorKind::numerical_failure, "ideal point has no Cartesian image");
  return {v.x() / v.z(), v.y() / v.z()};
}

bool ProjLine::passes_through(const ProjPoint& p, double tol) const {
  return std::abs(v.dot(p.v)) <= tol * v.norm() * p.v.norm();
}

double ProjLine::distance_to(const Vec2& p) const {
  return std::abs(v.x() * p.x() + v.y() * p.y() + v.z()) / std::hypot(v.x(), v.y());
}

ProjLine join(const ProjPoint& p, const ProjPoint& q) { return {p.v.cross(q.v)}; }
ProjPoint meet(const ProjLine& l, const ProjLine& m) { return {l.v.cross(m.v)}; }

double projective_distance(const Vec3& a, const Vec3& b) {
  return a.cross(b).norm() / (a.norm() * b.norm());
}

std::string_view to_string(ConicClass c) {
  switch (c) {
    case ConicClass::real_ellipse: return "ellipse";
    case ConicClass::imaginary_ellipse: return "imaginary ellipse";
    case ConicClass::hyperbola: return "hyperbola";
    case ConicClass::parabola: return "parabola";
    case ConicClass::point: return "point";
    case ConicClass::line_pair: return "line pair";
    case ConicClass::rank_deficient: return "rank deficient";
  }
  return "unknown";
}

ConicMatrix::ConicMatrix(const Mat3& m, ConicForm form) : m_(0.5 * (m + m.transpose())), form_(form) {}

ConicMatrix ConicMatrix::from_coefficients(double A, double B, double C, double D, double E, double F) {
  Mat3 m;
  m << A, B / 2, D / 2,
       B / 2, C, E / 2,
       D / 2, E / 2, F;
  return {m, ConicForm::point};
}

ConicMatrix ConicMatrix::normalized() const {
  const double n = m_.norm();
  if (n == 0.0) return *this;
  Eigen::Index r = 0, c = 0;
  m_.cwiseAbs().maxCoeff(&r, &c);
  const double sign = m_(r, c) < 0 ? -1.0 : 1.0;
  return {sign * m_ / n, form_};
}

int ConicMatrix::rank() const {
  const auto s = singular_values(m_);
  if (s[0] == 0.0) return 0;
  int r = 0;
  for (double x : s) r += (x > kRankTolerance * s[0]) ? 1 : 0;
  return r;
}

ConicClass ConicMatrix::classify() const {
  const int r = rank();
  if (form_ == ConicForm::line) {
    if (r == 3) return adjugate(*this).classify();
    if (r == 2) return ConicClass::line_pair;
    if (r == 1) return ConicClass::point;
    return ConicClass::rank_deficient;
  }
  if (r <= 1) return ConicClass::rank_deficient;

  const Mat2 q = m_.topLeftCorner<2, 2>();
  const double q_scale = std::max(q.squaredNorm(), 1e-300);
  const double det_q = q.determinant();
  const bool elliptic = det_q > 1e-12 * q_scale;
  const bool parabolic = std::abs(det_q) <= 1e-12 * q_scale;

  if (r == 2) return elliptic ? ConicClass::point : ConicClass::line_pair;
  if (parabolic) return ConicClass::parabola;
  if (!elliptic) return ConicClass::hyperbola;
  return (m_.determinant() * q.trace() < 0) ? ConicClass::real_ellipse : ConicClass::imaginary_ellipse;
}

double proportionality_defect(const Mat3& a, const Mat3& b) {
  const Mat3 na = a / a.norm();
  const Mat3 nb = b / b.norm();
  return std::min((na - nb).norm(), (na + nb).norm());
}

ConicMatrix EllipseAxes::to_conic() const {
  // local conic diag(1/a^2, 1/b^2, -1) pulled back through p -> R^T (p - c)
  const double c = std::cos(tilt), s = std::sin(tilt);
  Mat3 to_local;
  to_local << c, s, -(c * center.x() + s * center.y()),
              -s, c, -(-s * center.x() + c * center.y()),
              0, 0, 1;
  const Mat3 local = Vec3(1.0 / (major * major), 1.0 / (minor * minor), -1.0).asDiagonal();
  return {to_local.transpose() * local * to_local, ConicForm::point};
}

Vec2 EllipseAxes::point_at(double t) const {
  return from_local({major * std::cos(t), minor * std::sin(t)});
}

Vec2 EllipseAxes::to_local(const Vec2& p) const {
  const double c = std::cos(tilt), s = std::sin(tilt);
  const Vec2 d = p - center;
  return {c * d.x() + s * d.y(), -s * d.x() + c * d.y()};
}

Vec2 EllipseAxes::from_local(const Vec2& q) const {
  const double c = std::cos(tilt), s = std::sin(tilt);
  return center + Vec2(c * q.x() - s * q.y(), s * q.x() + c * q.y());
}

double EllipseAxes::parameter_of(const Vec2& p) const {
  const Vec2 q = to_local(p);
  return std::atan2(q.y() / minor, q.x() / major);
}

double EllipseAxes::implicit_residual(const Vec2& p) const {
  const Vec2 q = to_local(p);
  return (q.x() / major) * (q.x() / major) + (q.y() / minor) * (q.y() / minor) - 1.0;
}

ConicMatrix conic_from_points(std::span<const ProjPoint> points) {
  if (points.size() < 5) throw GeometryError(ErrorKind::invalid_argument, "conic fit needs at least five points");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (projective_distance(points[i].v, points[j].v) < 1e-12)
        throw GeometryError(ErrorKind::invalid_argument, "degenerate input: repeated point");

  Eigen::MatrixXd rows(static_cast<Eigen::Index>(points.size()), 6);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3 p = points[i].v.normalized();
    rows.row(static_cast<Eigen::Index>(i)) << p.x() * p.x(), p.y() * p.y(), p.z() * p.z(),
        2 * p.x() * p.y(), 2 * p.x() * p.z(), 2 * p.y() * p.z();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(4) < kRankTolerance * s(0))
    throw GeometryError(ErrorKind::invalid_argument, "degenerate input: conic through points is not unique");
  const Eigen::Matrix<double, 6, 1> c = svd.matrixV().col(5);
  return {symmetric_from6(c), ConicForm::point};
}

ConicMatrix dual_conic_from_lines(std::span<const ProjLine> lines) {
  if (lines.size() < 5) throw GeometryError(ErrorKind::invalid_argument, "dual conic fit needs at least five lines");

  const auto n = static_cast<Eigen::Index>(lines.size());
  Eigen::MatrixXd pencil(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) pencil.row(i) = lines[static_cast<std::size_t>(i)].v.normalized().transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> pencil_svd(pencil, Eigen::ComputeFullV);
  const auto& ps = pencil_svd.singularValues();
  if (ps(1) < kRankTolerance * ps(0))
    throw GeometryError(ErrorKind::invalid_argument, "degenerate input: all lines coincide");
  if (ps(2) < kRankTolerance * ps(0)) {
    // Concurrent pencil: the envelope collapses to the common point.
    const Vec3 p = pencil_svd.matrixV().col(2);
    return {p * p.transpose(), ConicForm::line};
  }

  Eigen::MatrixXd rows(n, 6);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3 l = pencil.row(i).transpose();
    rows.row(i) << l.x() * l.x(), l.y() * l.y(), l.z() * l.z(),
        2 * l.x() * l.y(), 2 * l.x() * l.z(), 2 * l.y() * l.z();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(4) < kRankTolerance * s(0))
    throw GeometryError(ErrorKind::invalid_argument, "degenerate input: tangent conic is not unique");
  const Eigen::Matrix<double, 6, 1> c = svd.matrixV().col(5);
  return {symmetric_from6(c), ConicForm::line};
}

ConicMatrix adjugate(const ConicMatrix& c) {
  const Mat3& m = c.matrix();
  Mat3 adj;
  adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return {adj, c.form() == ConicForm::point ? ConicForm::line : ConicForm::point};
}

EllipseAxes ellipse_metrics(const ConicMatrix& c) {
  const ConicMatrix point_form = c.form() == ConicForm::line ? adjugate(c) : c;
  const ConicClass kind = point_form.classify();
  if (kind != ConicClass::real_ellipse)
    throw GeometryError(ErrorKind::invalid_argument, "not an ellipse: " + std::string(to_string(kind)));

  const Mat3& m = point_form.matrix();
  const Mat2 q = m.topLeftCorner<2, 2>();
  const Vec2 lin = m.topRightCorner<2, 1>();
  EllipseAxes axes;
  axes.center = -q.ldlt().solve(lin);
  const double constant = m(2, 2) + lin.dot(axes.center);

  Eigen::SelfAdjointEigenSolver<Mat2> eig(q);
  const Vec2 lambda = eig.eigenvalues();
  const int major_idx = std::abs(lambda(0)) <= std::abs(lambda(1)) ? 0 : 1;
  axes.major = std::sqrt(-constant / lambda(major_idx));
  axes.minor = std::sqrt(-constant / lambda(1 - major_idx));
  const Vec2 dir = eig.eigenvectors().col(major_idx);
  double tilt = std::atan2(dir.y(), dir.x());
  if (tilt < 0) tilt += kPi;
  if (tilt >= kPi) tilt -= kPi;
  axes.tilt = tilt;
  return axes;
}

LineIntersection line_conic_intersection(const ConicMatrix& c, const ProjLine& line) {
  const Vec3 l = line.v.normalized();
  Eigen::Index least = 0;
  l.cwiseAbs().minCoeff(&least);
  const Vec3 q1 = l.cross(Vec3::Unit(least)).normalized();
  const Vec3 q2 = l.cross(q1);

  const Mat3& m = c.matrix();
  const double a = q1.dot(m * q1);
  const double b = q1.dot(m * q2);
  const double cc = q2.dot(m * q2);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(cc)});
  if (scale <= 1e-15 * m.norm())
    throw GeometryError(ErrorKind::degeneracy, "line is contained in the conic");

  LineIntersection out;
  const double disc = b * b - a * cc;
  if (disc < -1e-13 * scale * scale) return out;

  if (std::abs(disc) <= 1e-13 * scale * scale) {
    out.tangent = true;
    const Vec3 p = std::abs(a) >= std::abs(cc) ? Vec3((-b / a) * q1 + q2) : Vec3(q1 + (-b / cc) * q2);
    out.points.push_back({p});
    return out;
  }

  const double sq = std::sqrt(disc);
  const double sgn = b >= 0 ? 1.0 : -1.0;
  if (std::abs(a) >= std::abs(cc)) {
    // a r^2 + 2 b r + cc = 0 with point r q1 + q2
    const double r1 = (-b - sgn * sq) / a;
    out.points.push_back({r1 * q1 + q2});
    if (r1 != 0.0) out.points.push_back({(cc / (a * r1)) * q1 + q2});
    else out.points.push_back({q1});
  } else {
    // cc s^2 + 2 b s + a = 0 with point q1 + s q2
    const double s1 = (-b - sgn * sq) / cc;
    out.points.push_back({q1 + s1 * q2});
    if (s1 != 0.0) out.points.push_back({q1 + (a / (cc * s1)) * q2});
    else out.points.push_back({q2});
  }
  return out;
}

TangentsFromPoint tangent_lines_from_point(const ConicMatrix& c, const ProjPoint& p) {
  if (c.form() != ConicForm::point || c.rank() < 3)
    throw GeometryError(ErrorKind::invalid_argument, "tangents need a full-rank point-form conic");

  TangentsFromPoint out;
  out.polar = {c.matrix() * p.v};
  const double on = std::abs(c.evaluate(p.v)) / (p.v.squaredNorm() * c.frobenius());
  if (on < 1e-12) {
    out.on_conic = true;
    out.tangents.push_back(out.polar);
    out.contacts.push_back(p);
    return out;
  }
  const LineIntersection hits = line_conic_intersection(c, out.polar);
  if (hits.tangent) {
    out.on_conic = true;
    out.tangents.push_back(out.polar);
    out.contacts.push_back(p);
    return out;
  }
  for (const ProjPoint& t : hits.points) {
    out.contacts.push_back(t);
    out.tangents.push_back(join(p, t));
  }
  return out;
}

double tangency_residual(const ConicMatrix& dual, const ProjLine& line) {
  return std::abs(dual.evaluate(line.v)) / (line.v.squaredNorm() * dual.frobenius());
}

std::vector<Vec2> ellipse_conic_intersection(const EllipseAxes& ellipse, const ConicMatrix& other) {
  const double c = std::cos(ellipse.tilt), s = std::sin(ellipse.tilt);
  Mat3 from_local;
  from_local << c, -s, ellipse.center.x(),
                s, c, ellipse.center.y(),
                0, 0, 1;
  const Mat3 g = from_local.transpose() * other.matrix() * from_local / other.frobenius();

  const double a = ellipse.major, b = ellipse.minor;
  // X(tau) = (a(1 - tau^2), 2 b tau, 1 + tau^2)
  const Vec3 x0(a, 0, 1), x1(0, 2 * b, 0), x2(-a, 0, 1);
  const std::vector<double> coeffs = {
      x0.dot(g * x0),
      2 * x0.dot(g * x1),
      x1.dot(g * x1) + 2 * x0.dot(g * x2),
      2 * x1.dot(g * x2),
      x2.dot(g * x2),
  };
  double cmax = 0.0;
  for (double x : coeffs) cmax = std::max(cmax, std::abs(x));
  const double size = 1.0 + a * a + b * b;
  if (cmax <= 1e-11 * size)
    throw GeometryError(ErrorKind::degeneracy, "infinite solutions: conic contains the ellipse");

  auto f = [&](double t) {
    const Vec3 x(a * std::cos(t), b * std::sin(t), 1.0);
    return x.dot(g * x);
  };
  auto df = [&](double t) {
    const Vec3 x(a * std::cos(t), b * std::sin(t), 1.0);
    const Vec3 dx(-a * std::sin(t), b * std::cos(t), 0.0);
    return 2 * dx.dot(g * x);
  };

  std::vector<double> params;
  for (double tau : real_polynomial_roots(coeffs)) {
    double t = 2 * std::atan(tau);
    for (int it = 0; it < 4; ++it) {
      const double d = df(t);
      if (d == 0.0) break;
      const double step = f(t) / d;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    if (std::abs(f(t)) <= 1e-9 * size) params.push_back(t);
  }
  if (std::abs(f(kPi)) <= 1e-12 * size) params.push_back(kPi);

  std::vector<Vec2> out;
  for (double t : params) {
    const Vec2 p = ellipse.point_at(t);
    const bool dup = std::any_of(out.begin(), out.end(),
                                 [&](const Vec2& q) { return (p - q).norm() <= 1e-9 * a; });
    if (!dup) out.push_back(p);
  }
  return out;
}

double unsigned_angle(const Vec2& u, const Vec2& v) {
  const double cross = u.x() * v.y() - u.y() * v.x();
  return std::atan2(std::abs(cross), u.dot(v));
}

ConicMatrix circle_through(const Vec2& p, const Vec2& q, const Vec2& r) {
  const double d = 2 * (p.x() * (q.y() - r.y()) + q.x() * (r.y() - p.y()) + r.x() * (p.y() - q.y()));
  const double scale = std::max({(q - p).squaredNorm(), (r - p).squaredNorm(), 1e-300});
  if (std::abs(d) <= 1e-14 * scale)
    throw GeometryError(ErrorKind::invalid_argument, "circumcircle of collinear points");
  const double pp = p.squaredNorm(), qq = q.squaredNorm(), rr = r.squaredNorm();
  const Vec2 center((pp * (q.y() - r.y()) + qq * (r.y() - p.y()) + rr * (p.y() - q.y())) / d,
                    (pp * (r.x() - q.x()) + qq * (p.x() - r.x()) + rr * (q.x() - p.x())) / d);
  const double radius_sq = (p - center).squaredNorm();
  return ConicMatrix::from_coefficients(1, 0, 1, -2 * center.x(), -2 * center.y(),
                                        center.squaredNorm() - radius_sq);
}

}  // namespace fregier
