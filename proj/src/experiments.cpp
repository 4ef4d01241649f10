#include "fregier/experiments.hpp"

#include "fregier/error.hpp"
#include "fregier/svg.hpp"
#include "fregier/trilinear.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fregier {

using nlohmann::ordered_json;

namespace {

ordered_json point_json(const Vec2& p) { return ordered_json::array({p.x(), p.y()}); }

// JSON has no NaN; such values are written as null.
ordered_json maybe(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < kPi)) throw GeometryError(ErrorKind::invalid_argument, "theta must lie in (0, pi)");
}

std::string scan_csv(const std::vector<EnvelopeSample>& rows) {
  std::string out = "m_angle,kx,ky,a1,b1,area,tangent_angle\n";
  for (const EnvelopeSample& s : rows) {
    out += format_double(s.m_param) + "," + format_double(s.env.center.x()) + "," +
           format_double(s.env.center.y()) + "," + format_double(s.env.axes.major) + "," +
           format_double(s.env.axes.minor) + "," + format_double(s.env.area) + "," +
           format_double(s.tangent_angle) + "\n";
  }
  return out;
}

std::vector<EnvelopeSample> scan(const ScanConfig& cfg, Execution exec) {
  require_theta(cfg.theta);
  const EllipseAxes e = make_ellipse(cfg.ellipse);
  const std::vector<double> params = scan_parameters(cfg.num_m);
  return envelope_scan(e, cfg.theta, params, exec, cfg.samples);
}

ordered_json spread_json(const SpreadStats& s) {
  return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"spread", s.spread}};
}

std::string summary_line(const std::string& key, double v) { return key + " = " + format_double(v) + "\n"; }

}  // namespace

EllipseAxes make_ellipse(const EllipseInput& in) {
  if (!(in.b > 0.0) || !(in.a >= in.b) || !std::isfinite(in.a))
    throw GeometryError(ErrorKind::invalid_argument, "orient ellipse with a >= b > 0");
  return {Vec2::Zero(), in.a, in.b, 0.0};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> scan_parameters(int count) {
  if (count < 1) throw GeometryError(ErrorKind::invalid_argument, "need at least one M sample");
  std::vector<double> out;
  for (int j = 0; j < count; ++j) out.push_back(2 * kPi * (j + 0.25) / count);
  return out;
}

RunOutput run_envelope(const EnvelopeConfig& cfg) {
  const EllipseAxes e = make_ellipse(cfg.ellipse);
  const Vec2 m = e.point_at(cfg.m_angle);
  const EnvelopeResult env = fit_envelope(e, m, cfg.theta, cfg.samples);

  ordered_json j;
  j["a"] = cfg.ellipse.a;
  j["b"] = cfg.ellipse.b;
  j["theta"] = cfg.theta;
  j["m_angle"] = cfg.m_angle;
  j["m"] = point_json(m);
  j["classification"] = std::string(to_string(env.kind));
  j["k"] = point_json(env.center);
  double angle = std::nan("");
  if (env.kind == EnvelopeKind::ellipse) {
    angle = tangent_angle(env, m);
    j["a1"] = env.axes.major;
    j["b1"] = env.axes.minor;
    j["tilt"] = env.axes.tilt;
    j["area"] = env.area;
  }
  j["tangent_angle"] = maybe(angle);
  j["fit_residual_max"] = env.fit_residual_max;
  j["holdout_residual_max"] = env.holdout_residual_max;
  j["holdout_residual_mean"] = env.holdout_residual_mean;
  j["chords_fitted"] = env.chords_fitted;
  j["chords_held_out"] = env.chords_held_out;

  SvgCanvas svg(e);
  svg.ellipse(e, "black", 2.0);
  for (double t : chord_parameters(e, m, cfg.theta, 24)) {
    try {
      const Chord c = chord_at(e, m, cfg.theta, t);
      svg.segment(c.n, c.l, "#7a9cc6");
      svg.segment(m, c.n, "#d0d0d0", 0.4);
      svg.segment(m, c.l, "#d0d0d0", 0.4);
    } catch (const GeometryError&) {
    }
  }
  if (env.kind == EnvelopeKind::ellipse) {
    svg.ellipse(env.axes, "red", 2.0);
    const TangentsFromPoint t = tangent_lines_from_point(env.axes.to_conic(), ProjPoint::from_cartesian(m));
    for (const ProjPoint& p : t.contacts) {
      const Vec2 q = p.cartesian();
      svg.segment(m, m + 1.4 * (q - m), "green", 1.2);
    }
  }
  svg.dot(m, "black", "M");
  svg.dot(env.center, "red", "K");
  svg.caption("theta = " + format_double(cfg.theta));

  RunOutput out;
  out.files = {{"envelope.json", dump(j)}, {"envelope.svg", svg.str()}};
  out.summary = "classification = " + std::string(to_string(env.kind)) + "\n" +
                summary_line("kx", env.center.x()) + summary_line("ky", env.center.y()) +
                summary_line("area", env.area) + summary_line("holdout_residual_max", env.holdout_residual_max);
  return out;
}

RunOutput run_area_scan(const ScanConfig& cfg, Execution exec) {
  const std::vector<EnvelopeSample> rows = scan(cfg, exec);
  std::vector<double> areas;
  for (const EnvelopeSample& s : rows) areas.push_back(s.env.area);
  const SpreadStats st = spread_of(areas);
  const double rel = st.mean != 0.0 ? (st.max - st.min) / std::abs(st.mean) : 0.0;

  const double rho = (1 - std::pow(solve_h(cfg.ellipse.a, cfg.ellipse.b), 2)) / 2;
  const double k = std::sqrt(area_ratio_sq(rho, cfg.theta));
  const double ellipse_area = kPi * cfg.ellipse.a * cfg.ellipse.b;

  ordered_json j;
  j["theta"] = cfg.theta;
  j["num_m"] = cfg.num_m;
  j["area"] = spread_json(st);
  j["area_relative_spread"] = rel;
  j["rho"] = rho;
  j["k"] = k;
  j["area_ratio"] = st.mean / ellipse_area;
  j["k_times_ellipse_area"] = k * ellipse_area;

  RunOutput out;
  out.files = {{"area_scan.csv", scan_csv(rows)}, {"area_scan.json", dump(j)}};
  out.summary = summary_line("area_mean", st.mean) + summary_line("area_relative_spread", rel) +
                summary_line("area_ratio", st.mean / ellipse_area) + summary_line("k", k);
  return out;
}

RunOutput run_tangent_angle(const ScanConfig& cfg, Execution exec) {
  const std::vector<EnvelopeSample> rows = scan(cfg, exec);
  const double expected = std::abs(kPi - 2 * cfg.theta);
  double worst = 0.0;
  for (const EnvelopeSample& s : rows)
    worst = std::isnan(s.tangent_angle) ? worst : std::max(worst, std::abs(s.tangent_angle - expected));

  ordered_json j;
  j["theta"] = cfg.theta;
  j["expected"] = expected;
  j["max_deviation"] = worst;

  RunOutput out;
  out.files = {{"tangent_angle.csv", scan_csv(rows)}, {"tangent_angle.json", dump(j)}};
  out.summary = summary_line("expected", expected) + summary_line("max_deviation", worst);
  return out;
}

RunOutput run_locus(const ScanConfig& cfg, Execution exec) {
  const std::vector<EnvelopeSample> rows = scan(cfg, exec);
  const EllipseAxes e = make_ellipse(cfg.ellipse);
  const LocusReport loc = center_locus(e, cfg.theta, cfg.num_m);

  ordered_json j;
  j["theta"] = cfg.theta;
  j["point_locus"] = loc.point_locus;
  j["fregier_locus"] = loc.fregier_locus;
  j["center"] = point_json(loc.center);
  j["center_offset"] = loc.center_offset;
  if (loc.conic) {
    ordered_json m = ordered_json::array();
    for (int r = 0; r < 3; ++r)
      m.push_back(ordered_json::array(
          {loc.conic->matrix()(r, 0), loc.conic->matrix()(r, 1), loc.conic->matrix()(r, 2)}));
    j["conic"] = m;
    j["conic_class"] = std::string(to_string(loc.conic->classify()));
  }
  if (loc.axes) {
    j["locus_a"] = loc.axes->major;
    j["locus_b"] = loc.axes->minor;
    j["locus_tilt"] = loc.axes->tilt;
  }

  SvgCanvas svg(e);
  svg.ellipse(e, "black", 2.0);
  if (loc.axes) svg.ellipse(*loc.axes, "blue", 1.5);
  for (const EnvelopeSample& s : rows) {
    if (s.env.kind == EnvelopeKind::ellipse) svg.ellipse(s.env.axes, "#f0a0a0", 0.6);
    svg.dot(s.env.center, "red");
  }
  svg.dot(loc.center, "blue", "O");
  svg.caption("theta = " + format_double(cfg.theta));

  RunOutput out;
  out.files = {{"locus.csv", scan_csv(rows)}, {"locus.json", dump(j)}, {"locus.svg", svg.str()}};
  out.summary = std::string("point_locus = ") + (loc.point_locus ? "true" : "false") + "\n" +
                summary_line("center_offset", loc.center_offset);
  return out;
}

RunOutput run_poncelet(const PonceletConfig& cfg, Execution exec) {
  make_ellipse(cfg.ellipse);
  const double a = cfg.ellipse.a, b = cfg.ellipse.b;
  if (cfg.phases < 16) throw GeometryError(ErrorKind::invalid_argument, "use at least 16 phases");
  const CirclePictureConfig pic = circle_picture(a, b, find_caustic_for_period(a, b, cfg.n));
  const std::vector<double> starts = phase_angles(cfg.phases);
  const InvariantReport rep = summarize(pic, cfg.n, phase_scan(pic, cfg.n, starts, exec));

  std::string csv = "phase,sum_cos2,sum_area,sum_diag2,closure_defect\n";
  for (const PhaseSample& s : rep.samples)
    csv += format_double(s.phase) + "," + format_double(s.sums.sum_cos2) + "," + format_double(s.sums.sum_area) +
           "," + format_double(s.sums.sum_diag2) + "," + format_double(s.closure) + "\n";

  ordered_json j;
  j["a"] = a;
  j["b"] = b;
  j["n"] = cfg.n;
  j["phases"] = cfg.phases;
  j["lambda"] = pic.lambda;
  j["rho"] = pic.rho;
  j["caustic_axes"] = ordered_json::array({pic.caustic_a, pic.caustic_b});
  j["sum_cos2"] = spread_json(rep.cos2);
  j["sum_area"] = spread_json(rep.area);
  j["sum_diag2"] = spread_json(rep.diag2);
  if (rep.has_prediction) {
    j["predicted_sum_cos2"] = rep.predicted_cos2;
    j["predicted_sum_area"] = rep.predicted_area;
    j["predicted_sum_diag2"] = rep.predicted_diag2;
  }

  const PonceletOrbit o = orbit(pic, 0.0, cfg.n);
  SvgCanvas svg(Vec2(-b, -b), Vec2(b, b));
  svg.circle(Vec2::Zero(), pic.radius, "black", 2.0);
  svg.ellipse({Vec2::Zero(), pic.caustic_a, pic.caustic_b, 0.0}, "blue", 1.5);
  for (int i = 0; i < o.n; ++i) {
    svg.segment(o.vertices[static_cast<std::size_t>(i)], o.vertices[static_cast<std::size_t>((i + 1) % o.n)],
                "green", 1.5);
    svg.circle(Vec2::Zero(), o.radii[static_cast<std::size_t>(i)], "red", 1.0);
    svg.dot(o.vertices[static_cast<std::size_t>(i)], "black", "P" + std::to_string(i + 1));
  }
  svg.caption("n = " + std::to_string(cfg.n));

  RunOutput out;
  out.files = {{"poncelet.csv", csv}, {"poncelet.json", dump(j)}, {"poncelet.svg", svg.str()}};
  out.summary = summary_line("lambda", pic.lambda) + summary_line("sum_area_mean", rep.area.mean) +
                summary_line("sum_cos2_spread", rep.cos2.spread);
  if (rep.has_prediction)
    out.summary += summary_line("predicted_sum_area", rep.predicted_area) +
                   summary_line("predicted_sum_diag2", rep.predicted_diag2);
  return out;
}

RunOutput run_conjecture(const ConjectureConfig& cfg, Execution exec) {
  make_ellipse(cfg.ellipse);
  if (cfg.n_first < 3 || cfg.n_last < cfg.n_first)
    throw GeometryError(ErrorKind::invalid_argument, "n range must satisfy 3 <= first <= last");
  if (cfg.phases < 16) throw GeometryError(ErrorKind::invalid_argument, "use at least 16 phases");
  std::vector<int> ns;
  for (int n = cfg.n_first; n <= cfg.n_last; ++n) ns.push_back(n);
  const std::vector<InvariantReport> reps = conjecture_scan(cfg.ellipse.a, cfg.ellipse.b, ns, cfg.phases, exec);

  std::string rows = "n,phase,sum_cos2,sum_area,sum_diag2,closure_defect\n";
  std::string table = "n,lambda,sum_cos2_min,sum_cos2_max,sum_cos2_mean,sum_cos2_spread,sum_area_spread\n";
  ordered_json j = ordered_json::array();
  std::string summary;
  for (const InvariantReport& r : reps) {
    for (const PhaseSample& s : r.samples)
      rows += std::to_string(r.n) + "," + format_double(s.phase) + "," + format_double(s.sums.sum_cos2) + "," +
              format_double(s.sums.sum_area) + "," + format_double(s.sums.sum_diag2) + "," +
              format_double(s.closure) + "\n";
    table += std::to_string(r.n) + "," + format_double(r.lambda) + "," + format_double(r.cos2.min) + "," +
             format_double(r.cos2.max) + "," + format_double(r.cos2.mean) + "," + format_double(r.cos2.spread) +
             "," + format_double(r.area.spread) + "\n";
    j.push_back({{"n", r.n}, {"lambda", r.lambda}, {"sum_cos2", spread_json(r.cos2)},
                 {"sum_area", spread_json(r.area)}, {"sum_diag2", spread_json(r.diag2)}});
    summary += "n = " + std::to_string(r.n) + "  sum_cos2_spread = " + format_double(r.cos2.spread) + "\n";
  }

  RunOutput out;
  out.files = {{"conjecture.csv", rows}, {"conjecture_summary.csv", table}, {"conjecture.json", dump(j)}};
  out.summary = summary;
  return out;
}

RunOutput run_reverse(const ReverseConfig& cfg) {
  const EllipseAxes e = make_ellipse(cfg.ellipse);
  const Vec2 n = e.point_at(cfg.n_angle), l = e.point_at(cfg.l_angle);
  const std::vector<Vec2> sols = reverse_problem(e, n, l, cfg.theta);

  ordered_json j;
  j["theta"] = cfg.theta;
  j["n"] = point_json(n);
  j["l"] = point_json(l);
  ordered_json list = ordered_json::array();
  std::string summary = "solutions = " + std::to_string(sols.size()) + "\n";
  for (const Vec2& m : sols) {
    const double angle = unsigned_angle(n - m, l - m);
    list.push_back({{"m", point_json(m)},
                    {"m_angle", e.parameter_of(m)},
                    {"angle_residual", std::abs(angle - cfg.theta)},
                    {"ellipse_residual", std::abs(e.implicit_residual(m))}});
    summary += "m = (" + format_double(m.x()) + ", " + format_double(m.y()) + ")\n";
  }
  j["solutions"] = list;

  RunOutput out;
  out.files = {{"reverse.json", dump(j)}};
  out.summary = summary;
  return out;
}

}  // namespace fregier
