#include "fregier/scan.hpp"

#include "fregier/parallel.hpp"

#include <exception>
#include <limits>

namespace fregier {

std::vector<EnvelopeSample> envelope_scan(const EllipseAxes& e, double theta, std::span<const double> m_params,
                                          Execution exec, int samples) {
  std::vector<EnvelopeSample> out(m_params.size());
  for_each_index(m_params.size(), exec, [&](std::size_t i) {
    EnvelopeSample& s = out[i];
    s.m_param = m_params[i];
    s.m = e.point_at(s.m_param);
    s.env = fit_envelope(e, s.m, theta, samples);
    s.tangent_angle = s.env.kind == EnvelopeKind::ellipse ? tangent_angle(s.env, s.m)
                                                          : std::numeric_limits<double>::quiet_NaN();
  });
  return out;
}

std::vector<PhaseSample> phase_scan(const CirclePictureConfig& cfg, int n, std::span<const double> phases,
                                    Execution exec) {
  std::vector<PhaseSample> out(phases.size());
  for_each_index(phases.size(), exec, [&](std::size_t i) {
    const PonceletOrbit o = orbit(cfg, phases[i], n);
    out[i] = {phases[i], invariant_sums(o), o.closure};
  });
  return out;
}

std::vector<InvariantReport> conjecture_scan(double a, double b, std::span<const int> ns, int phases,
                                             Execution exec) {
  const std::vector<double> starts = phase_angles(phases);
  std::vector<InvariantReport> out;
  for (int n : ns) {
    const CirclePictureConfig cfg = circle_picture(a, b, find_caustic_for_period(a, b, n));
    out.push_back(summarize(cfg, n, phase_scan(cfg, n, starts, exec)));
  }
  return out;
}

}  // namespace fregier
