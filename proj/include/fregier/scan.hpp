#pragma once

// Parameter scans over points M on the ellipse and over orbit phases. Each scan
// has a serial reference path and an OpenMP path; both return results in input
// order and must agree exactly.

#include "fregier/envelope.hpp"
#include "fregier/parallel.hpp"
#include "fregier/poncelet.hpp"

#include <span>
#include <vector>

namespace fregier {

struct EnvelopeSample {
  double m_param = 0.0;
  Vec2 m = Vec2::Zero();
  EnvelopeResult env;
  double tangent_angle = 0.0;  ///< NaN unless env.kind == ellipse
};

/// One envelope fit per parametric angle of M. The lowest-index failure is rethrown.
std::vector<EnvelopeSample> envelope_scan(const EllipseAxes& e, double theta, std::span<const double> m_params,
                                          Execution exec, int samples = kDefaultEnvelopeSamples);

/// Invariant sums of the orbit started at each phase.
std::vector<PhaseSample> phase_scan(const CirclePictureConfig& cfg, int n, std::span<const double> phases,
                                    Execution exec);

/// For each n: find the caustic, scan `phases` evenly spaced starts, summarize.
std::vector<InvariantReport> conjecture_scan(double a, double b, std::span<const int> ns, int phases,
                                             Execution exec);

}  // namespace fregier
