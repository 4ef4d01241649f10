#pragma once

// Experiment drivers behind the command line tool. Each run returns the files
// it would write (name and content) plus a short human summary, so output is
// testable for determinism without touching the filesystem.

#include "fregier/scan.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fregier {

struct EllipseInput {
  double a = 2.0;
  double b = 1.0;
};

struct EnvelopeConfig {
  EllipseInput ellipse;
  double theta = kPi / 3;
  double m_angle = 0.7;
  int samples = kDefaultEnvelopeSamples;
};

struct ScanConfig {
  EllipseInput ellipse;
  double theta = kPi / 3;
  int num_m = 20;
  int samples = kDefaultEnvelopeSamples;
};

struct PonceletConfig {
  EllipseInput ellipse;
  int n = 3;
  int phases = 32;
};

struct ConjectureConfig {
  EllipseInput ellipse;
  int n_first = 4;
  int n_last = 8;
  int phases = 32;
};

struct ReverseConfig {
  EllipseInput ellipse;
  double theta = kPi / 3;
  double n_angle = 0.3;
  double l_angle = 2.5;
};

struct RunOutput {
  std::vector<std::pair<std::string, std::string>> files;
  std::string summary;
};

/// Throws GeometryError(invalid_argument) unless a >= b > 0.
EllipseAxes make_ellipse(const EllipseInput& in);

/// "%.17g", with "nan"/"inf" spelled out.
std::string format_double(double v);

/// M parameters 2 pi (j + 0.25) / count, away from the axis vertices.
std::vector<double> scan_parameters(int count);

RunOutput run_envelope(const EnvelopeConfig& cfg);
RunOutput run_area_scan(const ScanConfig& cfg, Execution exec = Execution::parallel);
RunOutput run_tangent_angle(const ScanConfig& cfg, Execution exec = Execution::parallel);
RunOutput run_locus(const ScanConfig& cfg, Execution exec = Execution::parallel);
RunOutput run_poncelet(const PonceletConfig& cfg, Execution exec = Execution::parallel);
RunOutput run_conjecture(const ConjectureConfig& cfg, Execution exec = Execution::parallel);
RunOutput run_reverse(const ReverseConfig& cfg);

}  // namespace fregier
