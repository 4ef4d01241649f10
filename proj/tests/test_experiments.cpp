#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fregier/error.hpp"
#include "fregier/experiments.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>

using namespace fregier;
using nlohmann::json;

namespace {

const std::string& file(const RunOutput& out, const std::string& name) {
  for (const auto& [n, content] : out.files)
    if (n == name) return content;
  FAIL("missing output file " << name);
  static const std::string none;
  return none;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("expected GeometryError");
  return ErrorKind::invalid_argument;
}

void check_deterministic(const RunOutput& x, const RunOutput& y) {
  REQUIRE(x.files.size() == y.files.size());
  for (std::size_t i = 0; i < x.files.size(); ++i) {
    CHECK(x.files[i].first == y.files[i].first);
    CHECK(x.files[i].second == y.files[i].second);
  }
  CHECK(x.summary == y.summary);
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(std::stod(format_double(kPi)) == kPi);
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("scan_parameters and make_ellipse") {
  const auto p = scan_parameters(4);
  REQUIRE(p.size() == 4);
  CHECK(p[0] == doctest::Approx(kPi / 8));
  CHECK(p[3] == doctest::Approx(2 * kPi * 3.25 / 4));
  CHECK(kind_of([] { scan_parameters(0); }) == ErrorKind::invalid_argument);
  CHECK(make_ellipse({3, 2}).major == 3);
  CHECK(kind_of([] { make_ellipse({1, 2}); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { make_ellipse({1, 0}); }) == ErrorKind::invalid_argument);
}

TEST_CASE("envelope run") {
  const RunOutput a = run_envelope({});
  check_deterministic(a, run_envelope({}));
  const json j = json::parse(file(a, "envelope.json"));
  CHECK(j["classification"] == "ellipse");
  CHECK(j["area"].get<double>() > 0);
  const std::string& svg = file(a, "envelope.svg");
  CHECK(svg.find("viewBox=\"0 0 1000 700\"") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK_FALSE(a.summary.empty());

  const json right = json::parse(file(run_envelope({{2, 1}, kPi / 2, 0.7}), "envelope.json"));
  CHECK(right["classification"] == "point");
  CHECK(right["tangent_angle"].is_null());

  const json circle = json::parse(file(run_envelope({{1, 1}, kPi / 3, 0.7}), "envelope.json"));
  CHECK(circle["a1"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));

  CHECK(kind_of([] { run_envelope({{2, 1}, 0.0, 0.7}); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { run_envelope({{2, 1}, kPi, 0.7}); }) == ErrorKind::invalid_argument);
}

TEST_CASE("scan runs") {
  ScanConfig cfg;
  cfg.num_m = 12;
  for (auto run : {run_area_scan, run_tangent_angle, run_locus}) {
    const RunOutput s = run(cfg, Execution::serial);
    check_deterministic(s, run(cfg, Execution::parallel));
    check_deterministic(s, run(cfg, Execution::parallel));
    for (const auto& [name, content] : s.files) {
      if (name.ends_with(".json")) CHECK_FALSE(json::parse(content).is_discarded());
      if (name.ends_with(".csv")) CHECK(line_count(content) == 13);
    }
  }
  const RunOutput area = run_area_scan(cfg);
  CHECK(first_line(file(area, "area_scan.csv")) == "m_angle,kx,ky,a1,b1,area,tangent_angle");
  std::istringstream rows(file(area, "area_scan.csv"));
  std::string line;
  std::getline(rows, line);
  std::getline(rows, line);
  // full round-trip precision
  CHECK(line.substr(0, line.find(',')) == format_double(scan_parameters(12)[0]));
  CHECK(kind_of([] { run_area_scan({{2, 1}, kPi / 3, 0}); }) == ErrorKind::invalid_argument);
}

TEST_CASE("poncelet and conjecture runs") {
  PonceletConfig pc;
  pc.phases = 16;
  const RunOutput p = run_poncelet(pc, Execution::serial);
  check_deterministic(p, run_poncelet(pc, Execution::parallel));
  CHECK(first_line(file(p, "poncelet.csv")) == "phase,sum_cos2,sum_area,sum_diag2,closure_defect");
  CHECK(line_count(file(p, "poncelet.csv")) == 17);
  const json pj = json::parse(file(p, "poncelet.json"));
  CHECK_FALSE(pj.empty());
  CHECK(file(p, "poncelet.svg").find("viewBox=\"0 0 1000 700\"") != std::string::npos);
  CHECK(kind_of([] { run_poncelet({{2, 1}, 3, 8}); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { run_poncelet({{2, 1}, 2, 32}); }) == ErrorKind::invalid_argument);

  ConjectureConfig cc;
  cc.n_first = 4;
  cc.n_last = 5;
  cc.phases = 16;
  const RunOutput c = run_conjecture(cc, Execution::serial);
  check_deterministic(c, run_conjecture(cc, Execution::parallel));
  CHECK(line_count(file(c, "conjecture_summary.csv")) == 3);
  CHECK_FALSE(json::parse(file(c, "conjecture.json")).is_discarded());
  CHECK(kind_of([] { run_conjecture({{2, 1}, 6, 5, 32}); }) == ErrorKind::invalid_argument);
}

TEST_CASE("reverse run") {
  const RunOutput r = run_reverse({});
  check_deterministic(r, run_reverse({}));
  const json j = json::parse(file(r, "reverse.json"));
  CHECK_FALSE(j.empty());
  CHECK(kind_of([] { run_reverse({{2, 1}, -1.0, 0.3, 2.5}); }) == ErrorKind::invalid_argument);
}
