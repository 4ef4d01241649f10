#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fregier/error.hpp"
#include "fregier/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

using namespace fregier;

namespace {

bool same(double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; }

std::vector<double> params(int count) {
  std::vector<double> out;
  for (int j = 0; j < count; ++j) out.push_back(2 * kPi * (j + 0.25) / count);
  return out;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("envelope_scan serial and parallel agree exactly") {
  const EllipseAxes e{Vec2(0.3, -0.2), 2, 1, 0.4};
  const std::vector<double> m = params(40);
  for (double theta : {kPi / 3, 1.0, kPi / 2}) {
    const auto s = envelope_scan(e, theta, m, Execution::serial);
    const auto p = envelope_scan(e, theta, m, Execution::parallel);
    REQUIRE(s.size() == m.size());
    REQUIRE(p.size() == m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      CHECK(s[i].m_param == m[i]);
      CHECK(p[i].m == s[i].m);
      CHECK(p[i].env.kind == s[i].env.kind);
      CHECK(p[i].env.center == s[i].env.center);
      CHECK(same(p[i].env.area, s[i].env.area));
      CHECK(same(p[i].tangent_angle, s[i].tangent_angle));
    }
  }
  CHECK(std::isnan(envelope_scan(e, kPi / 2, params(1), Execution::serial).front().tangent_angle));
  CHECK(envelope_scan(e, kPi / 3, std::span<const double>{}, Execution::parallel).empty());
}

TEST_CASE("phase_scan serial and parallel agree exactly") {
  const CirclePictureConfig cfg = circle_picture(2, 1, find_caustic_for_period(2, 1, 5));
  const std::vector<double> ph = phase_angles(64);
  const auto s = phase_scan(cfg, 5, ph, Execution::serial);
  const auto p = phase_scan(cfg, 5, ph, Execution::parallel);
  REQUIRE(s.size() == 64);
  REQUIRE(p.size() == 64);
  for (std::size_t i = 0; i < ph.size(); ++i) {
    CHECK(s[i].phase == ph[i]);
    CHECK(p[i].phase == s[i].phase);
    CHECK(p[i].sums.sum_cos2 == s[i].sums.sum_cos2);
    CHECK(p[i].sums.sum_area == s[i].sums.sum_area);
    CHECK(p[i].sums.sum_diag2 == s[i].sums.sum_diag2);
    CHECK(p[i].closure == s[i].closure);
  }
}

TEST_CASE("conjecture_scan serial and parallel agree exactly") {
  const std::vector<int> ns{3, 4, 6};
  const auto s = conjecture_scan(1.5, 1, ns, 24, Execution::serial);
  const auto p = conjecture_scan(1.5, 1, ns, 24, Execution::parallel);
  REQUIRE(s.size() == 3);
  REQUIRE(p.size() == 3);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    CHECK(s[k].n == ns[k]);
    CHECK(p[k].lambda == s[k].lambda);
    CHECK(p[k].cos2.mean == s[k].cos2.mean);
    CHECK(p[k].cos2.spread == s[k].cos2.spread);
    CHECK(p[k].diag2.mean == s[k].diag2.mean);
    CHECK(p[k].area.spread == s[k].area.spread);
  }
}

TEST_CASE("for_each_index") {
  for (Execution exec : {Execution::serial, Execution::parallel}) {
    std::vector<int> hits(200, 0);
    for_each_index(hits.size(), exec, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 200);

    for (int rep = 0; rep < 5; ++rep) {
      std::vector<int> ran(200, 0);
      std::string what;
      try {
        for_each_index(ran.size(), exec, [&](std::size_t i) {
          ran[i] = 1;
          if (i == 37 || i == 150 || i == 199) throw std::runtime_error("index " + std::to_string(i));
        });
      } catch (const std::runtime_error& e) {
        what = e.what();
      }
      CHECK(what == "index 37");
      CHECK(std::count(ran.begin(), ran.end(), 1) == 200);
    }
  }
}

TEST_CASE("scan failures propagate") {
  const EllipseAxes e{Vec2::Zero(), 2, 1, 0};
  std::vector<double> m = params(32);
  m[5] = std::numeric_limits<double>::quiet_NaN();
  m[20] = std::numeric_limits<double>::infinity();
  const std::string serial = message_of([&] { envelope_scan(e, kPi / 3, m, Execution::serial); });
  CHECK_FALSE(serial.empty());
  for (int rep = 0; rep < 5; ++rep)
    CHECK(message_of([&] { envelope_scan(e, kPi / 3, m, Execution::parallel); }) == serial);

  const CirclePictureConfig untuned = circle_picture(2, 1, 0.5);
  const std::vector<double> ph = phase_angles(16);
  CHECK_THROWS_AS(phase_scan(untuned, 3, ph, Execution::parallel), GeometryError);
  const std::vector<int> bad{4, 2};
  CHECK_THROWS_AS(conjecture_scan(2, 1, bad, 16, Execution::parallel), GeometryError);
}
