// fregier_cli: command line driver for the Frégier ellipse experiments.
//
// Every subcommand writes its CSV/JSON/SVG files into --out (default ".") and
// prints a short summary. Exit codes: 0 ok, 2 bad input, 3 numerical failure,
// 4 documented degeneracy.

#include "fregier/error.hpp"
#include "fregier/experiments.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

namespace {

using namespace fregier;

constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitDegenerate = 4;

struct Options {
  EllipseInput ellipse;
  double theta = kPi / 3;
  double m_angle = 0.7;
  int samples = kDefaultEnvelopeSamples;
  int num_m = 20;
  int n = 3;
  std::string n_range = "4:8";
  int phases = 32;
  double n_angle = 0.3;
  double l_angle = 2.5;
  std::string out = ".";
  std::string config;
  bool serial = false;
};

// Flag name (without dashes) -> option handle and setter from a JSON value.
struct Bound {
  CLI::Option* option;
  std::function<void(const nlohmann::json&)> assign;
};

template <class T>
void bind_flag(CLI::App& app, std::map<std::string, Bound>& table, const std::string& name, T& target,
          const std::string& help) {
  CLI::Option* opt = app.add_option("--" + name, target, help)->capture_default_str();
  table[name] = {opt, [&target](const nlohmann::json& v) { target = v.get<T>(); }};
}

void apply_config(const std::string& path, const std::map<std::string, Bound>& table) {
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorKind::invalid_argument, "cannot read config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw GeometryError(ErrorKind::invalid_argument, std::string("bad config: ") + e.what());
  }
  if (!j.is_object()) throw GeometryError(ErrorKind::invalid_argument, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw GeometryError(ErrorKind::invalid_argument, "unknown config key '" + key + "'");
    if (it->second.option->count() > 0)
      throw GeometryError(ErrorKind::invalid_argument, "'" + key + "' given both on the command line and in " + path);
    try {
      it->second.assign(value);
    } catch (const nlohmann::json::exception&) {
      throw GeometryError(ErrorKind::invalid_argument, "config key '" + key + "' has the wrong type");
    }
  }
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const int n = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {n, n};
    }
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    const int first = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    const int last = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    return {first, last};
  } catch (const std::logic_error&) {
    throw GeometryError(ErrorKind::invalid_argument, "bad n range '" + text + "', expected N or FIRST:LAST");
  }
}

void write_files(const RunOutput& out, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw GeometryError(ErrorKind::invalid_argument, "cannot create output directory " + dir);
  for (const auto& [name, content] : out.files) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw GeometryError(ErrorKind::invalid_argument, "cannot write " + path.string());
    f << content;
  }
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return kExitBadInput;
    case ErrorKind::numerical_failure: return kExitNumerical;
    case ErrorKind::degeneracy: return kExitDegenerate;
  }
  return kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frégier ellipse and Poncelet experiments"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    CLI::App* app;
    std::map<std::string, Bound> flags;
  };
  std::map<std::string, Command> commands;

  auto add = [&](const std::string& name, const std::string& help, const std::vector<std::string>& flags) {
    Command& c = commands[name];
    c.app = app.add_subcommand(name, help);
    for (const std::string& f : flags) {
      if (f == "a") bind_flag(*c.app, c.flags, f, o.ellipse.a, "major semi-axis of E");
      if (f == "b") bind_flag(*c.app, c.flags, f, o.ellipse.b, "minor semi-axis of E");
      if (f == "theta") bind_flag(*c.app, c.flags, f, o.theta, "inscribed angle at M, radians in (0, pi)");
      if (f == "m-angle") bind_flag(*c.app, c.flags, f, o.m_angle, "parametric angle of M on E");
      if (f == "samples") bind_flag(*c.app, c.flags, f, o.samples, "chords sampled per envelope fit");
      if (f == "num-m") bind_flag(*c.app, c.flags, f, o.num_m, "number of points M in the scan");
      if (f == "n") bind_flag(*c.app, c.flags, f, o.n, "orbit period");
      if (f == "n-range") {
        CLI::Option* opt = c.app->add_option("--n", o.n_range, "orbit periods, N or FIRST:LAST")->capture_default_str();
        c.flags["n"] = {opt, [&o](const nlohmann::json& v) {
                          o.n_range = v.is_number_integer() ? std::to_string(v.get<int>()) : v.get<std::string>();
                        }};
      }
      if (f == "phases") bind_flag(*c.app, c.flags, f, o.phases, "orbit start phases");
      if (f == "n-angle") bind_flag(*c.app, c.flags, f, o.n_angle, "parametric angle of N");
      if (f == "l-angle") bind_flag(*c.app, c.flags, f, o.l_angle, "parametric angle of L");
    }
    c.app->add_option("--out", o.out, "output directory")->capture_default_str();
    c.app->add_option("--config", o.config, "JSON file with flag values; conflicts with explicit flags are errors");
    c.app->add_flag("--serial", o.serial, "run scans on the serial reference path");
  };

  add("envelope", "fit the Frégier ellipse for one M", {"a", "b", "theta", "m-angle", "samples"});
  add("area-scan", "area of E' over points M", {"a", "b", "theta", "num-m", "samples"});
  add("tangent-angle", "angle subtended by E' at M over points M", {"a", "b", "theta", "num-m", "samples"});
  add("locus", "locus of the center of E'", {"a", "b", "theta", "num-m", "samples"});
  add("poncelet", "Frégier circles of Poncelet n-orbits", {"a", "b", "n", "phases"});
  add("conjecture", "invariant scan over several periods", {"a", "b", "n-range", "phases"});
  add("reverse", "points M seeing the chord NL under theta", {"a", "b", "theta", "n-angle", "l-angle"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    for (auto& [name, c] : commands) {
      if (!c.app->parsed()) continue;
      if (!o.config.empty()) apply_config(o.config, c.flags);
      const Execution exec = o.serial ? Execution::serial : Execution::parallel;
      RunOutput out;
      if (name == "envelope") out = run_envelope({o.ellipse, o.theta, o.m_angle, o.samples});
      if (name == "area-scan") out = run_area_scan({o.ellipse, o.theta, o.num_m, o.samples}, exec);
      if (name == "tangent-angle") out = run_tangent_angle({o.ellipse, o.theta, o.num_m, o.samples}, exec);
      if (name == "locus") out = run_locus({o.ellipse, o.theta, o.num_m, o.samples}, exec);
      if (name == "poncelet") out = run_poncelet({o.ellipse, o.n, o.phases}, exec);
      if (name == "conjecture") {
        const auto [first, last] = parse_range(o.n_range);
        out = run_conjecture({o.ellipse, first, last, o.phases}, exec);
      }
      if (name == "reverse") out = run_reverse({o.ellipse, o.theta, o.n_angle, o.l_angle});
      write_files(out, o.out);
      std::cout << out.summary;
    }
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
