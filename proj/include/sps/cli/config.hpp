#pragma once

// Run configuration: `key = value` text, one pair per line, '#' comments,
// overridden by command-line settings. Every key has a default; unknown keys
// are rejected, and errors name the key and where it was set.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sps/errors.hpp"
#include "sps/gradient_flow.hpp"
#include "sps/grid.hpp"
#include "sps/log.hpp"
#include "sps/model.hpp"

namespace sps::cli {

enum class Mode { groundstate, evolve, sweep };
enum class Method { besp, befd };
enum class Benchmark { besp, befd, analytic };

struct RunConfig {
  Mode mode = Mode::groundstate;
  PhysicsParams physics;
  double radius = 8.0;
  int intervals = 128;
  GfdnConfig solver;
  double t_final = 10.0;
  int record_every = 10;
  std::vector<double> snapshot_times;
  double initial_width = 1.0;  ///< sigma of the Gaussian initial datum
  bool initial_ground_state = false;
  std::string out_dir = ".";
  std::string prefix = "sps";
  Method method = Method::besp;
  std::vector<double> sweep_h;
  Benchmark benchmark = Benchmark::befd;
  double benchmark_h = 1.0 / 64.0;
  bool record_timing = true;

  /// Canonical `key = value` listing of every setting, for summaries.
  std::string echo;

  RadialGrid grid() const { return RadialGrid(radius, intervals); }
};

namespace detail {

struct Setting {
  std::string value;
  std::string origin;  // "default", "<file>:<line>", or "command line"
};

// Order fixes the echo layout.
inline const std::vector<std::pair<std::string, std::string>>& default_settings() {
  static const std::vector<std::pair<std::string, std::string>> d = {
      {"mode", "groundstate"},
      {"c_p", "100"},
      {"alpha", "1"},
      {"potential", "harmonic:1"},
      {"R", "8"},
      {"J", "128"},
      {"h_r", ""},
      {"dt", "0.01"},
      {"tol_outer", "1e-10"},
      {"tol_inner", "1e-12"},
      {"max_outer", "200000"},
      {"max_inner", "500"},
      {"t_final", "10"},
      {"record_every", "10"},
      {"snapshot_times", ""},
      {"initial", "gaussian:1"},
      {"out_dir", "."},
      {"prefix", "sps"},
      {"method", "besp"},
      {"sweep_h", "1, 1/2, 1/4, 1/8"},
      {"benchmark", "befd"},
      {"benchmark_h", "1/64"},
      {"record_timing", "true"},
  };
  return d;
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_plain_double(std::string_view s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size()) return std::nullopt;
  return v;
}

/// A real number, optionally written as a fraction "a/b".
inline std::optional<double> parse_number(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_plain_double(s);
  auto num = parse_plain_double(s.substr(0, slash));
  auto den = parse_plain_double(s.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

inline std::optional<long long> parse_integer(std::string_view s) {
  const std::string t = trim(s);
  long long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || p != t.data() + t.size()) return std::nullopt;
  return v;
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is{std::string(s)};
  while (std::getline(is, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

inline std::vector<double> read_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("potential", "cannot open tabulated potential file '" + path + "'");
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    const std::string t = trim(std::string_view(line).substr(0, hash));
    if (t.empty()) continue;
    auto v = parse_plain_double(t);
    if (!v) throw ConfigError("potential", "bad number '" + t + "' in '" + path + "'");
    values.push_back(*v);
  }
  return values;
}

}  // namespace detail

/// Collects settings from text sources before they are validated.
class ConfigBuilder {
 public:
  ConfigBuilder() {
    for (const auto& [k, v] : detail::default_settings()) settings_[k] = {v, "default"};
  }

  /// Parses `key = value` lines. `source` names the text in error messages.
  void add_text(std::string_view text, const std::string& source) {
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      const std::string where = source + ":" + std::to_string(lineno);
      const auto hash = line.find('#');
      const std::string body = detail::trim(std::string_view(line).substr(0, hash));
      if (body.empty()) continue;
      const auto eq = body.find('=');
      if (eq == std::string::npos) throw ConfigError("line", where + ": expected 'key = value', got '" + body + "'");
      set(detail::trim(std::string_view(body).substr(0, eq)), detail::trim(std::string_view(body).substr(eq + 1)),
          where);
    }
  }

  void add_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    add_text(ss.str(), path);
  }

  /// One `key=value` override from the command line.
  void add_override(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("--set", "expected key=value, got '" + std::string(assignment) + "'");
    set(detail::trim(assignment.substr(0, eq)), detail::trim(assignment.substr(eq + 1)), "command line");
  }

  void set(const std::string& key, const std::string& value, const std::string& origin) {
    auto it = settings_.find(key);
    if (it == settings_.end()) throw ConfigError(key, origin + ": unknown key '" + key + "'");
    it->second = {value, origin};
  }

  /// Converts and validates every setting.
  RunConfig build() const {
    RunConfig c;
    const auto& s = settings_;
    auto fail = [&](const std::string& key, const std::string& msg) -> ConfigError {
      return ConfigError(key, s.at(key).origin + ": " + key + " = '" + s.at(key).value + "': " + msg);
    };
    auto number = [&](const std::string& key) {
      auto v = detail::parse_number(s.at(key).value);
      if (!v || !std::isfinite(*v)) throw fail(key, "not a number");
      return *v;
    };
    auto integer = [&](const std::string& key) {
      auto v = detail::parse_integer(s.at(key).value);
      if (!v || *v < std::numeric_limits<int>::min() || *v > std::numeric_limits<int>::max()) throw fail(key, "not an integer");
      return static_cast<int>(*v);
    };
    auto numbers = [&](const std::string& key) {
      std::vector<double> out;
      for (const auto& item : detail::split_list(s.at(key).value)) {
        auto v = detail::parse_number(item);
        if (!v || !std::isfinite(*v)) throw fail(key, "bad list entry '" + item + "'");
        out.push_back(*v);
      }
      return out;
    };
    auto str = [&](const std::string& key) { return s.at(key).value; };

    const std::string mode = str("mode");
    if (mode == "groundstate") c.mode = Mode::groundstate;
    else if (mode == "evolve") c.mode = Mode::evolve;
    else if (mode == "sweep") c.mode = Mode::sweep;
    else throw fail("mode", "expected groundstate, evolve or sweep");

    c.physics.c_p = number("c_p");
    c.physics.alpha = number("alpha");

    c.radius = number("R");
    if (str("h_r").empty()) {
      c.intervals = integer("J");
    } else {
      const double h = number("h_r");
      if (!(h > 0.0)) throw fail("h_r", "must be positive");
      const double n = c.radius / h;
      if (std::abs(n - std::round(n)) > 1e-9 * n) throw fail("h_r", "R / h_r must be an integer");
      c.intervals = static_cast<int>(std::lround(n));
    }
    try {
      (void)c.grid();
    } catch (const ConfigError& e) {
      const std::string key = (e.field() == "J" && !str("h_r").empty()) ? "h_r" : e.field();
      throw fail(key, e.message());
    }

    auto parse_potential = [&]() {
      const std::string pot = str("potential");
      if (pot == "zero") return ExternalPotential::zero();
      if (pot == "harmonic") return ExternalPotential::harmonic(1.0);
      if (pot.rfind("harmonic:", 0) == 0) {
        auto g = detail::parse_number(std::string_view(pot).substr(9));
        if (!g) throw ConfigError("potential", "bad harmonic frequency");
        return ExternalPotential::harmonic(*g);
      }
      if (pot.rfind("tabulated:", 0) == 0) {
        auto tab = ExternalPotential::tabulated(detail::read_tabulated(pot.substr(10)));
        (void)tab.sample_nodes(c.grid());
        return tab;
      }
      throw ConfigError("potential", "expected zero, harmonic[:gamma] or tabulated:<file>");
    };
    try {
      c.physics.potential = parse_potential();
    } catch (const ConfigError& e) {
      throw fail("potential", e.message());
    }

    c.solver.dt = number("dt");
    c.solver.tol_outer = number("tol_outer");
    c.solver.tol_inner = number("tol_inner");
    c.solver.max_outer = integer("max_outer");
    c.solver.max_inner = integer("max_inner");
    try {
      c.solver.validate();
    } catch (const ConfigError& e) {
      throw fail(e.field(), e.message());
    }

    c.t_final = number("t_final");
    if (!(c.t_final >= 0.0)) throw fail("t_final", "must be nonnegative");
    c.record_every = integer("record_every");
    if (c.record_every < 1) throw fail("record_every", "must be at least 1");
    c.snapshot_times = numbers("snapshot_times");
    for (double t : c.snapshot_times)
      if (t < 0.0 || t > c.t_final) throw fail("snapshot_times", "times must lie in [0, t_final]");

    const std::string init = str("initial");
    if (init == "groundstate") {
      c.initial_ground_state = true;
    } else if (init == "gaussian" || init.rfind("gaussian:", 0) == 0) {
      if (init.size() > 8) {
        auto w = detail::parse_number(std::string_view(init).substr(9));
        if (!w || !(*w > 0.0)) throw fail("initial", "Gaussian width must be a positive number");
        c.initial_width = *w;
      }
    } else {
      throw fail("initial", "expected gaussian[:sigma] or groundstate");
    }

    c.out_dir = str("out_dir");
    c.prefix = str("prefix");
    if (c.prefix.empty() || c.prefix.find('/') != std::string::npos)
      throw fail("prefix", "must be a non-empty file name prefix");

    const std::string method = str("method");
    if (method == "besp") c.method = Method::besp;
    else if (method == "befd") c.method = Method::befd;
    else throw fail("method", "expected besp or befd");

    c.sweep_h = numbers("sweep_h");
    for (double h : c.sweep_h)
      if (!(h > 0.0)) throw fail("sweep_h", "mesh sizes must be positive");
    if (c.mode == Mode::sweep && c.sweep_h.empty()) throw fail("sweep_h", "sweep needs at least one mesh size");

    const std::string bench = str("benchmark");
    if (bench == "befd") c.benchmark = Benchmark::befd;
    else if (bench == "besp") c.benchmark = Benchmark::besp;
    else if (bench == "analytic") c.benchmark = Benchmark::analytic;
    else throw fail("benchmark", "expected befd, besp or analytic");
    c.benchmark_h = number("benchmark_h");
    if (!(c.benchmark_h > 0.0)) throw fail("benchmark_h", "must be positive");

    const std::string timing = str("record_timing");
    if (timing == "true" || timing == "1") c.record_timing = true;
    else if (timing == "false" || timing == "0") c.record_timing = false;
    else throw fail("record_timing", "expected true or false");

    std::ostringstream echo;
    for (const auto& [key, def] : detail::default_settings()) {
      const auto& st = s.at(key);
      echo << key << " = " << st.value;
      if (st.origin == "default") echo << "  # default";
      echo << '\n';
    }
    c.echo = echo.str();
    return c;
  }

  /// Logs every setting still at its default.
  void log_defaults() const {
    for (const auto& [key, def] : detail::default_settings())
      if (settings_.at(key).origin == "default") log::info("default " + key + " = " + def);
  }

 private:
  std::map<std::string, detail::Setting> settings_;
};

/// Reads `path` (may be empty) and applies `overrides` (`key=value` each).
inline RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
  ConfigBuilder b;
  if (!path.empty()) b.add_file(path);
  for (const auto& o : overrides) b.add_override(o);
  b.log_defaults();
  return b.build();
}

}  // namespace sps::cli
