#pragma once

// The three study modes behind the command-line tool. Data files are plain CSV
// with a header line and 17 significant digits; nothing time-dependent is written
// into them except the optional `seconds` column of a sweep.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "sps/befd.hpp"
#include "sps/cli/config.hpp"
#include "sps/dynamics.hpp"
#include "sps/errors.hpp"
#include "sps/ground_state.hpp"
#include "sps/log.hpp"
#include "sps/model.hpp"

namespace sps::cli {

/// Exit codes of the tool.
enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_unconverged = 3, exit_numerical = 4 };

inline std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

/// Time label used in snapshot file names, e.g. 0, 2.5, 10.
inline std::string fmt_time_label(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", t);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header) : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << header << '\n';
  }

  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) out_ << ',';
      out_ << fmt_sci(v);
      first = false;
    }
    out_ << '\n';
  }

  void flush() { out_.flush(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

inline std::filesystem::path output_path(const RunConfig& cfg, const std::string& suffix) {
  std::filesystem::create_directories(cfg.out_dir);
  return std::filesystem::path(cfg.out_dir) / (cfg.prefix + suffix);
}

inline void write_summary(const RunConfig& cfg, const std::string& body) {
  std::ofstream out(output_path(cfg, "_summary.txt"));
  out << body << "\n# configuration\n" << cfg.echo;
}

inline void warn_if_truncated(const RealField& u) {
  const double tail = tail_mass(u, 0.5 * u.grid().radius());
  if (tail > 1e-8)
    log::warn("mass beyond R/2 is " + fmt_sci(tail) + "; the far-field condition V(R) = 1 may be inaccurate");
}

/// A ground state in psi variables on nodes j = 0..J, from either method.
struct GroundStateSolution {
  std::vector<double> psi;
  double energy = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

inline GroundStateSolution solve_ground_state(const RunConfig& cfg, Method method, const RadialGrid& grid) {
  GroundStateSolution s;
  if (method == Method::besp) {
    auto r = compute_ground_state(cfg.physics, grid, cfg.solver);
    warn_if_truncated(r.phi_u);
    s = {std::move(r.phi_psi), r.energy, r.outer_iterations, r.residual, r.converged};
  } else {
    auto r = befd_ground_state(cfg.physics, grid, cfg.solver);
    s = {std::move(r.state.phi), r.energy, r.outer_iterations, r.residual, r.converged};
  }
  return s;
}

inline const char* method_name(Method m) { return m == Method::besp ? "besp" : "befd"; }

inline int run_groundstate(const RunConfig& cfg) {
  const RadialGrid grid = cfg.grid();
  const auto t0 = std::chrono::steady_clock::now();
  const auto sol = solve_ground_state(cfg, cfg.method, grid);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  CsvWriter csv(output_path(cfg, "_phi.csv"), "r,phi_g,u");
  for (int j = 0; j <= grid.intervals(); ++j) {
    const double r = grid.node(j);
    const double u = (j == 0 || j == grid.intervals()) ? 0.0 : two_sqrt_pi * r * sol.psi[j];
    csv.row({r, sol.psi[j], u});
  }
  csv.flush();

  std::string body = "method = " + std::string(method_name(cfg.method)) + "\nenergy = " + fmt_sci(sol.energy) +
                     "\niterations = " + std::to_string(sol.iterations) + "\nresidual = " + fmt_sci(sol.residual) +
                     "\nconverged = " + (sol.converged ? "true" : "false") +
                     "\nwall_seconds = " + fmt_sci(seconds) + "\n";
  write_summary(cfg, body);
  return sol.converged ? exit_ok : exit_unconverged;
}

inline int run_evolve(const RunConfig& cfg) {
  const RadialGrid grid = cfg.grid();
  const auto t0 = std::chrono::steady_clock::now();

  ComplexField u0(grid);
  if (cfg.initial_ground_state) {
    auto gs = compute_ground_state(cfg.physics, grid, cfg.solver);
    if (!gs.converged) {
      log::warn("ground state used as initial datum did not converge");
      return exit_unconverged;
    }
    for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = gs.phi_u[i];
  } else {
    u0 = gaussian_initial<complex>(grid, cfg.initial_width);
  }

  TsspConfig tc;
  tc.dt = cfg.solver.dt;
  tc.t_final = cfg.t_final;
  tc.record_every = cfg.record_every;
  tc.snapshot_times = cfg.snapshot_times;

  CsvWriter obs(output_path(cfg, "_observables.csv"), "t,mass,energy,psi0_abs");
  EvolveHooks hooks;
  hooks.on_observable = [&](const ObservableSet& o) {
    obs.row({o.time, o.mass, o.energy, o.psi_origin_abs});
  };
  hooks.on_snapshot = [&](const Snapshot& s) {
    CsvWriter snap(output_path(cfg, "_snapshot_" + fmt_time_label(s.time) + ".csv"), "r,abs_psi,re_psi,im_psi");
    for (int j = 0; j <= grid.intervals(); ++j)
      snap.row({grid.node(j), std::abs(s.psi[j]), s.psi[j].real(), s.psi[j].imag()});
  };

  std::size_t records = 0;
  double mass_drift = 0.0, energy_drift = 0.0;
  try {
    const auto trace = evolve(u0, cfg.physics, tc, hooks);
    records = trace.observables.size();
    const auto& first = trace.observables.front();
    for (const auto& o : trace.observables) {
      mass_drift = std::max(mass_drift, std::abs(o.mass - first.mass));
      energy_drift = std::max(energy_drift, std::abs(o.energy - first.energy) / std::abs(first.energy));
    }
  } catch (...) {
    obs.flush();
    throw;
  }
  obs.flush();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string body = "steps = " + std::to_string(tc.steps()) + "\nrecords = " + std::to_string(records) +
                     "\nmax_mass_drift = " + fmt_sci(mass_drift) +
                     "\nmax_relative_energy_drift = " + fmt_sci(energy_drift) +
                     "\nwall_seconds = " + fmt_sci(seconds) + "\n";
  write_summary(cfg, body);
  return exit_ok;
}

/// Exact ground state of -Delta/2 + gamma^2 r^2/2 in 3D.
inline double harmonic_ground_state(double gamma, double r) {
  return std::pow(gamma / std::numbers::pi, 0.75) * std::exp(-0.5 * gamma * r * r);
}

inline int run_sweep(const RunConfig& cfg) {
  const double R = cfg.radius;
  auto intervals_for = [&](double h, const std::string& key) {
    const double n = R / h;
    if (std::abs(n - std::round(n)) > 1e-9 * n)
      throw ConfigError(key, "R / h_r must be an integer for h_r = " + fmt_sci(h));
    return static_cast<int>(std::lround(n));
  };

  // Benchmark on its own grid, or the closed form.
  std::vector<double> bench_psi;
  double bench_h = cfg.benchmark_h;
  double gamma = 1.0;
  if (cfg.benchmark == Benchmark::analytic) {
    const auto* h = std::get_if<ExternalPotential::Harmonic>(&cfg.physics.potential.kind());
    if (!h || cfg.physics.c_p != 0.0 || cfg.physics.alpha != 0.0)
      throw ConfigError("benchmark", "analytic benchmark needs c_p = 0, alpha = 0 and a harmonic potential");
    gamma = h->gamma;
  } else {
    const RadialGrid bgrid(R, intervals_for(bench_h, "benchmark_h"));
    const Method bm = cfg.benchmark == Benchmark::besp ? Method::besp : Method::befd;
    auto b = solve_ground_state(cfg, bm, bgrid);
    if (!b.converged) {
      log::warn("benchmark ground state did not converge");
      return exit_unconverged;
    }
    bench_psi = std::move(b.psi);
  }

  // Validate every trial before any work.
  std::vector<int> strides;
  for (double h : cfg.sweep_h) {
    const int J = intervals_for(h, "sweep_h");
    (void)RadialGrid(R, J);
    if (cfg.benchmark != Benchmark::analytic) {
      const double ratio = h / bench_h;
      if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || std::round(ratio) < 1.0)
        throw ConfigError("sweep_h", "trial mesh h_r = " + fmt_sci(h) + " does not nest on the benchmark mesh " +
                                         fmt_sci(bench_h) + "; h_r / benchmark_h must be a positive integer");
      strides.push_back(static_cast<int>(std::lround(ratio)));
    } else {
      strides.push_back(0);
    }
  }

  CsvWriter csv(output_path(cfg, "_sweep.csv"), "h_r,sup_error,l2_error,energy,seconds");
  bool all_converged = true;
  std::string body;
  for (std::size_t t = 0; t < cfg.sweep_h.size(); ++t) {
    const double h = cfg.sweep_h[t];
    const RadialGrid grid(R, intervals_for(h, "sweep_h"));
    const auto t0 = std::chrono::steady_clock::now();
    const auto sol = solve_ground_state(cfg, cfg.method, grid);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all_converged = all_converged && sol.converged;

    double sup = 0.0, l2 = 0.0;
    for (int j = 0; j <= grid.intervals(); ++j) {
      const double ref = cfg.benchmark == Benchmark::analytic
                             ? harmonic_ground_state(gamma, grid.node(j))
                             : bench_psi[static_cast<std::size_t>(j) * static_cast<std::size_t>(strides[t])];
      const double d = std::abs(sol.psi[j] - ref);
      sup = std::max(sup, d);
      l2 += d * d;
    }
    l2 = std::sqrt(grid.spacing() * l2);
    csv.row({grid.spacing(), sup, l2, sol.energy, cfg.record_timing ? seconds : 0.0});
    body += "h_r = " + fmt_sci(grid.spacing()) + ": iterations " + std::to_string(sol.iterations) + ", converged " +
            (sol.converged ? "true" : "false") + ", seconds " + fmt_sci(seconds) + "\n";
  }
  csv.flush();
  write_summary(cfg, body);
  return all_converged ? exit_ok : exit_unconverged;
}

inline int run(const RunConfig& cfg) {
  switch (cfg.mode) {
    case Mode::groundstate: return run_groundstate(cfg);
    case Mode::evolve: return run_evolve(cfg);
    case Mode::sweep: return run_sweep(cfg);
  }
  return exit_config;
}

}  // namespace sps::cli
