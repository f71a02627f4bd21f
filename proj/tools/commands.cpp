#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "ersim/errors.hpp"
#include "ersim/intensity.hpp"
#include "ersim/oracle.hpp"
#include "ersim/spinwave.hpp"
#include "ersim/version.hpp"

namespace fs = std::filesystem;

namespace ersim::cli {

namespace {

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_row(header);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  void write_numbers(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    write_row(cells);
  }

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("write failed: " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

// Collects outputs of one command and writes manifest.txt once they exist.
class Manifest {
 public:
  Manifest(std::string scenario, const GlobalOptions& g)
      : scenario_(std::move(scenario)), dir_(g.out_dir), tol_(g.tolerances()),
        start_(std::chrono::steady_clock::now()) {
    fs::create_directories(dir_);
  }

  fs::path output(const std::string& name) {
    outputs_.push_back(name);
    return dir_ / name;
  }

  void set(const std::string& key, const std::string& value) { extra_.emplace_back(key, value); }

  void echo(const Config& cfg) {
    for (const auto& [k, v] : cfg) set("config." + k, v);
  }

  void commit() const {
    std::ostringstream body;
    body << "scenario = " << scenario_ << '\n';
    body << "version = " << kVersion << '\n';
    body << "outputs = ";
    for (std::size_t i = 0; i < outputs_.size(); ++i) body << (i ? ", " : "") << outputs_[i];
    body << '\n';
    body << "quad_tol.history = " << format_number(tol_.history) << '\n';
    body << "quad_tol.density = " << format_number(tol_.density) << '\n';
    body << "quad_tol.inner = " << format_number(tol_.inner) << '\n';
    body << "quad_tol.outer = " << format_number(tol_.outer) << '\n';
    for (const auto& [k, v] : extra_) body << k << " = " << v << '\n';
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    body << "wall_seconds = " << label(seconds) << '\n';

    for (const auto& name : outputs_) {
      if (!fs::exists(dir_ / name)) throw std::runtime_error("missing output " + name);
    }
    const fs::path tmp = dir_ / "manifest.txt.tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << body.str();
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, dir_ / "manifest.txt");
  }

 private:
  std::string scenario_;
  fs::path dir_;
  quad::Tolerances tol_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> outputs_;
  std::vector<std::pair<std::string, std::string>> extra_;
};

Config load_config(const GlobalOptions& g, const Config& fallback) {
  return g.config_path ? read_config_file(*g.config_path) : fallback;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + label(xs[i]);
  return s;
}

}  // namespace

quad::Tolerances GlobalOptions::tolerances() const {
  return quad_tol ? quad::Tolerances::with_outer(*quad_tol) : quad::Tolerances{};
}

Config smoke_config() {
  return {
      {"w0", "1"},
      {"optical_depth_1", "6"},
      {"pump_ratio", "0.8"},
      {"delta_big_hz", "1.2e9"},
      {"delta_small_hz", "1.2e9"},
      {"gamma_s_hz", "1e4"},
      {"gamma_1_hz", "5.746e6"},
      {"gamma_2_hz", "5.746e6"},
      {"omega_1_hz", "1.4637e8"},
      {"pulse_shape", "constant"},
  };
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_fig2(const GlobalOptions& g, const Fig2Options& o, std::ostream& log) {
  if (o.z_points < 2) throw ConfigError("z-points", "need at least 2 points");
  const auto tol = g.tolerances();
  Manifest manifest("fig2", g);
  std::vector<std::string> header{"z_norm"};
  for (double zeta : o.zeta1) header.push_back("n_zeta" + label(zeta));
  CsvWriter csv(manifest.output("fig2.csv"), header);
  for (int i = 0; i < o.z_points; ++i) {
    const double z = static_cast<double>(i) / (o.z_points - 1);
    std::vector<double> row{z};
    for (double zeta : o.zeta1) row.push_back(flipped_density(z, zeta, o.a, tol.density));
    csv.write_numbers(row);
  }
  csv.close();
  manifest.set("zeta1", join(o.zeta1));
  manifest.set("a", label(o.a));
  manifest.set("z_points", std::to_string(o.z_points));
  manifest.commit();
  log << "fig2: wrote " << o.z_points << " rows\n";
  return kExitOk;
}

int cmd_fig3(const GlobalOptions& g, const Fig3Options& o, std::ostream& log) {
  if (o.strength_points < 1 || !(o.strength_max > 0.0)) {
    throw ConfigError("strength-max", "strength grid must be positive");
  }
  const auto tol = g.tolerances();
  Manifest manifest("fig3", g);
  std::vector<SpinCorrelation> densities;
  std::vector<std::string> header{"strength"};
  for (double zeta : o.zeta1) {
    auto d = flipped_density_profile(zeta, o.a, tol.density);
    // Feeding the reflected density swaps the roles of co and counter.
    densities.push_back(o.swap_geometry ? map_geometry(d, Geometry::Counter) : d);
    header.push_back("ratio_zeta" + label(zeta));
  }
  CsvWriter csv(manifest.output("fig3.csv"), header);
  int omitted = 0;
  for (int i = 1; i <= o.strength_points; ++i) {
    const double s = o.strength_max * i / o.strength_points;
    std::vector<double> row{s};
    try {
      for (const auto& d : densities) row.push_back(enhancement_ratio(s, d, tol));
    } catch (const NumericalError& e) {
      log << "warning: fig3 row omitted: " << e.what() << '\n';
      ++omitted;
      continue;
    }
    csv.write_numbers(row);
  }
  csv.close();
  manifest.set("zeta1", join(o.zeta1));
  manifest.set("a", label(o.a));
  manifest.set("strength_max", label(o.strength_max));
  manifest.set("strength_points", std::to_string(o.strength_points));
  manifest.set("swap_geometry", o.swap_geometry ? "true" : "false");
  manifest.set("omitted_rows", std::to_string(omitted));
  manifest.commit();
  log << "fig3: wrote " << o.strength_points - omitted << " rows\n";
  return kExitOk;
}

int cmd_fig4(const GlobalOptions& g, const Fig4Options& o, std::ostream& log) {
  const Config cfg = load_config(g, default_config());
  ModelParams params = build_params(cfg);
  if (o.write1_off) params = params.without_write1();
  const auto tol = g.tolerances();
  const auto times = uniform_times(g.time_points);
  const PulseShape shape = params.pulse_shape;

  auto urs = std::async(std::launch::async, [&] { return urs_trace(params, shape, times, tol); });
  auto co = std::async(std::launch::async,
                       [&] { return ers_trace(params, shape, Geometry::Co, times, tol); });
  auto counter = std::async(std::launch::async,
                            [&] { return ers_trace(params, shape, Geometry::Counter, times, tol); });
  const IntensityTrace u = urs.get();
  const IntensityTrace traces[] = {co.get(), counter.get()};

  Manifest manifest("fig4", g);
  for (const auto& tr : traces) {
    const std::string name = std::string("fig4_") + to_string(tr.geometry) + ".csv";
    CsvWriter csv(manifest.output(name), {"t_norm", "urs", "ers_total", "vacuum_part", "seed_part"});
    for (std::size_t i = 0; i < tr.size(); ++i) {
      csv.write_numbers({tr.times[i], u.total[i], tr.total[i], tr.vacuum_part[i], tr.seed_part[i]});
    }
    csv.close();
  }
  manifest.echo(cfg);
  manifest.set("write1_off", o.write1_off ? "true" : "false");
  manifest.set("time_points", std::to_string(g.time_points));
  manifest.set("normalization", kIntensityNormalization);
  manifest.commit();
  log << "fig4: wrote " << times.size() << " rows per geometry\n";
  return kExitOk;
}

int cmd_run(const GlobalOptions& g, const RunOptions& o, std::ostream& log) {
  const Config cfg = load_config(g, default_config());
  ModelParams params = build_params(cfg);
  if (o.write1_off) params = params.without_write1();
  const auto tol = g.tolerances();
  const auto times = uniform_times(g.time_points);

  IntensityTrace trace;
  if (o.geometry == "none") {
    trace = urs_trace(params, params.pulse_shape, times, tol);
  } else if (o.geometry == "co" || o.geometry == "counter") {
    const Geometry geom = o.geometry == "co" ? Geometry::Co : Geometry::Counter;
    trace = ers_trace(params, params.pulse_shape, geom, times, tol);
  } else {
    throw ConfigError("geometry", "expected co, counter or none, got '" + o.geometry + "'");
  }

  Manifest manifest("run", g);
  CsvWriter csv(manifest.output("run.csv"), {"t_norm", "total", "vacuum_part", "seed_part", "geometry"});
  for (std::size_t i = 0; i < trace.size(); ++i) {
    csv.write_row({format_number(trace.times[i]), format_number(trace.total[i]),
                   format_number(trace.vacuum_part[i]), format_number(trace.seed_part[i]),
                   to_string(trace.geometry)});
  }
  csv.close();
  manifest.echo(cfg);
  manifest.set("geometry", o.geometry);
  manifest.set("write1_off", o.write1_off ? "true" : "false");
  manifest.set("time_points", std::to_string(g.time_points));
  manifest.set("normalization", kIntensityNormalization);
  manifest.commit();
  log << "run: wrote " << trace.size() << " rows\n";
  return kExitOk;
}

int cmd_verify(const GlobalOptions& g, const VerifyOptions& o, std::ostream& log) {
  const Config cfg = load_config(g, smoke_config());
  const ModelParams params = build_params(cfg);
  const auto tol = g.tolerances();
  const auto times = uniform_times(g.time_points);
  const PulseShape shape = params.pulse_shape;
  if (o.steps < 1) throw ConfigError("steps", "must be >= 1");
  const oracle::OracleOptions opts{o.cells, 1.0 / o.steps, g.time_points, {}};

  struct Scenario {
    std::string name;
    ModelParams params;
    std::optional<Geometry> geometry;
  };
  const std::vector<Scenario> scenarios = {
      {"urs", params.with_w0(1.0), std::nullopt},
      {"ers_co", params, Geometry::Co},
      {"ers_counter", params, Geometry::Counter},
  };
  const auto deviation = [&](const Scenario& s) {
    const IntensityTrace analytic =
        s.geometry ? ers_trace(s.params, shape, *s.geometry, times, tol)
                   : urs_trace(s.params, shape, times, tol);
    const SpinCorrelation seed =
        s.geometry ? prepared_seed(s.params, shape, *s.geometry, tol) : SpinCorrelation::none();
    const IntensityTrace sim = oracle::simulate(s.params, shape, seed, opts);
    return oracle::max_relative_deviation(sim.total, analytic.total);
  };

  std::vector<std::future<double>> jobs;
  for (const auto& s : scenarios) {
    jobs.push_back(std::async(std::launch::async, deviation, std::cref(s)));
  }

  Manifest manifest("verify", g);
  CsvWriter csv(manifest.output("verify.csv"), {"scenario", "cells", "steps", "max_rel_deviation"});
  bool ok = true;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const double dev = jobs[i].get();
    const bool pass = dev <= o.threshold;
    ok = ok && pass;
    log << scenarios[i].name << ": max relative deviation " << label(dev) << (pass ? " ok" : " FAIL")
        << '\n';
    csv.write_row({scenarios[i].name, std::to_string(o.cells), std::to_string(o.steps),
                   format_number(dev)});
  }
  csv.close();

  if (o.convergence) {
    const auto& s = scenarios.back();
    const IntensityTrace analytic = ers_trace(s.params, shape, *s.geometry, times, tol);
    std::vector<oracle::OracleOptions> ladder;
    for (int m : {32, 64, 128}) ladder.push_back({m, 1.0 / o.steps, g.time_points, {}});
    const auto report = oracle::convergence_study(
        s.params, shape, prepared_seed(s.params, shape, *s.geometry, tol), ladder, analytic.total);
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      log << "convergence M=" << ladder[i].cells << ": " << label(report.errors[i]) << '\n';
    }
    log << "observed order " << label(report.min_order())
        << (report.monotone ? "" : " (non-monotone)") << '\n';
    ok = ok && report.monotone && report.min_order() >= 1.0;
    manifest.set("convergence_order", format_number(report.min_order()));
  }

  manifest.echo(cfg);
  manifest.set("cells", std::to_string(o.cells));
  manifest.set("steps", std::to_string(o.steps));
  manifest.set("threshold", label(o.threshold));
  manifest.set("passed", ok ? "true" : "false");
  manifest.commit();
  return ok ? kExitOk : kExitVerification;
}

int guarded(const std::function<int()>& command, std::ostream& err) {
  try {
    return command();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace ersim::cli
