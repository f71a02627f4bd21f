#include "ersim/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ersim/errors.hpp"

namespace ersim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// exp(-7.5): offset that makes the truncated Gaussian vanish at both ends.
const double kGaussianFloor = std::exp(-7.5);

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "w0",         "optical_depth_1", "pump_ratio", "delta_big_hz", "delta_small_hz",
      "gamma_s_hz", "gamma_1_hz",      "gamma_2_hz", "t1_s",         "t2_s",
      "pulse_shape", "g_ratio",        "omega_1_hz"};
  return keys;
}

double number(const Config& cfg, const std::string& key) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) throw ConfigError(key, "missing required key");
  const std::string& text = it->second;
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ConfigError(key, "not a finite number: '" + text + "'");
  }
  return v;
}

double number_or(const Config& cfg, const std::string& key, double fallback) {
  return cfg.count(key) ? number(cfg, key) : fallback;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

const char* to_string(PulseShape shape) {
  return shape == PulseShape::ConstantStep ? "constant" : "gaussian";
}

double envelope_value(const PulseEnvelope& pulse, double t) {
  if (t < 0.0) return 0.0;
  if (pulse.kind == PulseShape::ConstantStep) return 1.0;
  if (t > pulse.duration) return 0.0;
  const double u = t / pulse.duration - 0.5;
  return std::max(0.0, std::exp(-30.0 * u * u) - kGaussianFloor);
}

ModelParams ModelParams::with_w0(double w) const {
  ModelParams out = *this;
  out.w0 = w;
  return out;
}

ModelParams ModelParams::without_write1() const {
  ModelParams out = *this;
  out.write1.gain = 0.0;
  out.write1.depletion = 0.0;
  out.write1.stark = 0.0;
  return out;
}

Config ModelParams::to_config() const {
  return {
      {"w0", format_number(w0)},
      {"optical_depth_1", format_number(optical_depth_1)},
      {"pump_ratio", format_number(pump_ratio)},
      {"delta_big_hz", format_number(delta_big / kTwoPi)},
      {"delta_small_hz", format_number(delta_small / kTwoPi)},
      {"gamma_s_hz", format_number(gamma_s / kTwoPi)},
      {"gamma_1_hz", format_number(gamma_1 / kTwoPi)},
      {"gamma_2_hz", format_number(gamma_2 / kTwoPi)},
      {"omega_1_hz", format_number(omega_1 / kTwoPi)},
      {"t1_s", format_number(t1)},
      {"t2_s", format_number(t2)},
      {"g_ratio", format_number(g_ratio)},
      {"pulse_shape", to_string(pulse_shape)},
  };
}

Config parse_config(std::istream& in) {
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", "line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(lineno) + ": empty key");
    if (!cfg.emplace(key, value).second) throw ConfigError(key, "duplicate key");
  }
  return cfg;
}

Config read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  return parse_config(in);
}

Config default_config() {
  return {
      {"w0", "0.99"},
      {"optical_depth_1", "8.5"},
      {"pump_ratio", "1.56"},
      {"delta_big_hz", "1.2e9"},
      {"delta_small_hz", "1e9"},
      {"gamma_s_hz", "1e4"},
      {"gamma_1_hz", "5.746e6"},
      {"gamma_2_hz", "6.605e6"},
      {"pulse_shape", "gaussian"},
  };
}

ModelParams build_params(const Config& cfg) {
  for (const auto& [key, value] : cfg) {
    if (!known_keys().count(key)) throw ConfigError(key, "unknown key");
  }

  ModelParams p;
  p.w0 = number(cfg, "w0");
  p.optical_depth_1 = number(cfg, "optical_depth_1");
  p.pump_ratio = number(cfg, "pump_ratio");
  p.delta_big = kTwoPi * number(cfg, "delta_big_hz");
  p.delta_small = kTwoPi * number(cfg, "delta_small_hz");
  p.gamma_s = kTwoPi * number(cfg, "gamma_s_hz");
  p.gamma_1 = kTwoPi * number(cfg, "gamma_1_hz");
  p.gamma_2 = kTwoPi * number(cfg, "gamma_2_hz");
  p.omega_1 = kTwoPi * number_or(cfg, "omega_1_hz", 130e6);
  p.t1 = number_or(cfg, "t1_s", 1e-6);
  p.t2 = number_or(cfg, "t2_s", p.t1);
  p.g_ratio = number_or(cfg, "g_ratio", 1.0);

  if (const auto it = cfg.find("pulse_shape"); it != cfg.end()) {
    if (it->second == "constant") {
      p.pulse_shape = PulseShape::ConstantStep;
    } else if (it->second == "gaussian") {
      p.pulse_shape = PulseShape::TruncatedGaussian;
    } else {
      throw ConfigError("pulse_shape", "expected 'constant' or 'gaussian', got '" + it->second + "'");
    }
  }

  if (p.w0 < -1.0 || p.w0 > 1.0) throw ConfigError("w0", "w0 out of range [-1, 1]");
  if (!(p.optical_depth_1 > 0.0)) throw ConfigError("optical_depth_1", "must be > 0");
  if (!(p.pump_ratio > 0.0)) throw ConfigError("pump_ratio", "must be > 0");
  if (!(p.delta_big > 0.0)) throw ConfigError("delta_big_hz", "must be > 0");
  if (!(p.delta_small > 0.0)) throw ConfigError("delta_small_hz", "must be > 0");
  if (p.gamma_s < 0.0) throw ConfigError("gamma_s_hz", "decay rate must be >= 0");
  if (p.gamma_1 < 0.0) throw ConfigError("gamma_1_hz", "decay rate must be >= 0");
  if (p.gamma_2 < 0.0) throw ConfigError("gamma_2_hz", "decay rate must be >= 0");
  if (p.omega_1 < 0.0) throw ConfigError("omega_1_hz", "must be >= 0");
  if (!(p.t1 > 0.0)) throw ConfigError("t1_s", "must be > 0");
  if (!(p.t2 > 0.0)) throw ConfigError("t2_s", "must be > 0");
  if (!(p.g_ratio > 0.0)) throw ConfigError("g_ratio", "must be > 0");

  const double detuning_ratio_sq = (p.delta_big / p.delta_small) * (p.delta_big / p.delta_small);
  const double omega1_sq = p.omega_1 * p.omega_1;
  const double omega2_sq = p.pump_ratio * p.pump_ratio * omega1_sq;

  p.write1.duration_s = p.t1;
  p.write1.gain = p.optical_depth_1;
  p.write1.depletion = p.gamma_1 * omega1_sq * p.t1 / (p.delta_big * p.delta_big);
  p.write1.stark = omega1_sq * p.t1 / p.delta_big;
  p.write1.spin_decay = p.gamma_s * p.t1;

  p.reference_gain = p.optical_depth_1 * detuning_ratio_sq * p.g_ratio * p.g_ratio * (p.t2 / p.t1);

  p.write2.duration_s = p.t2;
  p.write2.gain = p.reference_gain * p.pump_ratio * p.pump_ratio;
  p.write2.depletion = p.gamma_2 * omega2_sq * p.t2 / (p.delta_small * p.delta_small);
  p.write2.stark = omega2_sq * p.t2 / p.delta_small;
  p.write2.spin_decay = p.gamma_s * p.t2;
  return p;
}

double population_difference_integrated(double w0, double integrated_depletion) {
  const double decay = std::exp(-integrated_depletion);
  return w0 * decay + decay - 1.0;
}

double population_difference(double w0, const std::function<double(double)>& depletion_rate,
                             double t, double tol) {
  if (t <= 0.0) return w0;
  return population_difference_integrated(w0, quad::integral(depletion_rate, 0.0, t, tol));
}

// ---------------------------------------------------------------------------

ChannelHistory::ChannelHistory(const ChannelConstants& constants, PulseShape shape, double w0,
                               bool track_population, double tol, int grid_cells)
    : c_(constants), shape_(shape), w0_(w0), track_population_(track_population),
      cells_(grid_cells) {
  if (cells_ < 8) throw std::invalid_argument("ChannelHistory: grid too coarse");
  if (shape_ == PulseShape::TruncatedGaussian) {
    const double h = 1.0 / cells_;
    const auto f2 = [this](double s) { return envelope_sq(s); };
    env_nodes_.assign(cells_ + 1, 0.0);
    for (int i = 0; i < cells_; ++i) {
      env_nodes_[i + 1] = env_nodes_[i] + quad::integral(f2, i * h, (i + 1) * h, tol);
    }
    if (track_population_) {
      const auto wf2 = [this](double s) { return w(s) * envelope_sq(s); };
      weighted_nodes_.assign(cells_ + 1, 0.0);
      for (int i = 0; i < cells_; ++i) {
        weighted_nodes_[i + 1] =
            weighted_nodes_[i] + quad::integral(wf2, i * h, (i + 1) * h, tol);
      }
    }
  }
  constexpr int kProbe = 1024;
  for (int i = 0; i <= kProbe; ++i) {
    const double tau = static_cast<double>(i) / kProbe;
    if (coupling_sq(tau) > 0.0 && gain_rate(tau) < 0.0) {
      inverted_ = true;
      break;
    }
  }
}

double ChannelHistory::envelope_sq(double tau) const {
  const double f = envelope_value(PulseEnvelope{shape_, 1.0}, tau);
  return f * f;
}

double ChannelHistory::env_integral(double tau) const {
  if (tau <= 0.0) return 0.0;
  if (shape_ == PulseShape::ConstantStep) return tau;
  if (tau >= 1.0) return env_nodes_.back();
  const int i = std::min(static_cast<int>(tau * cells_), cells_ - 1);
  const double lo = static_cast<double>(i) / cells_;
  return env_nodes_[i] +
         quad::gauss_legendre_10([this](double s) { return envelope_sq(s); }, lo, tau);
}

double ChannelHistory::weighted_integral(double tau) const {
  if (tau <= 0.0) return 0.0;
  if (!track_population_) return env_integral(tau);
  if (shape_ == PulseShape::ConstantStep) return eta(tau) * tau;
  if (tau >= 1.0) return weighted_nodes_.back();
  const int i = std::min(static_cast<int>(tau * cells_), cells_ - 1);
  const double lo = static_cast<double>(i) / cells_;
  return weighted_nodes_[i] + quad::gauss_legendre_10(
                                  [this](double s) { return w(s) * envelope_sq(s); }, lo, tau);
}

std::complex<double> ChannelHistory::gamma(double tau) const {
  if (tau <= 0.0) return {0.0, 0.0};
  const double f = env_integral(tau);
  return {c_.spin_decay * tau + c_.depletion * f, -c_.stark * f};
}

double ChannelHistory::p(double tau) const { return c_.gain * weighted_integral(tau); }

double ChannelHistory::w(double tau) const {
  if (!track_population_) return 1.0;
  if (tau <= 0.0) return w0_;
  return population_difference_integrated(w0_, c_.depletion * env_integral(tau));
}

double ChannelHistory::eta(double tau) const {
  if (shape_ != PulseShape::ConstantStep) {
    throw std::logic_error("eta(t') is defined for the constant pulse only");
  }
  if (!track_population_) return 1.0;
  const double g = c_.depletion * tau;
  return w0_ * (1.0 - 0.5 * g) - 0.5 * g;
}

double ChannelHistory::spin_rate(double tau) const {
  return c_.spin_decay + c_.depletion * coupling_sq(tau);
}

double ChannelHistory::gain_rate(double tau) const {
  if (tau < 0.0) return 0.0;
  if (shape_ == PulseShape::ConstantStep) {
    if (!track_population_) return c_.gain;
    // d/dt' [eta(t') t'] for the linearized population difference.
    return c_.gain * (w0_ - (w0_ + 1.0) * c_.depletion * tau);
  }
  return c_.gain * w(tau) * envelope_sq(tau);
}

double ChannelHistory::coupling_sq(double tau) const {
  if (tau < 0.0) return 0.0;
  return envelope_sq(tau);
}

}  // namespace ersim
