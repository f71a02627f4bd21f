#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ersim/quadrature.hpp"

namespace ersim {

enum class PulseShape { ConstantStep, TruncatedGaussian };

const char* to_string(PulseShape shape);

/// Temporal shape of a write field's Rabi frequency, relative to its peak.
struct PulseEnvelope {
  PulseShape kind = PulseShape::TruncatedGaussian;
  double duration = 1.0;
};

/// exp(-30 (t/T - 0.5)^2) - exp(-7.5) on [0, T] for the truncated Gaussian,
/// the unit step on [0, inf) for the constant pulse. Zero for t < 0.
double envelope_value(const PulseEnvelope& pulse, double t);

/// Dimensionless groups of one write channel. Every time is measured in
/// units of the channel's own pulse duration T and lengths in units of L.
struct ChannelConstants {
  double gain = 0.0;        ///< chi0^2 L T / c at peak field
  double depletion = 0.0;   ///< gamma' T = gamma |Omega0|^2 T / det^2
  double stark = 0.0;       ///< delta_L T = |Omega0|^2 T / det
  double spin_decay = 0.0;  ///< gamma_s T
  double duration_s = 0.0;  ///< T in seconds

  /// Gamma_S T at peak field: gamma_s + gamma' - i delta_L.
  std::complex<double> peak_decay() const { return {spin_decay + depletion, -stark}; }
};

struct ModelParams {
  double w0 = 1.0;               ///< initial population difference W(0)
  double optical_depth_1 = 1.0;  ///< N g1^2 |Omega10|^2 T1 L / (c Delta^2)
  double pump_ratio = 1.0;       ///< |Omega2| / |Omega1|
  double delta_big = 0.0;        ///< Delta, rad/s
  double delta_small = 0.0;      ///< delta, rad/s
  double gamma_s = 0.0;          ///< rad/s
  double gamma_1 = 0.0;          ///< rad/s
  double gamma_2 = 0.0;          ///< rad/s
  double omega_1 = 0.0;          ///< peak Rabi frequency of write 1, rad/s
  double t1 = 1e-6;              ///< s
  double t2 = 1e-6;              ///< s
  double g_ratio = 1.0;          ///< g2 / g1
  PulseShape pulse_shape = PulseShape::TruncatedGaussian;

  ChannelConstants write1;
  ChannelConstants write2;
  /// Write-2 gain at pump_ratio = 1. Intensities are reported in units of
  /// chi_ref^2 L / c with this reference coupling.
  double reference_gain = 1.0;

  /// chi2^2 / chi_ref^2, the prefactor carried by every Stokes intensity.
  double intensity_scale() const { return write2.gain / reference_gain; }

  /// Same parameters with W(0) replaced.
  ModelParams with_w0(double w) const;
  /// Same parameters with the first write field switched off (chi1 = 0);
  /// channel 2 is left untouched.
  ModelParams without_write1() const;
  /// Echo of the configuration in `key = value` form, ordered by key.
  std::map<std::string, std::string> to_config() const;
};

using Config = std::map<std::string, std::string>;

/// Parse `key = value` lines; `#` starts a comment. Throws ConfigError on
/// malformed lines or duplicate keys.
Config parse_config(std::istream& in);
Config read_config_file(const std::string& path);

/// Default Gaussian-pulse scenario: W(0)=0.99, optical
/// depth 8.5, pump ratio 1.56, Delta=1.2 GHz, delta=1 GHz, gamma_s=10 kHz,
/// gamma_1 = 2pi x 5.746 MHz, gamma_2 = 2pi x 6.605 MHz, Gaussian pulses.
Config default_config();

/// Validate a configuration and derive the per-channel groups.
/// Frequencies are given in Hz and multiplied by 2 pi on ingest.
/// Throws ConfigError naming the offending key.
ModelParams build_params(const Config& config);

/// W(t) = W(0) e^{-G} + e^{-G} - 1 with G = integral of gamma2'(s) over [0, t].
double population_difference(double w0, const std::function<double(double)>& depletion_rate,
                             double t, double tol = 1e-10);
/// Closed form for an already integrated depletion G.
double population_difference_integrated(double w0, double integrated_depletion);

/// Time-ordered integrals Gamma(t'), p(t') and the population history of one
/// write channel, in units of that channel's duration. Immutable after
/// construction; the integrals are memoized on a uniform grid over the
/// pulse window [0, 1] and completed with a 10-point rule inside a cell.
class ChannelHistory {
 public:
  /// `track_population` = false freezes W at 1 in p(t') (write 1 acts on
  /// a freshly pumped ensemble and its depletion is not propagated).
  ChannelHistory(const ChannelConstants& constants, PulseShape shape, double w0,
                 bool track_population, double tol = 1e-10, int grid_cells = 256);

  /// Gamma(t') = integral of Gamma_S over [0, t'].
  std::complex<double> gamma(double tau) const;
  /// p(t') in units of c/L, i.e. already multiplied by L/c.
  double p(double tau) const;
  /// Population difference W(t').
  double w(double tau) const;
  /// eta(t') of the constant pulse, W(0)(1 - gamma' t'/2) - gamma' t'/2.
  /// Throws std::logic_error for a Gaussian pulse.
  double eta(double tau) const;

  /// Re Gamma_S(t'), the instantaneous spin decay rate.
  double spin_rate(double tau) const;
  /// dp/dt' (units c/L per T); W_eff(t') chi(t')^2 L T / c.
  double gain_rate(double tau) const;
  /// chi(t')^2 / chi0^2.
  double coupling_sq(double tau) const;

  /// True if p(t') decreases anywhere in the window, i.e. the kernels need
  /// the oscillatory (J-Bessel) continuation.
  bool population_inverted() const { return inverted_; }

  PulseShape shape() const { return shape_; }
  double w0() const { return w0_; }
  const ChannelConstants& constants() const { return c_; }

 private:
  double envelope_sq(double tau) const;
  double env_integral(double tau) const;     // integral of f^2 over [0, tau]
  double weighted_integral(double tau) const;  // integral of W f^2 over [0, tau]

  ChannelConstants c_;
  PulseShape shape_;
  double w0_;
  bool track_population_;
  int cells_;
  std::vector<double> env_nodes_;
  std::vector<double> weighted_nodes_;
  bool inverted_ = false;
};

}  // namespace ersim
