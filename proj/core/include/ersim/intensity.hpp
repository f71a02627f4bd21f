#pragma once

#include <optional>
#include <vector>

#include "ersim/params.hpp"
#include "ersim/quadrature.hpp"
#include "ersim/spinwave.hpp"

namespace ersim {

enum class TraceGeometry { None, Co, Counter };

const char* to_string(TraceGeometry g);
TraceGeometry trace_geometry(Geometry g);

/// Normalization of every reported intensity.
inline constexpr const char* kIntensityNormalization =
    "hbar*omega_S2 = 1; z in units of L; t' in units of T2; intensity in units of "
    "chi_ref^2 L / c with chi_ref the write-2 coupling at pump_ratio = 1";

/// Stokes intensity at z = L split into the spontaneous part (decayed vacuum
/// plus Langevin noise) and the part seeded by a prepared spin wave.
struct IntensityPoint {
  double total = 0.0;
  double vacuum_part = 0.0;
  double seed_part = 0.0;
};

struct IntensityTrace {
  std::vector<double> times;
  std::vector<double> total;
  std::vector<double> vacuum_part;
  std::vector<double> seed_part;
  TraceGeometry geometry = TraceGeometry::None;

  std::size_t size() const { return times.size(); }
  void push_back(double t, const IntensityPoint& p);
};

/// Evaluates the output intensity of write 2 for one initial population
/// difference. Holds the memoized channel-2 history; all methods are const
/// and safe to call concurrently.
class StokesEvaluator {
 public:
  StokesEvaluator(const ModelParams& params, PulseShape shape, double w0,
                  const quad::Tolerances& tol = {});

  /// Spontaneous intensity I_S2-0(t') from the master formula with a pure
  /// vacuum initial spin wave: the decayed-vacuum term integrated over z
  /// plus the Langevin term. Cross-checked against spontaneous_closed_form
  /// at every call; a relative mismatch above 1e-6 throws NumericalError.
  double spontaneous(double tau) const;
  /// Same quantity with the z integral done in closed form (I0^2 - I1^2).
  double spontaneous_closed_form(double tau) const;
  /// I_add(t') for a normally ordered seed already mapped to the write-2
  /// frame. Throws OrderingError for an anti-normally ordered input.
  double additional(double tau, const SpinCorrelation& seed) const;
  IntensityPoint point(double tau, const SpinCorrelation& seed) const;

  const ChannelHistory& history() const { return history_; }
  double scale() const { return scale_; }

 private:
  double langevin(double tau) const;

  ChannelHistory history_;
  double scale_;
  quad::Tolerances tol_;
};

/// Usual Raman scattering: W(0) = 1 and no prepared spin wave.
double urs_intensity(double tau, const ModelParams& params, PulseShape shape,
                     const quad::Tolerances& tol = {});

/// I_add(t') with W(0) taken from params.
double ers_additional(double tau, const SpinCorrelation& seed, const ModelParams& params,
                      PulseShape shape, const quad::Tolerances& tol = {});

/// I_S2-0(t') (with params.w0) + I_add(t') for the seed written by write 1.
IntensityPoint ers_total(double tau, Geometry geometry, const ModelParams& params,
                         PulseShape shape, const quad::Tolerances& tol = {});

/// I_add-counter / I_add-co for a constant write-2 pulse at dimensionless
/// strength eta(t') chi2^2 L t' / c, given the co-propagating flipped-atom
/// density. Throws NumericalError if I_add-co underflows.
double enhancement_ratio(double strength, const SpinCorrelation& co_density,
                         const quad::Tolerances& tol = {});
double enhancement_ratio(double strength, double zeta1, double a,
                         const quad::Tolerances& tol = {});

/// n uniformly spaced times on [0, 1] (units of T2), endpoints included.
std::vector<double> uniform_times(int n);

/// Trace of evaluator.point over `times`. Spontaneous-only when seed is empty.
IntensityTrace make_trace(const StokesEvaluator& evaluator, const std::vector<double>& times,
                          const std::optional<SpinCorrelation>& seed, TraceGeometry geometry);

IntensityTrace urs_trace(const ModelParams& params, PulseShape shape,
                         const std::vector<double>& times, const quad::Tolerances& tol = {});
IntensityTrace ers_trace(const ModelParams& params, PulseShape shape, Geometry geometry,
                         const std::vector<double>& times, const quad::Tolerances& tol = {});

}  // namespace ersim
