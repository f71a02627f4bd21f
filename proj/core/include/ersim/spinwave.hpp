#pragma once

#include <functional>

#include "ersim/params.hpp"
#include "ersim/quadrature.hpp"

namespace ersim {

enum class Geometry { Co, Counter };
enum class Ordering { NormalOrdered, AntiNormalOrdered };

const char* to_string(Geometry g);

/// Diagonal initial correlation of the spin wave seen by write 2:
/// <S S'> = density(z) delta(z - z') with z in units of L and the vacuum
/// commutator normalized to `vacuum_weight` (= 1 for L = 1).
/// An anti-normally ordered density includes the vacuum weight; a normally
/// ordered one does not.
struct SpinCorrelation {
  std::function<double(double)> density;
  double vacuum_weight = 1.0;
  Geometry geometry = Geometry::Co;
  Ordering ordering = Ordering::NormalOrdered;

  double operator()(double z) const { return density(z); }

  /// No prepared spin wave, normally ordered: density 0.
  static SpinCorrelation none();
  /// Pure vacuum, anti-normally ordered: density 1.
  static SpinCorrelation vacuum();
};

/// Flipped-atom density left by a constant write-1 pulse,
///     n(z) = integral over s in [0, zeta1] of e^{-a s} I0(2 sqrt(s z))^2,
/// with zeta1 = chi1^2 L t1 / c and a = 2 c Re Gamma_S1 / (chi1^2 L).
double flipped_density(double z, double zeta1, double a, double tol = 1e-9);

/// n(z) on [0, 1] as a normally ordered, co-propagating correlation,
/// tabulated on Chebyshev nodes.
SpinCorrelation flipped_density_profile(double zeta1, double a, double tol = 1e-9,
                                        int degree = 40);

/// The six contributions to <S_a1(z, T1) S_a1^dag(z, T1)> / L for a Gaussian
/// first write pulse: decayed vacuum, the two gain terms, and the three
/// Langevin-restored terms.
struct PreparedTerms {
  double vacuum = 0.0;         ///< e^{-2 Re Gamma1(T1)}
  double gain_cross = 0.0;     ///< 2 e^{-2 Re Gamma1} int G_S(z, x, T1, 0) dx
  double gain_square = 0.0;    ///< e^{-2 Re Gamma1} int G_S^2 dx
  double noise_cross = 0.0;    ///< 4 int gamma_S e^{-2 Re[..]} int G_S(z, x, T1, t) dx dt
  double noise_vacuum = 0.0;   ///< 2 int gamma_S e^{-2 Re[..]} dt
  double noise_square = 0.0;   ///< 2 int gamma_S e^{-2 Re[..]} int G_S^2 dx dt

  double total() const {
    return vacuum + gain_cross + gain_square + noise_cross + noise_vacuum + noise_square;
  }
};

/// Term-by-term prepared correlation at z for the given write-1 history
/// (time in units of T1).
PreparedTerms prepared_correlation_terms(double z, const ChannelHistory& write1,
                                         const quad::Tolerances& tol = {});

/// Anti-normally ordered prepared correlation at z for the Gaussian write-1
/// pulse of `params`. Always >= 1 in the passive limit chi1 = 0 and equal to
/// it there. Throws QuadratureError on non-convergence.
double prepared_correlation_gaussian(double z, const ModelParams& params,
                                     const quad::Tolerances& tol = {});

/// prepared_correlation_gaussian on [0, 1], tabulated on Chebyshev nodes.
SpinCorrelation prepared_correlation_profile(const ModelParams& params,
                                             const quad::Tolerances& tol = {}, int degree = 32);

/// Co: identity. Counter: density reflected about z = 1/2 and the tag
/// toggled, so applying Counter twice restores the input.
SpinCorrelation map_geometry(const SpinCorrelation& base, Geometry geometry);

struct VacuumSplit {
  double vacuum_weight = 1.0;
  SpinCorrelation normal;
  /// Set when the anti-normal density dipped below the vacuum floor by more
  /// than 1e-9 (but less than the error threshold) and was clamped to zero.
  bool clamped = false;
  /// min over the probe grid of density - vacuum_weight.
  double min_excess = 0.0;
};

/// Splits an anti-normally ordered correlation into vacuum commutator and
/// normally ordered part, density - vacuum_weight, clamped at zero.
/// Throws OrderingError for a normally ordered input or if the density falls
/// below the vacuum weight by more than 1e-6 anywhere on a 401-point probe.
VacuumSplit split_vacuum(const SpinCorrelation& anti_normal);

/// Normally ordered seed prepared by write 1 and mapped into the write-2
/// frame: the flipped-atom density for a constant pulse, the normally
/// ordered part of the six-term correlation for a Gaussian one.
SpinCorrelation prepared_seed(const ModelParams& params, PulseShape shape, Geometry geometry,
                              const quad::Tolerances& tol = {});

}  // namespace ersim
