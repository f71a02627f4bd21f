#pragma once

#include <span>

namespace ersim::kernels {

/// Arguments of the moving-frame Green's functions H, G_S, G_e.
/// Positions are in units of L; `p_diff` = [p(t_hi) - p(t_lo)] L / c is
/// dimensionless. With these units c = 1 and dz = z_hi - z_lo.
struct KernelArgs {
  double z_hi = 0.0;
  double z_lo = 0.0;
  double t_hi = 0.0;
  double t_lo = 0.0;
  double p_diff = 0.0;

  double dz() const { return z_hi - z_lo; }
  /// p_diff * dz; negative only when the population difference went
  /// through zero between t_lo and t_hi.
  double product() const { return p_diff * dz(); }
  /// Throws std::invalid_argument if z_hi < z_lo or t_hi < t_lo.
  void validate() const;
};

/// H = I0(2 sqrt(p_diff dz)); J0 continuation for p_diff < 0.
double kernel_h(const KernelArgs& args);
/// G_S = sqrt(p_diff / dz) I1(2 sqrt(p_diff dz)), in units of 1/L.
/// Tends to p_diff as dz -> 0 and to 0 as p_diff -> 0.
double kernel_gs(const KernelArgs& args);
/// G_e = (dz / p_diff) G_S = dz I1(2 sqrt(y)) / sqrt(y), y = p_diff dz.
/// Tends to dz as p_diff -> 0.
double kernel_ge(const KernelArgs& args);

/// Same kernels from the pre-multiplied product y = p_diff dz:
/// H(y), and G_S / p_diff = G_e / dz = I1(2 sqrt y)/sqrt y.
double h_of(double product);
double gs_over_p(double product);

struct ResidualProblem {
  double gain = 1.0;   ///< chi^2 L T / c of a constant pulse, W = 1
  double decay = 0.0;  ///< Re Gamma_S T
  double tol = 1e-11;  ///< quadrature tolerance for the kernel integrals
};

/// Builds the seed-driven part of the moving-frame solution for a uniform
/// initial spin wave (S(z, 0) = 1, no input field, no noise) from the
/// kernels on the given grids, and returns the largest residual of the two
/// propagation equations
///     d_z E = S,      d_t (e^{Gamma t} S) = gain e^{Gamma t} E
/// discretized with centred differences on every grid cell, relative to
/// max |S|. Grids must be strictly increasing with at least 5 points.
/// Throws std::invalid_argument for a grid that is too coarse or unsorted.
double kernel_residual(std::span<const double> t_grid, std::span<const double> z_grid,
                       const ResidualProblem& problem);

}  // namespace ersim::kernels
