#include "ersim/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ersim/quadrature.hpp"
#include "ersim/specfun.hpp"

namespace ersim::kernels {

void KernelArgs::validate() const {
  if (z_hi < z_lo) throw std::invalid_argument("KernelArgs: z_hi < z_lo");
  if (t_hi < t_lo) throw std::invalid_argument("KernelArgs: t_hi < t_lo");
}

double h_of(double product) { return specfun::riemann_h(product); }
double gs_over_p(double product) { return specfun::riemann_phi(product); }

double kernel_h(const KernelArgs& args) { return h_of(args.product()); }

double kernel_gs(const KernelArgs& args) {
  return args.p_diff * specfun::riemann_phi(args.product());
}

double kernel_ge(const KernelArgs& args) {
  return args.dz() * specfun::riemann_phi(args.product());
}

namespace {

void check_grid(std::span<const double> g, const char* name) {
  if (g.size() < 5) throw std::invalid_argument(std::string(name) + " grid too coarse");
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1])) {
      throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
    }
  }
}

}  // namespace

double kernel_residual(std::span<const double> t_grid, std::span<const double> z_grid,
                       const ResidualProblem& problem) {
  check_grid(t_grid, "time");
  check_grid(z_grid, "space");
  const std::size_t nt = t_grid.size();
  const std::size_t nz = z_grid.size();

  // Integrating-factor form: s = e^{Gamma t} S and e = e^{Gamma t} E, so the
  // decay enters only through the scaling and drops out of the residual.
  std::vector<double> s(nt * nz), e(nt * nz);
  for (std::size_t i = 0; i < nt; ++i) {
    const double p = problem.gain * t_grid[i];
    for (std::size_t j = 0; j < nz; ++j) {
      const double z = z_grid[j];
      const double spin_tail = quad::integral(
          [&](double x) { return kernel_gs({z, x, t_grid[i], 0.0, p}); }, 0.0, z, problem.tol);
      const double field = quad::integral(
          [&](double x) { return kernel_h({z, x, t_grid[i], 0.0, p}); }, 0.0, z, problem.tol);
      s[i * nz + j] = 1.0 + spin_tail;
      e[i * nz + j] = field;
    }
  }

  double scale = 0.0;
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < nz; ++j) {
      scale = std::max(scale, std::exp(-problem.decay * t_grid[i]) * std::abs(s[i * nz + j]));
    }
  }
  if (scale == 0.0) return 0.0;

  double worst = 0.0;
  for (std::size_t i = 0; i < nt; ++i) {
    const double damp = std::exp(-problem.decay * t_grid[i]);
    for (std::size_t j = 0; j + 1 < nz; ++j) {
      const double h = z_grid[j + 1] - z_grid[j];
      const double de = (e[i * nz + j + 1] - e[i * nz + j]) / h;
      const double mid = 0.5 * (s[i * nz + j + 1] + s[i * nz + j]);
      worst = std::max(worst, damp * std::abs(de - mid));
    }
  }
  for (std::size_t i = 0; i + 1 < nt; ++i) {
    const double h = t_grid[i + 1] - t_grid[i];
    const double damp = std::exp(-problem.decay * t_grid[i + 1]);
    for (std::size_t j = 0; j < nz; ++j) {
      const double ds = (s[(i + 1) * nz + j] - s[i * nz + j]) / h;
      const double mid = 0.5 * (e[(i + 1) * nz + j] + e[i * nz + j]);
      worst = std::max(worst, damp * std::abs(ds - problem.gain * mid));
    }
  }
  return worst / scale;
}

}  // namespace ersim::kernels
