#include "ersim/spinwave.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "ersim/chebyshev.hpp"
#include "ersim/errors.hpp"
#include "ersim/kernels.hpp"
#include "ersim/specfun.hpp"

namespace ersim {

const char* to_string(Geometry g) { return g == Geometry::Co ? "co" : "counter"; }

SpinCorrelation SpinCorrelation::none() {
  return {[](double) { return 0.0; }, 1.0, Geometry::Co, Ordering::NormalOrdered};
}

SpinCorrelation SpinCorrelation::vacuum() {
  return {[](double) { return 1.0; }, 1.0, Geometry::Co, Ordering::AntiNormalOrdered};
}

double flipped_density(double z, double zeta1, double a, double tol) {
  if (zeta1 <= 0.0) return 0.0;
  return quad::integral(
      [&](double s) {
        const double h = specfun::riemann_h(s * z);
        return std::exp(-a * s) * h * h;
      },
      0.0, zeta1, tol);
}

SpinCorrelation flipped_density_profile(double zeta1, double a, double tol, int degree) {
  if (zeta1 <= 0.0) return SpinCorrelation::none();
  auto table = std::make_shared<ChebyshevTable>(
      [&](double z) { return flipped_density(z, zeta1, a, tol); }, degree);
  return {[table](double z) { return (*table)(z); }, 1.0, Geometry::Co,
          Ordering::NormalOrdered};
}

PreparedTerms prepared_correlation_terms(double z, const ChannelHistory& write1,
                                         const quad::Tolerances& tol) {
  PreparedTerms t;
  const double end_decay = write1.gamma(1.0).real();
  const double p_end = write1.p(1.0);
  const double survive = std::exp(-2.0 * end_decay);

  // G_S(z, x, T1, s) with x the source point.
  const auto gs = [&](double x, double s) {
    return kernels::kernel_gs({z, x, 1.0, s, p_end - write1.p(s)});
  };
  const auto cross = [&](double s) {
    return quad::integral([&](double x) { return gs(x, s); }, 0.0, z, tol.inner);
  };
  const auto square = [&](double s) {
    return quad::integral(
        [&](double x) {
          const double g = gs(x, s);
          return g * g;
        },
        0.0, z, tol.inner);
  };
  // Weight of the Langevin force injected at time s that survives to T1.
  const auto noise_weight = [&](double s) {
    return write1.spin_rate(s) * std::exp(-2.0 * (end_decay - write1.gamma(s).real()));
  };

  t.vacuum = survive;
  t.gain_cross = 2.0 * survive * cross(0.0);
  t.gain_square = survive * square(0.0);
  t.noise_vacuum = 2.0 * quad::integral(noise_weight, 0.0, 1.0, tol.outer);
  if (z > 0.0) {
    t.noise_cross = 4.0 * quad::integral([&](double s) { return noise_weight(s) * cross(s); },
                                         0.0, 1.0, tol.outer);
    t.noise_square = 2.0 * quad::integral(
                               [&](double s) { return noise_weight(s) * square(s); }, 0.0, 1.0,
                               tol.outer);
  }
  return t;
}

double prepared_correlation_gaussian(double z, const ModelParams& params,
                                     const quad::Tolerances& tol) {
  const ChannelHistory write1(params.write1, PulseShape::TruncatedGaussian, 1.0, false,
                              tol.history);
  return prepared_correlation_terms(z, write1, tol).total();
}

SpinCorrelation prepared_correlation_profile(const ModelParams& params,
                                             const quad::Tolerances& tol, int degree) {
  const ChannelHistory write1(params.write1, PulseShape::TruncatedGaussian, 1.0, false,
                              tol.history);
  auto table = std::make_shared<ChebyshevTable>(
      [&](double z) { return prepared_correlation_terms(z, write1, tol).total(); }, degree);
  // Vacuum and restored noise sum to one, the gain terms are nonnegative.
  return {[table](double z) { return std::max(1.0, (*table)(z)); }, 1.0, Geometry::Co,
          Ordering::AntiNormalOrdered};
}

SpinCorrelation map_geometry(const SpinCorrelation& base, Geometry geometry) {
  if (geometry == Geometry::Co) return base;
  SpinCorrelation out = base;
  out.density = [d = base.density](double z) { return d(1.0 - z); };
  out.geometry = base.geometry == Geometry::Co ? Geometry::Counter : Geometry::Co;
  return out;
}

VacuumSplit split_vacuum(const SpinCorrelation& anti_normal) {
  if (anti_normal.ordering != Ordering::AntiNormalOrdered) {
    throw OrderingError("split_vacuum: correlation is not anti-normally ordered");
  }
  const double weight = anti_normal.vacuum_weight;
  VacuumSplit out;
  out.vacuum_weight = weight;
  constexpr int kProbe = 400;
  double min_excess = INFINITY;
  for (int i = 0; i <= kProbe; ++i) {
    const double z = static_cast<double>(i) / kProbe;
    min_excess = std::min(min_excess, anti_normal(z) - weight);
  }
  out.min_excess = min_excess;
  if (min_excess < -1e-6 * weight) {
    std::ostringstream msg;
    msg << "split_vacuum: anti-normal density falls below the vacuum weight by "
        << -min_excess;
    throw OrderingError(msg.str());
  }
  out.clamped = min_excess < -1e-9 * weight;
  out.normal = {[d = anti_normal.density, weight](double z) { return std::max(0.0, d(z) - weight); },
                weight, anti_normal.geometry, Ordering::NormalOrdered};
  return out;
}

SpinCorrelation prepared_seed(const ModelParams& params, PulseShape shape, Geometry geometry,
                              const quad::Tolerances& tol) {
  SpinCorrelation base;
  if (shape == PulseShape::ConstantStep) {
    const auto& w1 = params.write1;
    if (w1.gain <= 0.0) {
      base = SpinCorrelation::none();
    } else {
      const double a = 2.0 * (w1.spin_decay + w1.depletion) / w1.gain;
      base = flipped_density_profile(w1.gain, a, tol.density);
    }
  } else {
    base = split_vacuum(prepared_correlation_profile(params, tol)).normal;
  }
  return map_geometry(base, geometry);
}

}  // namespace ersim
