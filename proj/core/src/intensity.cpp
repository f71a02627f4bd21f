#include "ersim/intensity.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ersim/errors.hpp"
#include "ersim/kernels.hpp"
#include "ersim/specfun.hpp"

namespace ersim {

const char* to_string(TraceGeometry g) {
  switch (g) {
    case TraceGeometry::Co: return "co";
    case TraceGeometry::Counter: return "counter";
    case TraceGeometry::None: break;
  }
  return "none";
}

TraceGeometry trace_geometry(Geometry g) {
  return g == Geometry::Co ? TraceGeometry::Co : TraceGeometry::Counter;
}

void IntensityTrace::push_back(double t, const IntensityPoint& p) {
  times.push_back(t);
  total.push_back(p.total);
  vacuum_part.push_back(p.vacuum_part);
  seed_part.push_back(p.seed_part);
}

StokesEvaluator::StokesEvaluator(const ModelParams& params, PulseShape shape, double w0,
                                 const quad::Tolerances& tol)
    : history_(params.write2, shape, w0, true, tol.history),
      scale_(params.intensity_scale()),
      tol_(tol) {}

double StokesEvaluator::langevin(double tau) const {
  if (tau <= 0.0) return 0.0;
  const double gamma_end = history_.gamma(tau).real();
  const double p_end = history_.p(tau);
  return 2.0 * quad::integral(
                   [&](double s) {
                     const double survive =
                         std::exp(-2.0 * (gamma_end - history_.gamma(s).real()));
                     return history_.spin_rate(s) * survive *
                            specfun::riemann_energy(p_end - history_.p(s));
                   },
                   0.0, tau, tol_.outer);
}

double StokesEvaluator::spontaneous_closed_form(double tau) const {
  const double prefactor = scale_ * history_.coupling_sq(tau);
  if (prefactor == 0.0) return 0.0;
  const double survive = std::exp(-2.0 * history_.gamma(tau).real());
  return prefactor * (survive * specfun::riemann_energy(history_.p(tau)) + langevin(tau));
}

double StokesEvaluator::spontaneous(double tau) const {
  const double prefactor = scale_ * history_.coupling_sq(tau);
  if (prefactor == 0.0) return 0.0;
  const double survive = std::exp(-2.0 * history_.gamma(tau).real());
  const double p_end = history_.p(tau);
  // Anti-normally ordered vacuum <S S^dag> = delta(z' - z''): the double z
  // integral of the master formula collapses onto the diagonal.
  const double vacuum = quad::integral(
      [&](double z) {
        const double h = kernels::kernel_h({1.0, z, tau, 0.0, p_end});
        return h * h;
      },
      0.0, 1.0, tol_.outer);
  const double closed = specfun::riemann_energy(p_end);
  if (std::abs(vacuum - closed) > 1e-6 * std::abs(closed)) {
    std::ostringstream msg;
    msg << "vacuum term mismatch at t'=" << tau << ": quadrature " << vacuum
        << " vs closed form " << closed;
    throw NumericalError(msg.str());
  }
  return prefactor * (survive * vacuum + langevin(tau));
}

double StokesEvaluator::additional(double tau, const SpinCorrelation& seed) const {
  if (seed.ordering != Ordering::NormalOrdered) {
    throw OrderingError("additional intensity needs a normally ordered seed");
  }
  const double prefactor = scale_ * history_.coupling_sq(tau);
  if (prefactor == 0.0) return 0.0;
  const double survive = std::exp(-2.0 * history_.gamma(tau).real());
  const double p_end = history_.p(tau);
  const double overlap = quad::integral(
      [&](double z) {
        const double h = kernels::kernel_h({1.0, z, tau, 0.0, p_end});
        return h * h * seed(z);
      },
      0.0, 1.0, tol_.outer);
  return prefactor * survive * overlap;
}

IntensityPoint StokesEvaluator::point(double tau, const SpinCorrelation& seed) const {
  IntensityPoint p;
  p.vacuum_part = spontaneous(tau);
  p.seed_part = additional(tau, seed);
  p.total = p.vacuum_part + p.seed_part;
  return p;
}

double urs_intensity(double tau, const ModelParams& params, PulseShape shape,
                     const quad::Tolerances& tol) {
  return StokesEvaluator(params, shape, 1.0, tol).spontaneous(tau);
}

double ers_additional(double tau, const SpinCorrelation& seed, const ModelParams& params,
                      PulseShape shape, const quad::Tolerances& tol) {
  return StokesEvaluator(params, shape, params.w0, tol).additional(tau, seed);
}

IntensityPoint ers_total(double tau, Geometry geometry, const ModelParams& params,
                         PulseShape shape, const quad::Tolerances& tol) {
  const StokesEvaluator eval(params, shape, params.w0, tol);
  return eval.point(tau, prepared_seed(params, shape, geometry, tol));
}

double enhancement_ratio(double strength, const SpinCorrelation& co_density,
                         const quad::Tolerances& tol) {
  const auto weighted = [&](bool reflect) {
    return quad::integral(
        [&](double z) {
          const double h = kernels::h_of(strength * (1.0 - z));
          return h * h * co_density(reflect ? 1.0 - z : z);
        },
        0.0, 1.0, tol.outer);
  };
  const double co = weighted(false);
  const double counter = weighted(true);
  if (!(co > std::numeric_limits<double>::min()) || !std::isfinite(counter)) {
    std::ostringstream msg;
    msg << "enhancement_ratio: co-propagating additional intensity underflows (" << co
        << ") at strength " << strength;
    throw NumericalError(msg.str());
  }
  return counter / co;
}

double enhancement_ratio(double strength, double zeta1, double a, const quad::Tolerances& tol) {
  return enhancement_ratio(strength, flipped_density_profile(zeta1, a, tol.density), tol);
}

std::vector<double> uniform_times(int n) {
  if (n < 2) throw std::invalid_argument("uniform_times: need at least 2 points");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = static_cast<double>(i) / (n - 1);
  return t;
}

IntensityTrace make_trace(const StokesEvaluator& evaluator, const std::vector<double>& times,
                          const std::optional<SpinCorrelation>& seed, TraceGeometry geometry) {
  IntensityTrace trace;
  trace.geometry = geometry;
  for (double t : times) {
    if (seed) {
      trace.push_back(t, evaluator.point(t, *seed));
    } else {
      const double v = evaluator.spontaneous(t);
      trace.push_back(t, {v, v, 0.0});
    }
  }
  return trace;
}

IntensityTrace urs_trace(const ModelParams& params, PulseShape shape,
                         const std::vector<double>& times, const quad::Tolerances& tol) {
  return make_trace(StokesEvaluator(params, shape, 1.0, tol), times, std::nullopt,
                    TraceGeometry::None);
}

IntensityTrace ers_trace(const ModelParams& params, PulseShape shape, Geometry geometry,
                         const std::vector<double>& times, const quad::Tolerances& tol) {
  return make_trace(StokesEvaluator(params, shape, params.w0, tol), times,
                    prepared_seed(params, shape, geometry, tol), trace_geometry(geometry));
}

}  // namespace ersim
