#include "ersim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ersim/errors.hpp"
#include "ersim/quadrature.hpp"

namespace ersim::oracle {

namespace {

constexpr int kMinCells = 32;
constexpr double kStepLimit = 0.5;
constexpr double kGrowthSlack = 1.01;

// Rates of the moment equations at one instant.
struct Rates {
  double decay;   // 2 Re Gamma_S
  double gain;    // kappa = W chi^2 L T / c
  double output;  // intensity scale times chi^2 / chi0^2
};

// dK/dt = -decay K + gain (A + A^dag) + source I, A = dz W K where W is the
// strictly lower triangle of ones plus 1/2 on the diagonal (midpoint rule
// for the slaved field).
void derivative(const Eigen::MatrixXcd& k, const Rates& r, bool source, double dz,
                Eigen::MatrixXcd& out) {
  const Eigen::Index m = k.rows();
  Eigen::MatrixXcd a(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    std::complex<double> run = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      a(i, j) = dz * (run + 0.5 * k(i, j));
      run += k(i, j);
    }
  }
  out = -r.decay * k + r.gain * (a + a.adjoint());
  if (source) out.diagonal().array() += r.decay;
}

double row_norm(const Eigen::MatrixXcd& k) {
  return k.cwiseAbs().rowwise().sum().maxCoeff();
}

double total_flux(const Eigen::MatrixXcd& k, double dz) { return dz * k.sum().real(); }

}  // namespace

GridState::GridState(int cells) : z_cells(cells), corr(Eigen::MatrixXcd::Zero(cells, cells)) {
  for (int i = 0; i < cells; ++i) z_cells[i] = (i + 0.5) / cells;
}

double GridState::hermiticity_defect() const {
  return (corr - corr.adjoint()).cwiseAbs().maxCoeff();
}

double GridState::min_diagonal() const { return corr.diagonal().real().minCoeff(); }

IntensityTrace simulate(const ModelParams& params, PulseShape shape,
                        const SpinCorrelation& initial, const OracleOptions& options) {
  if (options.cells < kMinCells) {
    throw ConfigError("cells", "oracle grid needs at least 32 cells, got " +
                                   std::to_string(options.cells));
  }
  if (initial.ordering != Ordering::NormalOrdered) {
    throw OrderingError("oracle: initial seed must be normally ordered");
  }
  if (!(options.dt > 0.0) || options.time_points < 2) {
    throw ConfigError("dt", "need dt > 0 and at least 2 time points");
  }
  const long steps = std::lround(1.0 / options.dt);
  const long intervals = options.time_points - 1;
  if (std::abs(steps * options.dt - 1.0) > 1e-9 || steps % intervals != 0) {
    throw ConfigError("dt", "1/dt must be an integer multiple of time_points - 1");
  }
  const long stride = steps / intervals;
  const double dt = 1.0 / static_cast<double>(steps);

  const ChannelHistory history(params.write2, shape, params.w0, true);
  const double scale = params.intensity_scale();
  const auto rates = [&](double t) {
    return Rates{2.0 * history.spin_rate(t), history.gain_rate(t),
                 scale * history.coupling_sq(t)};
  };

  double fastest = 0.0;
  for (long n = 0; n < steps; ++n) {
    const Rates r = rates((n + 0.5) * dt);
    fastest = std::max({fastest, r.decay, 2.0 * std::abs(r.gain)});
  }
  if (dt * fastest > kStepLimit) {
    std::ostringstream msg;
    msg << "oracle: dt=" << dt << " too large for rate " << fastest;
    throw StabilityError(msg.str());
  }

  const int m = options.cells;
  const double dz = 1.0 / m;
  GridState vac(m);
  GridState seed(m);
  vac.corr.setIdentity();
  for (int i = 0; i < m; ++i) {
    seed.corr(i, i) = quad::gauss_legendre_10(initial.density, i * dz, (i + 1) * dz) / dz;
  }

  const double bound_vac = row_norm(vac.corr);
  const double bound_seed = row_norm(seed.corr);
  double gain_integral = 0.0;
  double source_integral = 0.0;

  IntensityTrace trace;
  trace.geometry = initial.geometry == Geometry::Co ? TraceGeometry::Co : TraceGeometry::Counter;
  const auto record = [&](double t) {
    const double out = rates(t).output;
    IntensityPoint p;
    p.vacuum_part = out * total_flux(vac.corr, dz);
    p.seed_part = out * total_flux(seed.corr, dz);
    p.total = p.vacuum_part + p.seed_part;
    trace.push_back(t, p);
  };
  const auto check = [&](const GridState& s, double k0, bool source, double t) {
    const double limit =
        kGrowthSlack * std::exp(gain_integral) * (k0 + (source ? source_integral : 0.0));
    const double norm = row_norm(s.corr);
    if (!std::isfinite(norm) || norm > limit) {
      std::ostringstream msg;
      msg << "oracle: moments grew to " << norm << " (bound " << limit << ") at t'=" << t;
      throw StabilityError(msg.str());
    }
  };

  Eigen::MatrixXcd d(m, m);
  Eigen::MatrixXcd half(m, m);
  const auto advance = [&](GridState& s, bool source, const Rates& r0, const Rates& rm) {
    derivative(s.corr, r0, source, dz, d);
    half = s.corr + 0.5 * dt * d;
    derivative(half, rm, source, dz, d);
    s.corr += dt * d;
  };

  record(0.0);
  for (long n = 0; n < steps; ++n) {
    const double t = n * dt;
    const Rates r0 = rates(t);
    const Rates rm = rates(t + 0.5 * dt);
    advance(vac, true, r0, rm);
    advance(seed, false, r0, rm);
    gain_integral += 2.0 * std::abs(rm.gain) * dt;
    source_integral += rm.decay * dt;
    const double t_next = (n + 1) * dt;
    vac.t = seed.t = t_next;
    check(vac, bound_vac, true, t_next);
    check(seed, bound_seed, false, t_next);
    if (options.observer) options.observer(vac, seed);
    if ((n + 1) % stride == 0) record(static_cast<double>((n + 1) / stride) / intervals);
  }
  return trace;
}

double max_relative_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_relative_deviation: size mismatch");
  double peak = 0.0;
  for (double v : b) peak = std::max(peak, std::abs(v));
  const double floor = 1e-12 * peak;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = std::abs(a[i] - b[i]);
    if (diff == 0.0) continue;
    worst = std::max(worst, diff / std::max(std::abs(b[i]), floor));
  }
  return worst;
}

double ConvergenceReport::min_order() const {
  return orders.empty() ? 0.0 : *std::min_element(orders.begin(), orders.end());
}

ConvergenceReport convergence_study(const ModelParams& params, PulseShape shape,
                                    const SpinCorrelation& initial,
                                    const std::vector<OracleOptions>& resolutions,
                                    const std::vector<double>& analytic) {
  if (resolutions.size() < 3) {
    throw std::invalid_argument("convergence_study: need at least 3 resolutions");
  }
  ConvergenceReport report;
  report.resolutions = resolutions;
  for (const auto& opt : resolutions) {
    report.errors.push_back(
        max_relative_deviation(simulate(params, shape, initial, opt).total, analytic));
  }
  for (std::size_t k = 0; k + 1 < resolutions.size(); ++k) {
    const auto& lo = resolutions[k];
    const auto& hi = resolutions[k + 1];
    const bool space = lo.cells != hi.cells;
    if (space == (lo.dt != hi.dt)) {
      throw std::invalid_argument("convergence_study: refine exactly one of cells or dt per step");
    }
    const double ratio = space ? static_cast<double>(hi.cells) / lo.cells : lo.dt / hi.dt;
    report.orders.push_back(std::log(report.errors[k] / report.errors[k + 1]) / std::log(ratio));
    if (!(report.errors[k + 1] < report.errors[k])) report.monotone = false;
  }
  return report;
}

}  // namespace ersim::oracle
