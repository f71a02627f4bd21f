#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "ersim/intensity.hpp"
#include "ersim/params.hpp"
#include "ersim/spinwave.hpp"

namespace ersim::oracle {

/// Equal-time second moments of the write-2 spin wave on M uniform cells,
/// corr(i, j) = (L/M) <S(z_i) S^dag(z_j)> (anti-normally ordered, so the
/// vacuum is the identity matrix).
struct GridState {
  std::vector<double> z_cells;
  Eigen::MatrixXcd corr;
  double t = 0.0;

  explicit GridState(int cells);
  int cells() const { return static_cast<int>(z_cells.size()); }
  double hermiticity_defect() const;
  double min_diagonal() const;
};

struct OracleOptions {
  int cells = 128;
  double dt = 1.0 / 2000.0;   ///< units of T2
  int time_points = 201;      ///< output samples on [0, T2]
  /// Called after every time step with the vacuum-driven and seed-driven
  /// moment matrices.
  std::function<void(const GridState& vacuum, const GridState& seed)> observer;
};

/// Integrates the discretized moving-frame propagation pair with the field
/// slaved to the spin wave (cumulative z integral) and returns the output
/// intensity in the same normalization as the analytic evaluator.
/// `initial` is the normally ordered seed in the write-2 frame; the vacuum
/// part is added internally.
/// Throws ConfigError for cells < 32 or a dt that does not tile the output
/// grid, StabilityError if dt is too large for the fastest rate or the
/// moments outgrow their a-priori bound.
IntensityTrace simulate(const ModelParams& params, PulseShape shape,
                        const SpinCorrelation& initial, const OracleOptions& options = {});

/// Largest pointwise |a - b| / |b| over two traces sampled on the same times.
double max_relative_deviation(const std::vector<double>& a, const std::vector<double>& b);

struct ConvergenceReport {
  std::vector<OracleOptions> resolutions;
  std::vector<double> errors;
  /// log(e_k / e_{k+1}) / log(h_k / h_{k+1}) for consecutive resolutions.
  std::vector<double> orders;
  bool monotone = true;

  double min_order() const;
};

/// Runs simulate at each resolution and measures the total intensity
/// against `analytic`. Needs at least 3 resolutions, each refining exactly
/// one of cells or dt relative to the previous one.
ConvergenceReport convergence_study(const ModelParams& params, PulseShape shape,
                                    const SpinCorrelation& initial,
                                    const std::vector<OracleOptions>& resolutions,
                                    const std::vector<double>& analytic);

}  // namespace ersim::oracle
