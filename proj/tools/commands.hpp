#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ersim/params.hpp"
#include "ersim/quadrature.hpp"

namespace ersim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerification = 4;

struct GlobalOptions {
  std::optional<std::string> config_path;
  std::string out_dir = ".";
  int time_points = 201;
  std::optional<double> quad_tol;

  quad::Tolerances tolerances() const;
};

struct Fig2Options {
  std::vector<double> zeta1 = {6.0, 8.0};
  double a = 0.2;
  int z_points = 101;
};

struct Fig3Options {
  std::vector<double> zeta1 = {6.0, 8.0};
  double a = 0.2;
  double strength_max = 10.0;
  int strength_points = 200;
  bool swap_geometry = false;
};

struct Fig4Options {
  bool write1_off = false;
};

struct RunOptions {
  std::string geometry = "co";  // co | counter | none
  bool write1_off = false;
};

struct VerifyOptions {
  int cells = 128;
  int steps = 2000;
  bool convergence = false;
  double threshold = 0.02;
};

/// Constant-pulse scenario used by `verify` when no config is given.
Config smoke_config();

/// `%.17g`, the format of every CSV number.
std::string format_number(double x);

int cmd_fig2(const GlobalOptions& g, const Fig2Options& o, std::ostream& log);
int cmd_fig3(const GlobalOptions& g, const Fig3Options& o, std::ostream& log);
int cmd_fig4(const GlobalOptions& g, const Fig4Options& o, std::ostream& log);
int cmd_run(const GlobalOptions& g, const RunOptions& o, std::ostream& log);
int cmd_verify(const GlobalOptions& g, const VerifyOptions& o, std::ostream& log);

/// Runs a command and maps library exceptions onto exit codes.
int guarded(const std::function<int()>& command, std::ostream& err);

}  // namespace ersim::cli
