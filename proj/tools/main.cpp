#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ersim/version.hpp"

using namespace ersim::cli;

int main(int argc, char** argv) {
  CLI::App app{"ersim: enhanced vs usual Raman scattering in atomic ensembles"};
  app.set_version_flag("--version", ersim::kVersion);
  app.require_subcommand(1);

  GlobalOptions g;
  std::string config;
  double quad_tol = 0.0;
  app.add_option("--config", config, "key = value parameter file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--time-points", g.time_points, "samples on [0, T2]")
      ->capture_default_str()
      ->check(CLI::Range(2, 1000000));
  app.add_option("--quad-tol", quad_tol, "outer quadrature tolerance (inner is 10x tighter)")
      ->check(CLI::PositiveNumber);

  Fig2Options f2;
  auto* fig2 = app.add_subcommand("fig2", "flipped-atom density n(z)");
  fig2->add_option("--zeta1", f2.zeta1, "write-1 strengths")->capture_default_str();
  fig2->add_option("--a", f2.a, "decay-to-gain ratio")->capture_default_str();
  fig2->add_option("--z-points", f2.z_points)->capture_default_str();

  Fig3Options f3;
  auto* fig3 = app.add_subcommand("fig3", "counter/co additional-intensity ratio");
  fig3->add_option("--zeta1", f3.zeta1, "write-1 strengths")->capture_default_str();
  fig3->add_option("--a", f3.a, "decay-to-gain ratio")->capture_default_str();
  fig3->add_option("--strength-max", f3.strength_max)->capture_default_str();
  fig3->add_option("--strength-points", f3.strength_points)->capture_default_str();
  fig3->add_flag("--swap-geometry", f3.swap_geometry, "report co/counter instead");

  Fig4Options f4;
  auto* fig4 = app.add_subcommand("fig4", "URS and ERS traces, co and counter");
  fig4->add_flag("--write1-off", f4.write1_off, "drop the first write pulse");

  RunOptions ro;
  auto* run = app.add_subcommand("run", "single trace for a config");
  run->add_option("--geometry", ro.geometry, "co | counter | none")
      ->capture_default_str()
      ->check(CLI::IsMember({"co", "counter", "none"}));
  run->add_flag("--write1-off", ro.write1_off, "drop the first write pulse");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "analytic evaluator vs moment oracle");
  verify->add_option("--cells", vo.cells, "oracle grid cells M")->capture_default_str();
  verify->add_option("--steps", vo.steps, "time steps per T2")->capture_default_str();
  verify->add_option("--threshold", vo.threshold, "max relative deviation")
      ->capture_default_str();
  verify->add_flag("--convergence", vo.convergence, "also run M = 32, 64, 128");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (!config.empty()) g.config_path = config;
  if (quad_tol > 0.0) g.quad_tol = quad_tol;

  return guarded(
      [&] {
        if (*fig2) return cmd_fig2(g, f2, std::cerr);
        if (*fig3) return cmd_fig3(g, f3, std::cerr);
        if (*fig4) return cmd_fig4(g, f4, std::cerr);
        if (*run) return cmd_run(g, ro, std::cerr);
        return cmd_verify(g, vo, std::cout);
      },
      std::cerr);
}
