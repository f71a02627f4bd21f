#include <cmath>

#include <gtest/gtest.h>

#include "ersim/errors.hpp"
#include "ersim/intensity.hpp"
#include "ersim/specfun.hpp"

using namespace ersim;

namespace {

ModelParams flat(double gain, double depletion = 0.0, double spin_decay = 0.0, double w0 = 1.0) {
  ModelParams p;
  p.w0 = w0;
  p.pulse_shape = PulseShape::ConstantStep;
  p.write2.gain = gain;
  p.write2.depletion = depletion;
  p.write2.spin_decay = spin_decay;
  p.write2.stark = 3.0;
  p.reference_gain = gain > 0.0 ? gain : 1.0;
  p.write1.gain = 6.0;
  p.write1.spin_decay = 0.1;
  p.write1.depletion = 0.5;  // a = 0.2
  return p;
}

ModelParams fig4() { return build_params(default_config()); }

SpinCorrelation linear_seed(double slope) {
  return {[slope](double z) { return slope * z; }, 1.0, Geometry::Co, Ordering::NormalOrdered};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Spontaneous, EntranceValue) {
  const ModelParams p = flat(3.0, 0.2, 0.1, 0.8);
  const StokesEvaluator e(p, PulseShape::ConstantStep, p.w0);
  EXPECT_DOUBLE_EQ(e.spontaneous(0.0), p.intensity_scale());
  EXPECT_DOUBLE_EQ(urs_intensity(0.0, p, PulseShape::ConstantStep), p.intensity_scale());
}

TEST(Spontaneous, NoPumpNoScattering) {
  ModelParams p = fig4();
  p.write2.gain = 0.0;
  for (double t : {0.0, 0.3, 0.5, 0.9}) {
    EXPECT_EQ(urs_intensity(t, p, PulseShape::TruncatedGaussian), 0.0);
    EXPECT_EQ(urs_intensity(t, p, PulseShape::ConstantStep), 0.0);
  }
}

TEST(Spontaneous, DecayAloneKeepsTheVacuumFlux) {
  // Decayed vacuum plus restored Langevin noise sum to the vacuum level.
  ModelParams p = flat(1e-300, 0.0, 0.7);
  p.reference_gain = 1e-300;
  const StokesEvaluator e(p, PulseShape::ConstantStep, 1.0);
  for (double t : {0.2, 0.5, 1.0}) EXPECT_NEAR(e.spontaneous(t), 1.0, 1e-9);
}

TEST(Spontaneous, SmallGainSeries) {
  const double g = 1e-3;
  const ModelParams p = flat(g);
  const StokesEvaluator e(p, PulseShape::ConstantStep, 1.0);
  for (double t : {0.25, 0.5, 1.0}) {
    const double x = g * t;
    EXPECT_NEAR(e.spontaneous(t), 1.0 + x + 0.5 * x * x + 5.0 / 36.0 * x * x * x, 1e-12) << t;
  }
}

TEST(Spontaneous, GeneralPathMatchesClosedForm) {
  const ModelParams c = flat(4.0, 0.3, 0.05, 0.95);
  const StokesEvaluator ec(c, PulseShape::ConstantStep, c.w0);
  const ModelParams g = fig4();
  const StokesEvaluator eg(g, PulseShape::TruncatedGaussian, g.w0);
  for (double t = 0.0; t <= 1.0; t += 0.05) {
    const double a = ec.spontaneous(t);
    EXPECT_LT(std::abs(a - ec.spontaneous_closed_form(t)), 1e-6 * a) << t;
    const double b = eg.spontaneous(t);
    EXPECT_LE(std::abs(b - eg.spontaneous_closed_form(t)), 1e-6 * b) << t;
  }
}

TEST(Spontaneous, ConstantPulseClosedFormByHand) {
  // No decay: e^{-2 Re Gamma} = 1 and the Langevin term vanishes.
  const ModelParams p = flat(2.0);
  const StokesEvaluator e(p, PulseShape::ConstantStep, 1.0);
  for (double t : {0.3, 1.0}) {
    const double x = 2.0 * std::sqrt(2.0 * t);
    const double i0 = std::cyl_bessel_i(0.0, x);
    const double i1 = std::cyl_bessel_i(1.0, x);
    EXPECT_LT(rel(e.spontaneous(t), i0 * i0 - i1 * i1), 1e-12);
  }
}

TEST(Additional, ZeroSeedAndEntrance) {
  const ModelParams p = flat(3.0, 0.1, 0.05);
  const StokesEvaluator e(p, PulseShape::ConstantStep, 1.0);
  for (double t : {0.0, 0.4, 1.0}) EXPECT_EQ(e.additional(t, SpinCorrelation::none()), 0.0);
  const auto n = flipped_density_profile(6.0, 0.2);
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) mean += n((i + 0.5) / 20000);
  mean /= 20000;
  EXPECT_NEAR(e.additional(0.0, n), mean, 1e-8 * mean);
}

TEST(Additional, RejectsAntiNormalSeed) {
  const ModelParams p = flat(1.0);
  const StokesEvaluator e(p, PulseShape::ConstantStep, 1.0);
  EXPECT_THROW(e.additional(0.5, SpinCorrelation::vacuum()), OrderingError);
}

TEST(Additional, ScalesLinearlyWithTheSeed) {
  const ModelParams p = fig4();
  const StokesEvaluator e(p, PulseShape::TruncatedGaussian, p.w0);
  const auto base = prepared_seed(p, PulseShape::TruncatedGaussian, Geometry::Counter);
  for (double lambda : {0.5, 2.0, 3.7}) {
    const SpinCorrelation scaled{[&](double z) { return lambda * base(z); }, 1.0,
                                 Geometry::Counter, Ordering::NormalOrdered};
    for (double t : {0.3, 0.5, 0.7}) {
      const double a = e.additional(t, base);
      EXPECT_LT(rel(e.additional(t, scaled), lambda * a), 1e-12) << lambda << " " << t;
    }
  }
}

TEST(Additional, CounterDominatesForIncreasingSeeds) {
  const ModelParams p = flat(3.0, 0.1, 0.05);
  const StokesEvaluator e(p, PulseShape::ConstantStep, 1.0);
  for (const auto& base : {linear_seed(1.0), flipped_density_profile(6.0, 0.2)}) {
    const auto counter = map_geometry(base, Geometry::Counter);
    for (double t = 0.05; t <= 1.0; t += 0.05) {
      EXPECT_GT(e.additional(t, counter), e.additional(t, base)) << t;
    }
  }
}

TEST(Totals, Additivity) {
  const ModelParams p = fig4();
  const StokesEvaluator e(p, PulseShape::TruncatedGaussian, p.w0);
  for (Geometry g : {Geometry::Co, Geometry::Counter}) {
    const auto seed = prepared_seed(p, PulseShape::TruncatedGaussian, g);
    for (double t : {0.2, 0.5, 0.8}) {
      const IntensityPoint pt = ers_total(t, g, p, PulseShape::TruncatedGaussian);
      EXPECT_EQ(pt.total, pt.vacuum_part + pt.seed_part);
      const double add = ers_additional(t, seed, p, PulseShape::TruncatedGaussian);
      EXPECT_LE(std::abs(pt.total - add - e.spontaneous(t)), 1e-10 * e.spontaneous(t));
    }
  }
}

TEST(Totals, ZeroSeedEqualsUrs) {
  const ModelParams p = fig4().without_write1().with_w0(1.0);
  const auto times = uniform_times(41);
  const auto urs = urs_trace(p, PulseShape::TruncatedGaussian, times);
  for (Geometry g : {Geometry::Co, Geometry::Counter}) {
    const auto ers = ers_trace(p, PulseShape::TruncatedGaussian, g, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      EXPECT_LE(std::abs(ers.total[i] - urs.total[i]), 1e-8 * urs.total[i]) << i;
    }
  }
}

TEST(Totals, NormalizationGauge) {
  // Doubling the gain and halving the time leaves p t' fixed; with decays off
  // the spontaneous intensity per unit scale is unchanged.
  const ModelParams a = flat(2.0);
  ModelParams b = flat(4.0);
  b.reference_gain = 2.0;
  const StokesEvaluator ea(a, PulseShape::ConstantStep, 1.0);
  const StokesEvaluator eb(b, PulseShape::ConstantStep, 1.0);
  for (double t : {0.2, 0.6, 1.0}) {
    EXPECT_LT(rel(eb.spontaneous(t / 2) / b.intensity_scale(), ea.spontaneous(t) / a.intensity_scale()),
              1e-12);
  }
}

TEST(Totals, VanishingPump) {
  Config cfg = default_config();
  cfg["pump_ratio"] = "1e-6";
  const ModelParams p = build_params(cfg);
  const auto times = uniform_times(21);
  const auto tr = ers_trace(p, PulseShape::TruncatedGaussian, Geometry::Counter, times);
  for (double v : tr.total) EXPECT_LT(v, 1e-10);
}

TEST(Traces, PartsArePositiveAndAdd) {
  const ModelParams p = fig4();
  const auto tr = ers_trace(p, PulseShape::TruncatedGaussian, Geometry::Co, uniform_times(51));
  EXPECT_EQ(tr.geometry, TraceGeometry::Co);
  ASSERT_EQ(tr.size(), 51u);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    EXPECT_GE(tr.vacuum_part[i], 0.0);
    EXPECT_GE(tr.seed_part[i], 0.0);
    EXPECT_EQ(tr.total[i], tr.vacuum_part[i] + tr.seed_part[i]);
  }
  const auto urs = urs_trace(p, PulseShape::TruncatedGaussian, uniform_times(51));
  EXPECT_EQ(urs.geometry, TraceGeometry::None);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < urs.size(); ++i) {
    if (urs.total[i] > urs.total[peak]) peak = i;
  }
  for (std::size_t i = 1; i <= peak; ++i) EXPECT_GE(urs.total[i], urs.total[i - 1]);
  for (std::size_t i = peak + 1; i < urs.size(); ++i) EXPECT_LE(urs.total[i], urs.total[i - 1]);
  EXPECT_THROW(uniform_times(1), std::invalid_argument);
}

TEST(EnhancementRatio, FlatKernelLimit) {
  for (double zeta : {6.0, 8.0}) EXPECT_NEAR(enhancement_ratio(1e-6, zeta, 0.2), 1.0, 1e-5);
}

TEST(EnhancementRatio, GrowsWithStrengthAndZeta) {
  double prev6 = 1.0;
  for (double s = 0.25; s <= 10.0; s += 0.25) {
    const double r6 = enhancement_ratio(s, 6.0, 0.2);
    const double r8 = enhancement_ratio(s, 8.0, 0.2);
    EXPECT_GT(r6, 1.0);
    EXPECT_GT(r6, prev6);
    EXPECT_GT(r8, r6);
    prev6 = r6;
  }
}

TEST(EnhancementRatio, MatchesDirectIntegrals) {
  const auto n = flipped_density_profile(6.0, 0.2);
  const double x = 3.0;
  const int m = 20000;
  double co = 0.0;
  double counter = 0.0;
  for (int i = 0; i < m; ++i) {
    const double z = (i + 0.5) / m;
    const double h = std::cyl_bessel_i(0.0, 2.0 * std::sqrt(x * (1.0 - z)));
    co += h * h * n(z);
    counter += h * h * n(1.0 - z);
  }
  EXPECT_NEAR(enhancement_ratio(x, n), counter / co, 1e-7);
}

TEST(EnhancementRatio, UnderflowIsAnError) {
  EXPECT_THROW(enhancement_ratio(1.0, SpinCorrelation::none()), NumericalError);
}
