#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ersim/specfun.hpp"

using namespace ersim::specfun;

namespace {

// Defining power series in long double, summed until the terms vanish.
double series_i(int order, double x) {
  const long double h = 0.5L * x;
  long double term = order == 0 ? 1.0L : h;
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= h * h / (static_cast<long double>(k) * (k + order));
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return static_cast<double>(sum);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Bessel, ReferenceValues) {
  EXPECT_EQ(bessel_i(0, 0.0), 1.0);
  EXPECT_EQ(bessel_i(1, 0.0), 0.0);
  EXPECT_LT(rel(bessel_i(0, 1.0), 1.2660658777520084), 1e-12);
  EXPECT_LT(rel(bessel_i(1, 2.0), 1.5906368546373291), 1e-12);
}

TEST(Bessel, MatchesSeriesOracle) {
  for (double x = 0.05; x <= 60.0; x += 0.173) {
    EXPECT_LT(rel(bessel_i(0, x), series_i(0, x)), 1e-12) << x;
    EXPECT_LT(rel(bessel_i(1, x), series_i(1, x)), 1e-12) << x;
  }
}

TEST(Bessel, MatchesStandardLibrary) {
  for (double x = 0.1; x <= 200.0; x *= 1.37) {
    EXPECT_LT(rel(bessel_i(0, x), std::cyl_bessel_i(0.0, x)), 1e-12) << x;
    EXPECT_LT(rel(bessel_i(1, x), std::cyl_bessel_i(1.0, x)), 1e-12) << x;
  }
}

TEST(Bessel, ScaledAgreesWithUnscaled) {
  for (double x = 0.0; x <= 30.0; x += 0.25) {
    for (int n : {0, 1}) {
      const double unscaled = bessel_i(n, x);
      const double scaled = bessel_i(n, x, true) * std::exp(x);
      if (unscaled == 0.0) {
        EXPECT_EQ(scaled, 0.0);
      } else {
        EXPECT_LT(rel(scaled, unscaled), 1e-12) << n << " " << x;
      }
    }
  }
}

TEST(Bessel, ScaledStaysFiniteForHugeArguments) {
  for (double x : {1e3, 1e5, 1e6}) {
    const double v = bessel_i(0, x, true);
    ASSERT_TRUE(std::isfinite(v));
    const double lead = 1.0 / std::sqrt(2.0 * M_PI * x);
    EXPECT_LT(rel(v, lead * (1.0 + 1.0 / (8.0 * x) + 9.0 / (128.0 * x * x))), 1e-9);
    EXPECT_LT(bessel_i(1, x, true), v);
  }
}

TEST(Bessel, DerivativeRecurrence) {
  const double h = 1e-3;
  for (double x = 0.1; x <= 50.0; x += 0.37) {
    const auto f = [](double y) { return bessel_i(1, y); };
    const double fd = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
    const double exact = bessel_i(0, x) - bessel_i(1, x) / x;
    EXPECT_LT(rel(fd, exact), 1e-8) << x;
  }
}

TEST(Bessel, ContinuousAcrossRegimeCutoff) {
  const double c = kAsymptoticCutoff;
  for (int n : {0, 1}) {
    const double below = bessel_i(n, std::nextafter(c, 0.0));
    const double above = bessel_i(n, c);
    EXPECT_LT(rel(below, above), 1e-12);
  }
}

TEST(Bessel, EnergyDifferenceIsPositiveAndGrows) {
  double prev_unscaled = 0.0;
  double prev_scaled = INFINITY;
  for (double x = 0.0; x <= 40.0; x += 0.1) {
    const double i0 = bessel_i(0, x);
    const double i1 = bessel_i(1, x);
    const double d = i0 * i0 - i1 * i1;
    const double s0 = bessel_i(0, x, true);
    const double s1 = bessel_i(1, x, true);
    const double ds = s0 * s0 - s1 * s1;
    EXPECT_GT(d, 0.0);
    EXPECT_GE(d, prev_unscaled);
    EXPECT_LE(ds, prev_scaled);
    prev_unscaled = d;
    prev_scaled = ds;
  }
  EXPECT_EQ(bessel_i(0, 0.0) * bessel_i(0, 0.0) - bessel_i(1, 0.0) * bessel_i(1, 0.0), 1.0);
}

TEST(Bessel, RejectsBadInput) {
  EXPECT_THROW(bessel_i(0, -1.0), std::domain_error);
  EXPECT_THROW(bessel_i(2, 1.0), std::domain_error);
}

TEST(Riemann, PositiveArgumentMatchesBessel) {
  for (double y : {0.0, 1e-8, 0.3, 1.0, 7.0, 99.0, 100.0, 101.0, 2500.0}) {
    const double x = 2.0 * std::sqrt(y);
    EXPECT_LT(rel(riemann_h(y), std::cyl_bessel_i(0.0, x)), 1e-12) << y;
    if (y > 0.0) {
      EXPECT_LT(rel(riemann_phi(y), std::cyl_bessel_i(1.0, x) / std::sqrt(y)), 1e-12) << y;
    } else {
      EXPECT_EQ(riemann_phi(y), 1.0);
    }
  }
}

TEST(Riemann, NegativeArgumentUsesOscillatoryContinuation) {
  for (double y : {-1e-6, -0.4, -0.999, -1.0, -3.0, -40.0}) {
    const double x = 2.0 * std::sqrt(-y);
    EXPECT_NEAR(riemann_h(y), std::cyl_bessel_j(0.0, x), 1e-13) << y;
    EXPECT_NEAR(riemann_phi(y), std::cyl_bessel_j(1.0, x) / std::sqrt(-y), 1e-13) << y;
    const double j0 = std::cyl_bessel_j(0.0, x);
    const double j1 = std::cyl_bessel_j(1.0, x);
    EXPECT_NEAR(riemann_energy(y), j0 * j0 + j1 * j1, 1e-13) << y;
  }
}

TEST(Riemann, EnergyIsMeanSquareOfH) {
  // integral of H(y s)^2 over s in [0, 1], midpoint rule with 20000 cells
  for (double y : {-2.0, 0.0, 0.5, 3.0, 12.0}) {
    const int n = 20000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double h = riemann_h(y * (i + 0.5) / n);
      sum += h * h;
    }
    EXPECT_LT(rel(sum / n, riemann_energy(y)), 1e-7) << y;
  }
}
