#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ersim/kernels.hpp"

using namespace ersim::kernels;

namespace {

std::vector<double> uniform(int n, double hi = 1.0) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = hi * i / (n - 1);
  return g;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(KernelH, Limits) {
  EXPECT_EQ(kernel_h({0.7, 0.2, 0.5, 0.5, 0.0}), 1.0);
  EXPECT_EQ(kernel_h({0.4, 0.4, 0.9, 0.1, 3.0}), 1.0);
  EXPECT_LT(rel(kernel_h({1.0, 0.5, 1.0, 0.0, 2.0}), 2.2795853023360673), 1e-14);
}

TEST(KernelH, MonotoneAndAtLeastOne) {
  double prev = 1.0;
  for (double y = 0.0; y <= 400.0; y += 0.5) {
    const double h = h_of(y);
    EXPECT_GE(h, 1.0);
    EXPECT_GE(h, prev);
    prev = h;
  }
}

TEST(KernelH, NegativeGainUsesBesselJ) {
  const double h = kernel_h({1.0, 0.0, 1.0, 0.0, -2.25});
  EXPECT_NEAR(h, std::cyl_bessel_j(0.0, 3.0), 1e-14);
}

TEST(KernelGs, Limits) {
  EXPECT_EQ(kernel_gs({1.0, 0.3, 1.0, 0.0, 0.0}), 0.0);
  EXPECT_EQ(kernel_gs({0.3, 0.3, 1.0, 0.0, 1.7}), 1.7);
  EXPECT_NEAR(kernel_gs({0.3 + 1e-13, 0.3, 1.0, 0.0, 1.7}), 1.7, 1e-12);
  // p_diff * dz = 1 with p_diff = 2, dz = 1/2
  const double expected = std::sqrt(2.0 / 0.5) * 1.5906368546373291;
  EXPECT_LT(rel(kernel_gs({0.75, 0.25, 1.0, 0.0, 2.0}), expected), 1e-14);
}

TEST(KernelGs, ContinuousAcrossBranchCutoff) {
  // 2 sqrt(y) = 20 is the switch from series to asymptotic expansion
  const double y = 100.0;
  const double below = gs_over_p(std::nextafter(y, 0.0));
  const double above = gs_over_p(y);
  EXPECT_LT(rel(below, above), 1e-10);
  const double h = kernel_h({1.0, 0.0, 1.0, 0.0, std::nextafter(y, 0.0)});
  EXPECT_LT(rel(h, h_of(y)), 1e-10);
}

TEST(KernelGe, Limits) {
  EXPECT_EQ(kernel_ge({0.9, 0.4, 1.0, 0.0, 0.0}), 0.5);
  const KernelArgs a{0.75, 0.25, 1.0, 0.0, 2.0};
  EXPECT_LT(rel(kernel_ge(a), a.dz() / a.p_diff * kernel_gs(a)), 1e-14);
}

TEST(KernelGe, ScalesWithSqrtRatio) {
  // At fixed p_diff * dz the kernel is sqrt(dz / p_diff) I1(2 sqrt(p_diff dz)).
  const double product = 3.0;
  const double i1 = std::cyl_bessel_i(1.0, 2.0 * std::sqrt(product));
  for (double dz : {0.05, 0.3, 0.9}) {
    const double p = product / dz;
    EXPECT_LT(rel(kernel_ge({dz, 0.0, 1.0, 0.0, p}), std::sqrt(dz / p) * i1), 1e-13) << dz;
  }
}

TEST(KernelArgs, Validation) {
  EXPECT_THROW(KernelArgs({0.2, 0.5, 1.0, 0.0, 1.0}).validate(), std::invalid_argument);
  EXPECT_THROW(KernelArgs({0.5, 0.2, 0.0, 1.0, 1.0}).validate(), std::invalid_argument);
  EXPECT_NO_THROW(KernelArgs({0.5, 0.2, 1.0, 0.0, -1.0}).validate());
}

TEST(KernelResidual, DecoupledIsExact) {
  const auto t = uniform(9);
  const auto z = uniform(9);
  EXPECT_EQ(kernel_residual(t, z, {0.0, 0.3, 1e-11}), 0.0);
}

TEST(KernelResidual, SecondOrderUnderRefinement) {
  double prev = 0.0;
  for (int n : {11, 21, 41, 81}) {
    const auto t = uniform(n);
    const auto z = uniform(n);
    const double r = kernel_residual(t, z, {2.0, 0.4, 1e-12});
    if (prev > 0.0) EXPECT_GE(prev / r, 1.8) << n;
    prev = r;
  }
}

TEST(KernelResidual, FineGridRegression) {
  // gain 4 on the unit square reaches p_diff * dz = 4
  const auto t = uniform(200);
  const auto z = uniform(200);
  const double r = kernel_residual(t, z, {4.0, 0.0, 1e-12});
  EXPECT_LT(r, 1e-2);
  EXPECT_LT(r, 6e-6);
}

TEST(KernelResidual, RejectsCoarseOrUnsortedGrids) {
  const auto ok = uniform(5);
  const std::vector<double> coarse{0.0, 0.5, 1.0};
  const std::vector<double> unsorted{0.0, 0.5, 0.4, 0.8, 1.0};
  EXPECT_THROW(kernel_residual(coarse, ok, {}), std::invalid_argument);
  EXPECT_THROW(kernel_residual(ok, unsorted, {}), std::invalid_argument);
}
