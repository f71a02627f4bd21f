#pragma once

namespace ersim::specfun {

/// Argument above which the asymptotic expansion replaces the power series.
/// At x = 20 the truncated asymptotic series is accurate to ~e^{-2x} ≈ 4e-18.
inline constexpr double kAsymptoticCutoff = 20.0;

/// Modified Bessel function of the first kind, order 0 or 1, for x >= 0.
/// With `scaled` the result is e^{-x} I_n(x), finite for any x.
/// Throws std::domain_error for x < 0 or order outside {0, 1}.
double bessel_i(int order, double x, bool scaled = false);

inline double bessel_i0(double x) { return bessel_i(0, x); }
inline double bessel_i1(double x) { return bessel_i(1, x); }

// The Green's-function kernels only ever need I_n(2 sqrt(y)) for a signed
// product y = p_diff * dz. These are entire functions of y:
//
//   riemann_h(y)   = sum y^k / (k!)^2        = I0(2 sqrt y)          (y >= 0)
//                                            = J0(2 sqrt |y|)        (y <  0)
//   riemann_phi(y) = sum y^k / (k! (k+1)!)   = I1(2 sqrt y) / sqrt y (y >= 0)
//                                            = J1(2 sqrt|y|)/sqrt|y| (y <  0)
//
// so the removable singularities of G_S and G_e at y -> 0 never appear.
double riemann_h(double y);
double riemann_phi(double y);

/// I0(2 sqrt y)^2 - I1(2 sqrt y)^2 continued to negative y (= J0^2 + J1^2).
/// Equals the integral of riemann_h(y s)^2 over s in [0, 1].
double riemann_energy(double y);

}  // namespace ersim::specfun
