#pragma once

#include <functional>

namespace ersim::quad {

/// Tolerances used across the engine. `history` drives the memoized
/// time integrals, `density` the flipped-atom profile, `inner`/`outer`
/// the nested (z, t) integrals of the prepared correlation and traces.
struct Tolerances {
  double history = 1e-10;
  double density = 1e-9;
  double inner = 1e-8;
  double outer = 1e-7;

  /// Tolerance set with `outer` = tol and `inner` one decade tighter.
  static Tolerances with_outer(double tol);
};

struct Result {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) integral of f over [a, b]. Subdivision
/// stops once the error estimate is below max(tol, tol * |value|).
/// Throws QuadratureError if the estimate is still above that bound at
/// the maximum subdivision depth.
Result integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 unsigned max_depth = 15);

/// Convenience wrapper returning only the value.
inline double integral(const std::function<double(double)>& f, double a, double b, double tol) {
  return integrate(f, a, b, tol).value;
}

/// Fixed 10-point Gauss-Legendre rule on [a, b]; used for short sub-intervals
/// of memoized tables where the integrand is a low-degree-smooth function.
double gauss_legendre_10(const std::function<double(double)>& f, double a, double b);

}  // namespace ersim::quad
