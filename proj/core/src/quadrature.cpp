#include "ersim/quadrature.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ersim/errors.hpp"

namespace ersim::quad {

Tolerances Tolerances::with_outer(double tol) {
  Tolerances t;
  t.outer = tol;
  t.inner = tol / 10.0;
  return t;
}

Result integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 unsigned max_depth) {
  Result r;
  if (a == b) return r;
  using boost::math::quadrature::gauss_kronrod;
  double l1 = 0.0;
  r.value = gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, tol, &r.error, &l1);
  if (!std::isfinite(r.value)) {
    throw QuadratureError("non-finite integral", r.value, r.error);
  }
  const double bound = std::max(tol, tol * std::abs(r.value));
  // The per-interval budget is split from the first coarse estimate, which can
  // differ from the final value; allow a factor of two on the total.
  if (r.error > 2.0 * bound) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "]: estimate " << r.value
        << ", error " << r.error << ", requested " << tol;
    throw QuadratureError(msg.str(), r.value, r.error);
  }
  return r;
}

double gauss_legendre_10(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss<double, 10>::integrate(f, a, b);
}

}  // namespace ersim::quad
