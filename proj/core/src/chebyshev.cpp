#include "ersim/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ersim {

ChebyshevTable::ChebyshevTable(const std::function<double(double)>& f, int degree) {
  if (degree < 2) throw std::invalid_argument("ChebyshevTable: degree must be >= 2");
  const int n = degree;
  nodes_.resize(n + 1);
  values_.resize(n + 1);
  weights_.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    // Ascending order on [0, 1].
    nodes_[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * j / n));
    values_[j] = f(nodes_[j]);
    weights_[j] = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == n) ? 0.5 : 1.0);
  }
}

double ChebyshevTable::operator()(double x) const {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double d = x - nodes_[j];
    if (d == 0.0) return values_[j];
    const double w = weights_[j] / d;
    num += w * values_[j];
    den += w;
  }
  return num / den;
}

}  // namespace ersim
