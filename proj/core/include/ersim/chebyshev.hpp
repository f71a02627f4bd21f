#pragma once

#include <functional>
#include <vector>

namespace ersim {

/// Polynomial interpolant of a smooth function on [0, 1] through the
/// Chebyshev-Lobatto points, evaluated with the barycentric formula.
class ChebyshevTable {
 public:
  ChebyshevTable(const std::function<double(double)>& f, int degree);

  double operator()(double x) const;

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> weights_;
};

}  // namespace ersim
