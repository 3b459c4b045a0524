#pragma once

#include <span>
#include <vector>

namespace sgt {

/// Gauss-Legendre rule on [0, 1].
class QuadratureRule {
 public:
  /// n points, exact through polynomial degree 2n - 1. Supported n: 1..20.
  static QuadratureRule gauss_legendre(int n);

  std::span<const double> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  int size() const { return static_cast<int>(points_.size()); }
  int degree() const { return 2 * size() - 1; }

  template <class F>
  auto integrate(F&& f) const {
    auto acc = weights_[0] * f(points_[0]);
    for (std::size_t q = 1; q < points_.size(); ++q) acc = acc + weights_[q] * f(points_[q]);
    return acc;
  }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

inline constexpr int kDefaultQuadraturePoints = 8;

}  // namespace sgt
