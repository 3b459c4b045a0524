#include "sgt/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "sgt/error.hpp"

namespace sgt {

namespace {

template <unsigned N>
void fill_rule(std::vector<double>& points, std::vector<double>& weights) {
  using Rule = boost::math::quadrature::gauss<double, N>;
  // Boost tabulates the non-negative abscissae of the [-1, 1] rule.
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0.0) {
      points.push_back(0.5);
      weights.push_back(0.5 * w[k]);
      continue;
    }
    points.push_back(0.5 * (1.0 - x[k]));
    weights.push_back(0.5 * w[k]);
    points.push_back(0.5 * (1.0 + x[k]));
    weights.push_back(0.5 * w[k]);
  }
}

template <unsigned... Ns>
bool dispatch(int n, std::vector<double>& points, std::vector<double>& weights,
              std::integer_sequence<unsigned, Ns...>) {
  return ((n == static_cast<int>(Ns + 1) ? (fill_rule<Ns + 1>(points, weights), true) : false) || ...);
}

}  // namespace

QuadratureRule QuadratureRule::gauss_legendre(int n) {
  QuadratureRule rule;
  if (!dispatch(n, rule.points_, rule.weights_, std::make_integer_sequence<unsigned, 20>{})) {
    throw Error(ErrorKind::InvalidOrder, "Gauss-Legendre rule supports 1..20 points, got " + std::to_string(n));
  }
  // Sort ascending so integration order (and hence rounding) is fixed.
  std::vector<std::pair<double, double>> pw;
  for (std::size_t k = 0; k < rule.points_.size(); ++k) pw.emplace_back(rule.points_[k], rule.weights_[k]);
  std::sort(pw.begin(), pw.end());
  for (std::size_t k = 0; k < pw.size(); ++k) {
    rule.points_[k] = pw[k].first;
    rule.weights_[k] = pw[k].second;
  }

  // Exactness self-check on monomials t^p, p <= 2n - 1.
  for (int p = 0; p <= rule.degree(); ++p) {
    const double approx = rule.integrate([p](double t) { return std::pow(t, p); });
    if (std::abs(approx - 1.0 / (p + 1)) > 1e-13) {
      throw Error(ErrorKind::InvalidOrder, "Gauss-Legendre rule failed its exactness check");
    }
  }
  return rule;
}

}  // namespace sgt
