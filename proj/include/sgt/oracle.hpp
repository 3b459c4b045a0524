#pragma once

// Reference computations that avoid the closed forms and assembly shortcuts of
// the core: truncated power series, inverse scaling-and-squaring logarithms,
// central differences and brute-force quadrature with a separately generated
// Gauss rule.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sgt/gaugefield.hpp"
#include "sgt/liealg.hpp"
#include "sgt/mesh.hpp"
#include "sgt/whitney.hpp"

namespace sgt::oracle {

Mat2 inverse(const Mat2& m);

/// sum_{k < terms} X^k / k!
Mat2 exp_series(const Mat2& x, int terms = 20);
/// Principal logarithm by repeated Denman-Beavers square roots and the Mercator series.
Mat2 log_series(const Mat2& u);

/// log(e^{X_1} ... e^{X_n}) through explicit matrix products.
AlgebraElement bch_product(std::span<const AlgebraElement> xs);

/// Central difference of s -> exp_series(X + s Y) at s = 0.
Mat2 exp_derivative_fd(const AlgebraElement& x, const AlgebraElement& y, double step = 1e-5);

/// Gauss-Legendre nodes and weights on [0, 1] by Newton iteration on P_n.
struct Rule {
  std::vector<double> points;
  std::vector<double> weights;
};
Rule gauss_legendre(int n);

/// Collapsed-coordinate tensor quadrature over a tetrahedron.
double tet_integral(const TetGeometry& tet, const std::function<double(const Vec3&)>& f, int points = 6);

/// Gram matrices of the Whitney bases by quadrature of the basis functions.
LocalMass local_mass_quadrature(const TetGeometry& tet);

/// int |grad_4 phi_h|^2 over [0,1]^4 for the P1 (x) P1 interpolant of phi.
double scalar_dirichlet_energy(const ScalarField& phi, const SpacetimeMesh& mesh);

/// Truncation error ratio err(eps) / err(eps / 2) of bch(X, Y, order).
double bch_order_ratio(int order, std::uint64_t seed, double eps = 0.2);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool at_least = false;  // pass when value >= tolerance instead of <=
  bool pass() const { return at_least ? value >= tolerance : value <= tolerance; }
};

/// Lie-kernel checks with their acceptance tolerances.
std::vector<Check> lie_kernel_suite(std::uint64_t seed = 20240601);
/// Mass, structure-constant, Stokes and scalar-energy checks.
std::vector<Check> feec_suite(std::uint64_t seed = 20240602);

}  // namespace sgt::oracle
