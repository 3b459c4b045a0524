#include "sgt/oracle.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sgt/action.hpp"
#include "sgt/error.hpp"

namespace sgt::oracle {

namespace {

Mat2 scaled(const Mat2& m, double s) { return Complex(s) * m; }

double distance(const Mat2& a, const Mat2& b) { return frobenius_norm(a - b); }

AlgebraElement random_algebra(std::mt19937_64& rng, double norm) {
  std::normal_distribution<double> normal;
  AlgebraElement a(normal(rng), normal(rng), normal(rng));
  return (norm / a.norm()) * a;
}

double legendre(int n, double x, double& derivative) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  derivative = n * (x * p1 - p0) / (x * x - 1.0);
  return p1;
}

}  // namespace

Mat2 inverse(const Mat2& m) {
  const Complex d = m.det();
  return {{m(1, 1) / d, -m(0, 1) / d, -m(1, 0) / d, m(0, 0) / d}};
}

Mat2 exp_series(const Mat2& x, int terms) {
  Mat2 sum = Mat2::identity();
  Mat2 term = Mat2::identity();
  for (int k = 1; k < terms; ++k) {
    term = scaled(term * x, 1.0 / k);
    sum += term;
  }
  return sum;
}

Mat2 log_series(const Mat2& u) {
  Mat2 y = u;
  int halvings = 0;
  while (distance(y, Mat2::identity()) > 0.05) {
    if (++halvings > 60) throw Error(ErrorKind::BranchAmbiguity, "square-root iteration did not approach 1");
    Mat2 z = Mat2::identity();
    for (int it = 0; it < 100; ++it) {
      const Mat2 yn = scaled(y + inverse(z), 0.5);
      const Mat2 zn = scaled(z + inverse(y), 0.5);
      const double change = distance(yn, y);
      y = yn;
      z = zn;
      if (change < 1e-16) break;
    }
  }
  const Mat2 d = y - Mat2::identity();
  Mat2 power = d;
  Mat2 sum;
  for (int k = 1; k <= 40; ++k) {
    sum += scaled(power, (k % 2 == 1 ? 1.0 : -1.0) / k);
    power = power * d;
  }
  return scaled(sum, std::ldexp(1.0, halvings));
}

AlgebraElement bch_product(std::span<const AlgebraElement> xs) {
  Mat2 u = Mat2::identity();
  for (const auto& x : xs) u = u * exp_series(x.matrix(), 30);
  return AlgebraElement::from_matrix(log_series(u));
}

Mat2 exp_derivative_fd(const AlgebraElement& x, const AlgebraElement& y, double step) {
  const Mat2 plus = exp_series((x + step * y).matrix(), 30);
  const Mat2 minus = exp_series((x - step * y).matrix(), 30);
  return scaled(plus - minus, 1.0 / (2.0 * step));
}

Rule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidOrder, "Gauss rule needs at least one point");
  Rule r;
  for (int k = 1; k <= n; ++k) {
    double x = std::cos(std::numbers::pi * (k - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = legendre(n, x, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, dp);
    r.points.push_back(0.5 * (1.0 - x));
    r.weights.push_back(1.0 / ((1.0 - x * x) * dp * dp));
  }
  return r;
}

double tet_integral(const TetGeometry& tet, const std::function<double(const Vec3&)>& f, int points) {
  const Rule g = gauss_legendre(points);
  const Vec3 a = tet[1] - tet[0];
  const Vec3 b = tet[2] - tet[0];
  const Vec3 c = tet[3] - tet[0];
  const double jac = std::abs(a.dot(b.cross(c)));
  // (u, v, w) in the unit cube -> reference simplex, Jacobian (1-u)^2 (1-v).
  double sum = 0.0;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    for (std::size_t j = 0; j < g.points.size(); ++j) {
      for (std::size_t k = 0; k < g.points.size(); ++k) {
        const double u = g.points[i], v = g.points[j], w = g.points[k];
        const double x = u;
        const double y = (1.0 - u) * v;
        const double z = (1.0 - u) * (1.0 - v) * w;
        const double weight = g.weights[i] * g.weights[j] * g.weights[k] * (1.0 - u) * (1.0 - u) * (1.0 - v);
        sum += weight * f(tet[0] + x * a + y * b + z * c);
      }
    }
  }
  return jac * sum;
}

LocalMass local_mass_quadrature(const TetGeometry& tet) {
  LocalMass out;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      out.vertex[a][b] = tet_integral(tet, [&](const Vec3& p) {
        const auto l = barycentric_coordinates(tet, p);
        return l[a] * l[b];
      });
    }
  }
  for (int s = 0; s < 6; ++s) {
    for (int r = 0; r < 6; ++r) {
      out.edge[s][r] = tet_integral(tet, [&](const Vec3& p) {
        return whitney_edge(tet, kTetEdges[s][0], kTetEdges[s][1], p).dot(whitney_edge(tet, kTetEdges[r][0], kTetEdges[r][1], p));
      });
    }
  }
  for (int k = 0; k < 4; ++k) {
    for (int m = 0; m < 4; ++m) {
      const auto& fk = kTetFaces[k];
      const auto& fm = kTetFaces[m];
      out.face[k][m] = tet_integral(tet, [&](const Vec3& p) {
        return whitney_face(tet, fk[0], fk[1], fk[2], p).dot(whitney_face(tet, fm[0], fm[1], fm[2], p));
      });
    }
  }
  return out;
}

double scalar_dirichlet_energy(const ScalarField& phi, const SpacetimeMesh& mesh) {
  const auto& s = mesh.spatial();
  const double dt = mesh.dt();
  const Rule g = gauss_legendre(3);
  double total = 0.0;
  for (std::int64_t t = 0; t < s.num_tets(); ++t) {
    const auto& tet = s.tet(t);
    const TetGeometry geo = s.tet_positions(t);
    const auto grads = barycentric_gradients(geo);
    for (int tau = 0; tau < mesh.nt(); ++tau) {
      const int up = mesh.next(tau);
      for (std::size_t q = 0; q < g.points.size(); ++q) {
        const double u = g.points[q];
        total += dt * g.weights[q] * tet_integral(geo, [&](const Vec3& p) {
          const auto l = barycentric_coordinates(geo, p);
          double energy = 0.0;
          for (int c = 0; c < 2; ++c) {
            Complex dt_phi = 0.0;
            Eigen::Vector3cd grad = Eigen::Vector3cd::Zero();
            for (int a = 0; a < 4; ++a) {
              const Complex lo = phi.at(tet.vertices[a], tau)[c];
              const Complex hi = phi.at(tet.vertices[a], up)[c];
              dt_phi += l[a] * (hi - lo) / dt;
              grad += ((1.0 - u) * lo + u * hi) * grads[a].cast<Complex>();
            }
            energy += std::norm(dt_phi) + grad.squaredNorm();
          }
          return energy;
        }, 3);
      }
    }
  }
  return total;
}

double bch_order_ratio(int order, std::uint64_t seed, double eps) {
  std::mt19937_64 rng(seed);
  const AlgebraElement x = random_algebra(rng, 1.0);
  const AlgebraElement y = random_algebra(rng, 1.0);
  auto err = [&](double e) {
    const AlgebraElement xs[2] = {e * x, e * y};
    return (bch(xs[0], xs[1], order) - bch_product(xs)).norm();
  };
  return err(eps) / err(0.5 * eps);
}

std::vector<Check> lie_kernel_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Check> out;

  double exp_err = 0.0;
  for (int k = 0; k < 200; ++k) {
    const AlgebraElement x = random_algebra(rng, 3.0 * unit(rng));
    exp_err = std::max(exp_err, distance(exp(x).matrix(), exp_series(x.matrix())));
  }
  out.push_back({"exp closed form vs 20-term series", exp_err, 1e-14});

  double round_trip = 0.0;
  for (int k = 0; k < 200; ++k) {
    const AlgebraElement x = random_algebra(rng, 2.0 * std::numbers::pi * 0.98 * unit(rng));
    const GroupElement u = exp(x);
    round_trip = std::max(round_trip, distance(exp(log(u)).matrix(), u.matrix()));
    round_trip = std::max(round_trip, (log(u) - x).norm());
  }
  out.push_back({"exp/log round trip", round_trip, 1e-10});

  double chain_err = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + static_cast<int>(rng() % 3);
    std::vector<AlgebraElement> xs;
    for (int m = 0; m < n; ++m) xs.push_back(random_algebra(rng, 0.1 * unit(rng)));
    chain_err = std::max(chain_err, (bch_chain(xs, kLoopBchOrder) - bch_product(xs)).norm());
  }
  out.push_back({"bch_chain (order " + std::to_string(kLoopBchOrder) + ") vs matrix products, norms <= 0.1",
                 chain_err, 1e-7});

  double dexp_err = 0.0;
  for (int k = 0; k < 200; ++k) {
    const AlgebraElement x = random_algebra(rng, unit(rng));
    const AlgebraElement y = random_algebra(rng, 1.0);
    const Mat2 analytic = exp(x).matrix() * dexp(x, y, kMaxSeriesOrder).matrix();
    dexp_err = std::max(dexp_err, distance(analytic, exp_derivative_fd(x, y)));
  }
  out.push_back({"dexp vs central differences", dexp_err, 1e-8});

  for (int order = 1; order <= 6; ++order) {
    double worst = 1e300;
    for (int k = 0; k < 5; ++k) worst = std::min(worst, bch_order_ratio(order, rng()));
    out.push_back({"bch order " + std::to_string(order) + " halving ratio", worst, std::pow(2.0, order + 0.5), true});
  }
  return out;
}

std::vector<Check> feec_suite(std::uint64_t seed) {
  std::vector<Check> out;

  const SpacetimeMesh mesh(4, 4);
  const auto& s = mesh.spatial();
  const MassData mass = assemble_mass(mesh);

  double gram = 0.0;
  for (std::int64_t t = 0; t < 6; ++t) {
    const LocalMass exact = mass.local(s.tet(t));
    const LocalMass quad = local_mass_quadrature(s.tet_positions(t));
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        gram = std::max({gram, std::abs(exact.face[a][b] - quad.face[a][b]) / s.h(),
                         std::abs(exact.vertex[a][b] - quad.vertex[a][b]) / std::pow(s.h(), 3)});
      }
    }
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) gram = std::max(gram, std::abs(exact.edge[a][b] - quad.edge[a][b]) / s.h());
    }
  }
  out.push_back({"local Gram matrices vs quadrature (scaled)", gram, 1e-12});

  double constants = 0.0;
  for (const auto& c : mass.constants.spatial) {
    for (double v : c) constants = std::max(constants, std::abs(v - 1.0 / 6.0));
  }
  for (const auto& c : mass.constants.temporal) {
    for (double v : c) constants = std::max(constants, std::abs(v - 0.25));
  }
  out.push_back({"structure constants 1/6 and 1/4", constants, 1e-15});

  double volume = 0.0;
  const auto& mv = mass.edges_temporal.spatial();
  for (int k = 0; k < mv.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(mv, k); it; ++it) volume += it.value();
  }
  out.push_back({"total vertex mass - 1", std::abs(volume - 1.0), 1e-12});

  ContinuumField xdy;
  xdy.spatial = [](double, const Vec3& x) {
    return ContinuumField::Vector{AlgebraElement{}, AlgebraElement(x[0], 0.0, 0.0), AlgebraElement{}};
  };
  xdy.curl = [](double, const Vec3&) {
    return ContinuumField::Vector{AlgebraElement{}, AlgebraElement{}, AlgebraElement(1.0, 0.0, 0.0)};
  };
  const auto rule = QuadratureRule::gauss_legendre(kDefaultQuadraturePoints);
  out.push_back({"Stokes residual, A = x dy, N = 4 (away from the seam)", check_stokes(mesh, xdy, rule, true).max(), 1e-10});
  out.push_back({"Stokes residual, case 3 field, N = 4", check_stokes(mesh, test_field(3).field, rule).max(), 1e-10});
  out.push_back({"Stokes residual, case 1 field, N = 4", check_stokes(mesh, test_field(1).field, rule).max(), 1e-10});

  const SpacetimeMesh small(2, 2);
  const MassData small_mass = assemble_mass(small);
  const ScalarField phi = random_scalar(small, seed, 1.0);
  const double energy = scalar_dirichlet_energy(phi, small);
  const double fem = scalar_action_F(phi, DiscreteGaugeField(small), small, small_mass).scalar();
  out.push_back({"scalar action at zero field vs P1 x P1 Dirichlet energy, N = 2", std::abs(fem - energy) / energy, 1e-12});
  return out;
}

}  // namespace sgt::oracle
