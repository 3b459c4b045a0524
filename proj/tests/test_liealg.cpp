#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sgt/liealg.hpp"
#include "sgt/oracle.hpp"

using namespace sgt;

namespace {

AlgebraElement random_element(std::mt19937_64& rng, double norm) {
  std::normal_distribution<double> normal;
  AlgebraElement a(normal(rng), normal(rng), normal(rng));
  return (norm / a.norm()) * a;
}

double dist(const Mat2& a, const Mat2& b) { return frobenius_norm(a - b); }

}  // namespace

TEST_SUITE("liealg") {
  TEST_CASE("generators satisfy [t1, t2] = -t3 cyclically") {
    for (int a = 1; a <= 3; ++a) {
      const int b = a % 3 + 1;
      const int c = b % 3 + 1;
      const Mat2 ta = AlgebraElement::generator(a).matrix();
      const Mat2 tb = AlgebraElement::generator(b).matrix();
      const Mat2 tc = AlgebraElement::generator(c).matrix();
      CHECK(dist(ta * tb - tb * ta, Complex(-1.0) * tc) < 1e-15);
    }
    CHECK_THROWS_AS(AlgebraElement::generator(0), Error);
  }

  TEST_CASE("ad agrees with the matrix commutator") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 100; ++k) {
      const auto x = random_element(rng, 1.5);
      const auto y = random_element(rng, 0.7);
      const Mat2 xm = x.matrix(), ym = y.matrix();
      CHECK(dist(ad(x, y).matrix(), xm * ym - ym * xm) < 1e-14);
    }
  }

  TEST_CASE("quaternion product and matrix form agree") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n;
    for (int k = 0; k < 50; ++k) {
      const Quat p{n(rng), n(rng), n(rng), n(rng)};
      const Quat q{n(rng), n(rng), n(rng), n(rng)};
      CHECK(dist((p * q).matrix(), p.matrix() * q.matrix()) < 1e-13);
      const Quat back = Quat::from_matrix(p.matrix());
      CHECK(std::abs(back.w - p.w) + std::abs(back.x - p.x) + std::abs(back.y - p.y) + std::abs(back.z - p.z) < 1e-15);
      CHECK(std::abs(inner(p, q) - inner(p.matrix(), q.matrix())) < 1e-13);
    }
  }

  TEST_CASE("inner product of algebra elements is Re tr(X Y^H)") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 50; ++k) {
      const auto x = random_element(rng, 1.0);
      const auto y = random_element(rng, 2.0);
      CHECK(std::abs(inner(x, y) - inner(x.matrix(), y.matrix())) < 1e-14);
    }
    CHECK(inner(AlgebraElement::generator(1), AlgebraElement::generator(1)) == doctest::Approx(0.5));
  }

  TEST_CASE("exp matches the power series and stays unitary") {
    std::mt19937_64 rng(4);
    CHECK(dist(exp(AlgebraElement{}).matrix(), Mat2::identity()) == 0.0);
    for (int k = 0; k < 100; ++k) {
      const auto x = random_element(rng, 0.1 + 3.0 * k / 100.0);
      const GroupElement u = exp(x);
      CHECK(dist(u.matrix(), oracle::exp_series(x.matrix())) < 1e-14);
      CHECK(u.unitarity_defect() < 1e-14);
    }
    // |a| = 2 pi is the full turn to -1.
    const GroupElement minus = exp(AlgebraElement(0, 0, 2.0 * std::numbers::pi));
    CHECK(dist(minus.matrix(), Complex(-1.0) * Mat2::identity()) < 1e-15);
  }

  TEST_CASE("log inverts exp inside the principal branch") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
      const auto x = random_element(rng, 6.0 * (k + 0.5) / 100.0);
      CHECK((log(exp(x)) - x).norm() < 1e-10);
      const GroupElement u = exp(x);
      CHECK(dist(exp(log(u)).matrix(), u.matrix()) < 1e-12);
    }
    CHECK(log(GroupElement{}).is_zero());
  }

  TEST_CASE("log refuses the branch point") {
    const GroupElement near_minus = exp(AlgebraElement(2.0 * std::numbers::pi - 1e-6, 0, 0));
    CHECK_THROWS_AS(log(near_minus), Error);
    try {
      log(near_minus);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BranchAmbiguity);
    }
  }

  TEST_CASE("from_matrix rejects non-SU(2) input") {
    Mat2 m = Mat2::identity();
    m(0, 0) = 2.0;
    CHECK_THROWS_AS(GroupElement::from_matrix(m), Error);
    const GroupElement u = exp(AlgebraElement(0.3, -0.2, 0.9));
    CHECK(dist(GroupElement::from_matrix(u.matrix()).matrix(), u.matrix()) < 1e-15);
  }

  TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(bernoulli(4) == doctest::Approx(-1.0 / 30.0).epsilon(1e-15));
    CHECK(bernoulli(12) == doctest::Approx(-691.0 / 2730.0).epsilon(1e-15));
    CHECK(bernoulli(20) == doctest::Approx(-174611.0 / 330.0).epsilon(1e-15));
    CHECK_THROWS_AS(bernoulli(3), Error);
  }

  TEST_CASE("bch low orders match the classical terms") {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 20; ++k) {
      const auto x = random_element(rng, 0.4);
      const auto y = random_element(rng, 0.3);
      CHECK((bch(x, y, 1) - (x + y)).norm() < 1e-16);
      CHECK((bch(x, y, 2) - (x + y + 0.5 * ad(x, y))).norm() < 1e-16);
      const AlgebraElement c3 = (1.0 / 12.0) * (ad(x, ad(x, y)) + ad(y, ad(y, x)));
      CHECK((bch(x, y, 3) - bch(x, y, 2) - c3).norm() < 1e-15);
      const AlgebraElement c4 = (-1.0 / 24.0) * ad(y, ad(x, ad(x, y)));
      CHECK((bch(x, y, 4) - bch(x, y, 3) - c4).norm() < 1e-15);
    }
  }

  TEST_CASE("bch of commuting elements is the sum") {
    const AlgebraElement x(0, 0, 0.7), y(0, 0, -1.9);
    for (int order = 1; order <= kMaxSeriesOrder; ++order) CHECK((bch(x, y, order) - (x + y)).norm() < 1e-15);
  }

  TEST_CASE("bch converges to the matrix-product logarithm") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
      const AlgebraElement xs[2] = {random_element(rng, 0.5), random_element(rng, 0.5)};
      CHECK((bch(xs[0], xs[1], kMaxSeriesOrder) - oracle::bch_product(xs)).norm() < 1e-12);
    }
  }

  TEST_CASE("bch order validation") {
    const AlgebraElement x(0.1, 0, 0), y(0, 0.1, 0);
    CHECK_THROWS_AS(bch(x, y, 0), Error);
    CHECK_THROWS_AS(bch(x, y, kMaxSeriesOrder + 1), Error);
    CHECK_THROWS_AS(bch_chain(std::span<const AlgebraElement>{}, 4), Error);
    const AlgebraElement one[1] = {x};
    CHECK(bch_chain(one, 4) == x);
  }

  TEST_CASE("bch_chain is a left fold of log(e^X1 ... e^Xn)") {
    std::mt19937_64 rng(8);
    for (int n = 2; n <= 5; ++n) {
      std::vector<AlgebraElement> xs;
      for (int k = 0; k < n; ++k) xs.push_back(random_element(rng, 0.1));
      CHECK((bch_chain(xs, 8) - oracle::bch_product(xs)).norm() < 1e-9);
    }
  }

  TEST_CASE("dexp at zero is the identity map and matches differences elsewhere") {
    std::mt19937_64 rng(9);
    const auto y = random_element(rng, 1.0);
    CHECK((dexp(AlgebraElement{}, y, 5) - y).norm() == 0.0);
    for (int k = 0; k < 50; ++k) {
      const auto x = random_element(rng, 1.2);
      const auto dir = random_element(rng, 1.0);
      const Mat2 analytic = exp(x).matrix() * dexp(x, dir, kMaxSeriesOrder).matrix();
      CHECK(dist(analytic, oracle::exp_derivative_fd(x, dir)) < 1e-8);
    }
  }

  TEST_CASE("tangent propagation differentiates bch_chain exactly") {
    std::mt19937_64 rng(10);
    std::vector<AlgebraTangent> chain;
    std::vector<AlgebraElement> xs, dxs;
    for (int k = 0; k < 4; ++k) {
      xs.push_back(random_element(rng, 0.2));
      dxs.push_back(random_element(rng, 1.0));
      chain.push_back({xs.back(), dxs.back()});
    }
    const AlgebraTangent w = bch_chain(chain, 6);
    CHECK((w.value - bch_chain(xs, 6)).norm() < 1e-16);
    const double eps = 1e-5;
    std::vector<AlgebraElement> plus, minus;
    for (int k = 0; k < 4; ++k) {
      plus.push_back(xs[k] + eps * dxs[k]);
      minus.push_back(xs[k] - eps * dxs[k]);
    }
    const AlgebraElement fd = (1.0 / (2.0 * eps)) * (bch_chain(plus, 6) - bch_chain(minus, 6));
    CHECK((w.tangent - fd).norm() < 1e-9);
  }

  TEST_CASE("empirical BCH truncation order") {
    for (int order = 1; order <= 6; ++order) {
      CHECK(oracle::bch_order_ratio(order, 100 + order) >= std::pow(2.0, order + 0.5));
    }
  }
}
