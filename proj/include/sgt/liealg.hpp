#pragma once

// SU(2) and su(2) kernels.
//
// Algebra elements are stored by their coefficients in the basis
// t^k = i sigma^k / 2, so [t^a, t^b] = -eps_abc t^c. Group elements and every
// intermediate that appears in the gauge actions (F - 1, conjugates of it,
// transported products) live in the real span of {1, i sigma^k}, which is
// closed under products and adjoints. Those are carried as Quat and only
// converted to explicit 2x2 matrices at the API boundary.

#include <array>
#include <cmath>
#include <complex>
#include <span>

#include "sgt/error.hpp"

namespace sgt {

using Complex = std::complex<double>;

/// General complex 2x2 matrix, row-major.
struct Mat2 {
  std::array<Complex, 4> m{};

  static Mat2 identity() { return {{Complex(1), Complex(0), Complex(0), Complex(1)}}; }

  Complex& operator()(int r, int c) { return m[2 * r + c]; }
  const Complex& operator()(int r, int c) const { return m[2 * r + c]; }

  Mat2 adjoint() const { return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}}; }
  Complex trace() const { return m[0] + m[3]; }
  Complex det() const { return m[0] * m[3] - m[1] * m[2]; }

  Mat2& operator+=(const Mat2& o);
  Mat2& operator-=(const Mat2& o);
  Mat2& operator*=(Complex s);
};

Mat2 operator+(Mat2 a, const Mat2& b);
Mat2 operator-(Mat2 a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(Complex s, Mat2 a);
double frobenius_norm(const Mat2& a);

/// w*1 + i(x sigma^1 + y sigma^2 + z sigma^3).
struct Quat {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr Quat identity() { return {1.0, 0.0, 0.0, 0.0}; }

  constexpr Quat adjoint() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  Mat2 matrix() const;
  static Quat from_matrix(const Mat2& m);

  constexpr Quat& operator+=(const Quat& o) {
    w += o.w, x += o.x, y += o.y, z += o.z;
    return *this;
  }
  constexpr Quat& operator-=(const Quat& o) {
    w -= o.w, x -= o.x, y -= o.y, z -= o.z;
    return *this;
  }
};

constexpr Quat operator+(Quat a, const Quat& b) { return a += b; }
constexpr Quat operator-(Quat a, const Quat& b) { return a -= b; }
constexpr Quat operator*(double s, const Quat& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }

constexpr Quat operator*(const Quat& a, const Quat& b) {
  // (w1 + i v1.s)(w2 + i v2.s) = w1 w2 - v1.v2 + i(w1 v2 + w2 v1 - v1 x v2).s
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + b.w * a.x - (a.y * b.z - a.z * b.y),
          a.w * b.y + b.w * a.y - (a.z * b.x - a.x * b.z),
          a.w * b.z + b.w * a.z - (a.x * b.y - a.y * b.x)};
}

/// Euclidean dot product of the four real coordinates. Re tr(p q^H) = 2 dot(p, q).
constexpr double dot(const Quat& p, const Quat& q) { return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z; }

/// Element of su(2): X = a^k t^k with t^k = i sigma^k / 2.
class AlgebraElement {
 public:
  constexpr AlgebraElement() = default;
  constexpr AlgebraElement(double a1, double a2, double a3) : a_{a1, a2, a3} {}
  explicit constexpr AlgebraElement(const std::array<double, 3>& a) : a_(a) {}

  /// t^k for k in {1, 2, 3}.
  static AlgebraElement generator(int k);
  /// Projects an arbitrary 2x2 matrix onto su(2) (anti-hermitian traceless part).
  static AlgebraElement from_matrix(const Mat2& m);

  constexpr double operator[](int k) const { return a_[k]; }
  constexpr double& operator[](int k) { return a_[k]; }
  constexpr const std::array<double, 3>& coefficients() const { return a_; }

  /// Euclidean norm of the coefficient vector.
  double norm() const { return std::sqrt(a_[0] * a_[0] + a_[1] * a_[1] + a_[2] * a_[2]); }
  constexpr bool is_zero() const { return a_[0] == 0.0 && a_[1] == 0.0 && a_[2] == 0.0; }

  constexpr Quat quat() const { return {0.0, 0.5 * a_[0], 0.5 * a_[1], 0.5 * a_[2]}; }
  Mat2 matrix() const { return quat().matrix(); }

  constexpr AlgebraElement& operator+=(const AlgebraElement& o) {
    a_[0] += o.a_[0], a_[1] += o.a_[1], a_[2] += o.a_[2];
    return *this;
  }
  constexpr AlgebraElement& operator-=(const AlgebraElement& o) {
    a_[0] -= o.a_[0], a_[1] -= o.a_[1], a_[2] -= o.a_[2];
    return *this;
  }
  constexpr AlgebraElement& operator*=(double s) {
    a_[0] *= s, a_[1] *= s, a_[2] *= s;
    return *this;
  }
  constexpr AlgebraElement operator-() const { return {-a_[0], -a_[1], -a_[2]}; }

  friend constexpr bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  std::array<double, 3> a_{};
};

constexpr AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
constexpr AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
constexpr AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }

/// [X, Y] = XY - YX.
constexpr AlgebraElement ad(const AlgebraElement& x, const AlgebraElement& y) {
  return {-(x[1] * y[2] - x[2] * y[1]), -(x[2] * y[0] - x[0] * y[2]), -(x[0] * y[1] - x[1] * y[0])};
}
constexpr AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) { return ad(x, y); }

/// Unit quaternion, i.e. an SU(2) matrix.
class GroupElement {
 public:
  constexpr GroupElement() = default;
  /// The caller guarantees |q| = 1.
  explicit constexpr GroupElement(const Quat& q) : q_(q) {}

  /// Throws InvalidRef if m is not in SU(2) to 1e-12.
  static GroupElement from_matrix(const Mat2& m);

  constexpr const Quat& quat() const { return q_; }
  Mat2 matrix() const { return q_.matrix(); }
  constexpr GroupElement inverse() const { return GroupElement(q_.adjoint()); }

  /// max(|U^H U - 1|_F, |det U - 1|).
  double unitarity_defect() const;

  friend constexpr GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return GroupElement(a.q_ * b.q_);
  }

 private:
  Quat q_ = Quat::identity();
};

/// Closed form: exp(theta/2 i n.sigma) = cos(theta/2) + i sin(theta/2) n.sigma.
GroupElement exp(const AlgebraElement& x);

/// Principal logarithm, |a| < 2 pi. Throws BranchAmbiguity when |tr U + 2| <= 1e-9.
AlgebraElement log(const GroupElement& u);

/// g . g' := Re tr(g g'^H).
double inner(const Mat2& g, const Mat2& gp);
constexpr double inner(const Quat& g, const Quat& gp) { return 2.0 * dot(g, gp); }
constexpr double inner(const AlgebraElement& x, const AlgebraElement& y) {
  return 0.5 * (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]);
}

inline constexpr int kMaxSeriesOrder = 21;

/// Bernoulli number B_n for even 2 <= n <= 20 (B_1 = -1/2 is never needed).
double bernoulli(int n);

namespace detail {

inline void check_order(int order) {
  if (order < 1 || order > kMaxSeriesOrder) {
    throw Error(ErrorKind::InvalidOrder, "series order must lie in [1, " + std::to_string(kMaxSeriesOrder) +
                                             "], got " + std::to_string(order));
  }
}

// Z = sum_{n=1}^{order} c_n of log(e^X e^Y) via the recursion
//   (n+1) c_{n+1} = 1/2 [X - Y, c_n]
//                 + sum_{p=1}^{floor(n/2)} B_{2p}/(2p)!
//                   sum_{k_1+..+k_{2p}=n, k_i>0} [c_{k_1}, [..., [c_{k_{2p}}, X + Y]...]].
// The inner composition sum is linear in its innermost argument, so it is
// built as nested[m][r]: all m-fold nestings whose indices sum to r.
// T only needs +, -, scalar *, and commutator(T, T).
template <class T>
T bch_series(const T& x, const T& y, int order) {
  check_order(order);
  std::array<T, kMaxSeriesOrder + 1> c{};
  const T sum = x + y;
  const T diff = x - y;
  c[1] = sum;
  T z = sum;
  for (int n = 1; n < order; ++n) {
    T next = 0.5 * commutator(diff, c[n]);
    std::array<std::array<T, kMaxSeriesOrder + 1>, kMaxSeriesOrder + 1> nested{};
    nested[0][0] = sum;
    double factorial = 1.0;
    for (int m = 1; m <= n; ++m) {
      for (int r = m; r <= n; ++r) {
        T acc{};
        for (int k = 1; k <= r - (m - 1); ++k) {
          if (m - 1 == 0 && r - k != 0) continue;
          acc = acc + commutator(c[k], nested[m - 1][r - k]);
        }
        nested[m][r] = acc;
      }
      factorial *= m;
      if (m % 2 == 0) next = next + (bernoulli(m) / factorial) * nested[m][n];
    }
    c[n + 1] = (1.0 / (n + 1)) * next;
    z = z + c[n + 1];
  }
  return z;
}

}  // namespace detail

/// Truncated BCH series with `order` terms; order >= 2 contains exactly c1 = X+Y and c2 = [X,Y]/2.
AlgebraElement bch(const AlgebraElement& x, const AlgebraElement& y, int order);

/// Left fold of bch over xs. A single element is returned unchanged.
AlgebraElement bch_chain(std::span<const AlgebraElement> xs, int order);

/// sum_{k=0}^{order} (-1)^k/(k+1)! ad_X^k Y, the truncation of (1 - e^{-ad_X})/ad_X applied to Y.
AlgebraElement dexp(const AlgebraElement& x, const AlgebraElement& y, int order);

/// Pair (value, directional derivative) propagated through polynomial
/// expressions in the algebra. Lets the truncated BCH series be
/// differentiated exactly instead of by differencing.
struct AlgebraTangent {
  AlgebraElement value;
  AlgebraElement tangent;

  friend AlgebraTangent operator+(const AlgebraTangent& a, const AlgebraTangent& b) {
    return {a.value + b.value, a.tangent + b.tangent};
  }
  friend AlgebraTangent operator-(const AlgebraTangent& a, const AlgebraTangent& b) {
    return {a.value - b.value, a.tangent - b.tangent};
  }
  friend AlgebraTangent operator*(double s, const AlgebraTangent& a) { return {s * a.value, s * a.tangent}; }
  friend AlgebraTangent commutator(const AlgebraTangent& a, const AlgebraTangent& b) {
    return {ad(a.value, b.value), ad(a.tangent, b.value) + ad(a.value, b.tangent)};
  }
};

/// bch_chain together with its derivative along the tangents of xs.
AlgebraTangent bch_chain(std::span<const AlgebraTangent> xs, int order);

}  // namespace sgt
