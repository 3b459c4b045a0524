#include "sgt/liealg.hpp"

#include <vector>

namespace sgt {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::InvalidSize: return "InvalidSize";
    case ErrorKind::InvalidRef: return "InvalidRef";
    case ErrorKind::NotAdjacent: return "NotAdjacent";
    case ErrorKind::DegenerateTet: return "DegenerateTet";
    case ErrorKind::UnknownCase: return "UnknownCase";
    case ErrorKind::IOFailure: return "IOFailure";
  }
  return "Error";
}

Mat2& Mat2::operator+=(const Mat2& o) {
  for (int k = 0; k < 4; ++k) m[k] += o.m[k];
  return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
  for (int k = 0; k < 4; ++k) m[k] -= o.m[k];
  return *this;
}

Mat2& Mat2::operator*=(Complex s) {
  for (auto& v : m) v *= s;
  return *this;
}

Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
Mat2 operator*(Complex s, Mat2 a) { return a *= s; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
           a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

double frobenius_norm(const Mat2& a) {
  double s = 0.0;
  for (const auto& v : a.m) s += std::norm(v);
  return std::sqrt(s);
}

Mat2 Quat::matrix() const {
  // i(x s1 + y s2 + z s3) = [[iz, y + ix], [-y + ix, -iz]]
  return {{Complex(w, z), Complex(y, x), Complex(-y, x), Complex(w, -z)}};
}

Quat Quat::from_matrix(const Mat2& m) {
  // Least-squares projection onto span{1, i sigma^k}; exact for members.
  return {0.5 * (m.m[0].real() + m.m[3].real()), 0.5 * (m.m[1].imag() + m.m[2].imag()),
          0.5 * (m.m[1].real() - m.m[2].real()), 0.5 * (m.m[0].imag() - m.m[3].imag())};
}

AlgebraElement AlgebraElement::generator(int k) {
  if (k < 1 || k > 3) throw Error(ErrorKind::InvalidRef, "su(2) generator index must be 1, 2 or 3");
  AlgebraElement t;
  t[k - 1] = 1.0;
  return t;
}

AlgebraElement AlgebraElement::from_matrix(const Mat2& m) {
  const Quat q = Quat::from_matrix(m);
  return {2.0 * q.x, 2.0 * q.y, 2.0 * q.z};
}

GroupElement GroupElement::from_matrix(const Mat2& m) {
  GroupElement g(Quat::from_matrix(m));
  const double defect = std::max(frobenius_norm(m - g.matrix()), g.unitarity_defect());
  if (!(defect <= 1e-12)) throw Error(ErrorKind::InvalidRef, "matrix is not an SU(2) element");
  return g;
}

double GroupElement::unitarity_defect() const {
  const Mat2 u = matrix();
  return std::max(frobenius_norm(u.adjoint() * u - Mat2::identity()), std::abs(u.det() - Complex(1.0)));
}

GroupElement exp(const AlgebraElement& x) {
  const double theta = x.norm();
  if (theta == 0.0) return GroupElement();
  const double s = std::sin(0.5 * theta) / theta;
  return GroupElement(Quat{std::cos(0.5 * theta), s * x[0], s * x[1], s * x[2]});
}

AlgebraElement log(const GroupElement& u) {
  const Quat& q = u.quat();
  if (!(std::abs(2.0 * q.w + 2.0) > 1e-9)) {
    throw Error(ErrorKind::BranchAmbiguity, "link is too close to -1 for a principal logarithm");
  }
  const double s = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (s == 0.0) return {};
  const double scale = 2.0 * std::atan2(s, q.w) / s;
  return {scale * q.x, scale * q.y, scale * q.z};
}

double inner(const Mat2& g, const Mat2& gp) { return (g * gp.adjoint()).trace().real(); }

double bernoulli(int n) {
  switch (n) {
    case 2: return 1.0 / 6.0;
    case 4: return -1.0 / 30.0;
    case 6: return 1.0 / 42.0;
    case 8: return -1.0 / 30.0;
    case 10: return 5.0 / 66.0;
    case 12: return -691.0 / 2730.0;
    case 14: return 7.0 / 6.0;
    case 16: return -3617.0 / 510.0;
    case 18: return 43867.0 / 798.0;
    case 20: return -174611.0 / 330.0;
    default: break;
  }
  throw Error(ErrorKind::InvalidOrder, "Bernoulli number B_" + std::to_string(n) + " is not tabulated");
}

AlgebraElement bch(const AlgebraElement& x, const AlgebraElement& y, int order) {
  return detail::bch_series(x, y, order);
}

namespace {

template <class T>
T fold_bch(std::span<const T> xs, int order) {
  detail::check_order(order);
  if (xs.empty()) throw Error(ErrorKind::InvalidRef, "bch_chain needs at least one element");
  T acc = xs[0];
  for (std::size_t k = 1; k < xs.size(); ++k) acc = detail::bch_series(acc, xs[k], order);
  return acc;
}

}  // namespace

AlgebraElement bch_chain(std::span<const AlgebraElement> xs, int order) { return fold_bch(xs, order); }

AlgebraTangent bch_chain(std::span<const AlgebraTangent> xs, int order) { return fold_bch(xs, order); }

AlgebraElement dexp(const AlgebraElement& x, const AlgebraElement& y, int order) {
  detail::check_order(order);
  AlgebraElement term = y;
  AlgebraElement sum = y;
  double coefficient = 1.0;
  for (int k = 1; k <= order; ++k) {
    term = ad(x, term);
    coefficient *= -1.0 / (k + 1);
    sum += coefficient * term;
  }
  return sum;
}

}  // namespace sgt
