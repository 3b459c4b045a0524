#include "sgt/gaugefield.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "sgt/error.hpp"

namespace sgt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr AlgebraElement Z{};

AlgebraElement random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    AlgebraElement a(normal(rng), normal(rng), normal(rng));
    const double n = a.norm();
    if (n > 1e-8) return (1.0 / n) * a;
  }
}

std::size_t spatial_size(const SpacetimeMesh& mesh) {
  return static_cast<std::size_t>(mesh.spatial().num_edges() * mesh.nt());
}
std::size_t vertex_size(const SpacetimeMesh& mesh) {
  return static_cast<std::size_t>(mesh.spatial().num_vertices() * mesh.nt());
}

}  // namespace

DiscreteGaugeField::DiscreteGaugeField(const SpacetimeMesh& mesh)
    : nt_(mesh.nt()),
      edges_(mesh.spatial().num_edges()),
      vertices_(mesh.spatial().num_vertices()),
      spatial_(spatial_size(mesh)),
      temporal_(vertex_size(mesh)) {}

void DiscreteGaugeField::set_temporal(std::int64_t vertex, int tau, const AlgebraElement& a) {
  temporal_[tau * vertices_ + vertex] = a;
  if (!a.is_zero()) temporal_gauge_ = false;
}

const AlgebraElement& DiscreteGaugeField::dof(const EntityRef& edge) const {
  if (edge.kind == EntityKind::spatial_edge) return spatial(edge.index, edge.time);
  if (edge.kind == EntityKind::temporal_edge) return temporal(edge.index, edge.time);
  throw Error(ErrorKind::InvalidRef, std::string("gauge dofs live on edges, got ") + to_string(edge.kind));
}

void DiscreteGaugeField::enforce_temporal_gauge() {
  std::fill(temporal_.begin(), temporal_.end(), AlgebraElement{});
  temporal_gauge_ = true;
}

DiscreteGaugeField DiscreteGaugeField::axpy(double s, const DiscreteGaugeField& other) const {
  if (!same_shape(other)) throw Error(ErrorKind::InvalidSize, "gauge fields live on different meshes");
  DiscreteGaugeField out = *this;
  for (std::size_t k = 0; k < spatial_.size(); ++k) out.spatial_[k] += s * other.spatial_[k];
  for (std::size_t k = 0; k < temporal_.size(); ++k) out.temporal_[k] += s * other.temporal_[k];
  out.temporal_gauge_ = temporal_gauge_ && (other.temporal_gauge_ || s == 0.0);
  return out;
}

GaugeTransform::GaugeTransform(const SpacetimeMesh& mesh)
    : nt_(mesh.nt()), vertices_(mesh.spatial().num_vertices()), g_(vertex_size(mesh)) {}

GaugeTransform compose(const GaugeTransform& outer, const GaugeTransform& inner) {
  if (outer.g_.size() != inner.g_.size()) throw Error(ErrorKind::InvalidSize, "gauge transforms differ in shape");
  GaugeTransform out = inner;
  for (std::size_t k = 0; k < out.g_.size(); ++k) out.g_[k] = outer.g_[k] * inner.g_[k];
  return out;
}

GaugeTransform GaugeTransform::inverse() const {
  GaugeTransform out = *this;
  for (auto& g : out.g_) g = g.inverse();
  return out;
}

Spinor operator*(const Quat& u, const Spinor& phi) {
  const Mat2 m = u.matrix();
  return {m(0, 0) * phi[0] + m(0, 1) * phi[1], m(1, 0) * phi[0] + m(1, 1) * phi[1]};
}

double real_dot(const Spinor& a, const Spinor& b) { return std::real(std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]); }

ScalarField::ScalarField(const SpacetimeMesh& mesh)
    : nt_(mesh.nt()), vertices_(mesh.spatial().num_vertices()), phi_(vertex_size(mesh)) {}

TestField test_field(int id) {
  using V = ContinuumField::Vector;
  TestField out;
  out.id = id;
  ContinuumField& f = out.field;
  switch (id) {
    case 1:
      out.description = "A_x = sin(2 pi t) / pi  i sigma3 / 2, time dependent";
      f.spatial = [](double t, const Vec3&) { return V{AlgebraElement(0, 0, std::sin(kTwoPi * t) / std::numbers::pi), Z, Z}; };
      f.curl = [](double, const Vec3&) { return V{Z, Z, Z}; };
      f.time_derivative = [](double t, const Vec3&) { return V{AlgebraElement(0, 0, 2.0 * std::cos(kTwoPi * t)), Z, Z}; };
      out.exact_action = 1.0;
      break;
    case 2:
      out.description = "A_y = sin(2 pi x) / pi  i sigma3 / 2, static";
      f.spatial = [](double, const Vec3& x) { return V{Z, AlgebraElement(0, 0, std::sin(kTwoPi * x[0]) / std::numbers::pi), Z}; };
      f.curl = [](double, const Vec3& x) { return V{Z, Z, AlgebraElement(0, 0, 2.0 * std::cos(kTwoPi * x[0]))}; };
      out.exact_action = 1.0;
      break;
    case 3:
      out.description = "A_x = sin(2 pi y)/(2 pi) t1, A_y = sin(2 pi x)/(2 pi) t2, non-abelian";
      f.spatial = [](double, const Vec3& x) {
        return V{AlgebraElement(std::sin(kTwoPi * x[1]) / kTwoPi, 0, 0), AlgebraElement(0, std::sin(kTwoPi * x[0]) / kTwoPi, 0), Z};
      };
      f.curl = [](double, const Vec3& x) {
        return V{Z, Z, AlgebraElement(-std::cos(kTwoPi * x[1]), std::cos(kTwoPi * x[0]), 0)};
      };
      out.exact_action = 0.5 + 1.0 / (8.0 * std::pow(kTwoPi, 4));
      break;
    case 4:
      out.description = "A_x = t1, A_y = t2, constant, curvature purely from the commutator";
      f.spatial = [](double, const Vec3&) { return V{AlgebraElement(1, 0, 0), AlgebraElement(0, 1, 0), Z}; };
      f.curl = [](double, const Vec3&) { return V{Z, Z, Z}; };
      out.exact_action = 0.5;
      break;
    default:
      throw Error(ErrorKind::UnknownCase, "test cases are 1..4, got " + std::to_string(id));
  }
  return out;
}

DiscreteGaugeField sample(const ContinuumField& field, const SpacetimeMesh& mesh, const QuadratureRule& rule) {
  const EdgeDofs dofs = interpolate_edge_dofs(field, mesh, rule);
  DiscreteGaugeField out(mesh);
  std::copy(dofs.spatial.begin(), dofs.spatial.end(), out.spatial_dofs().begin());
  if (field.temporal) {
    const std::int64_t nv = mesh.spatial().num_vertices();
    for (int tau = 0; tau < mesh.nt(); ++tau) {
      for (std::int64_t i = 0; i < nv; ++i) out.set_temporal(i, tau, dofs.temporal[tau * nv + i]);
    }
  }
  return out;
}

DiscreteGaugeField sample(const TestField& field, const SpacetimeMesh& mesh, const QuadratureRule& rule) {
  return sample(field.field, mesh, rule);
}

GroupElement link(const DiscreteGaugeField& field, const SignedRef& edge) {
  const AlgebraElement& a = field.dof(edge.ref);
  return exp(edge.sign >= 0 ? a : -a);
}

DiscreteGaugeField apply_gauge(const DiscreteGaugeField& field, const GaugeTransform& g, const SpacetimeMesh& mesh) {
  const auto& s = mesh.spatial();
  if (g.num_vertices() != s.num_vertices() || g.nt() != mesh.nt() || field.num_spatial_edges() != s.num_edges() ||
      field.nt() != mesh.nt()) {
    throw Error(ErrorKind::InvalidSize, "gauge transform, field and mesh disagree in shape");
  }
  DiscreteGaugeField out(mesh);
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    for (std::int64_t e = 0; e < s.num_edges(); ++e) {
      const auto& edge = s.edge(e);
      const GroupElement u = g.at(edge.origin, tau) * exp(field.spatial(e, tau)) * g.at(edge.target, tau).inverse();
      out.set_spatial(e, tau, log(u));
    }
  }
  bool all_zero = true;
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    const int up = mesh.next(tau);
    for (std::int64_t i = 0; i < s.num_vertices(); ++i) {
      const GroupElement u = g.at(i, tau) * exp(field.temporal(i, tau)) * g.at(i, up).inverse();
      const AlgebraElement a = log(u);
      all_zero = all_zero && a.is_zero();
      out.set_temporal(i, tau, a);
    }
  }
  if (field.temporal_gauge() && all_zero) out.enforce_temporal_gauge();
  return out;
}

ScalarField apply_gauge(const ScalarField& phi, const GaugeTransform& g) {
  if (g.num_vertices() != phi.num_vertices() || g.nt() != phi.nt()) {
    throw Error(ErrorKind::InvalidSize, "gauge transform and scalar field disagree in shape");
  }
  ScalarField out = phi;
  for (int tau = 0; tau < phi.nt(); ++tau) {
    for (std::int64_t i = 0; i < phi.num_vertices(); ++i) out.set(i, tau, g.at(i, tau) * phi.at(i, tau));
  }
  return out;
}

GaugeTransform random_gauge(const SpacetimeMesh& mesh, std::uint64_t seed, double amplitude) {
  GaugeTransform out(mesh);
  if (amplitude == 0.0) return out;
  std::mt19937_64 rng(seed);
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    for (std::int64_t i = 0; i < mesh.spatial().num_vertices(); ++i) out.set(i, tau, exp(amplitude * random_unit(rng)));
  }
  return out;
}

DiscreteGaugeField random_field(const SpacetimeMesh& mesh, std::uint64_t seed, double amplitude, bool temporal_gauge) {
  DiscreteGaugeField out(mesh);
  if (amplitude == 0.0) return out;
  std::mt19937_64 rng(seed);
  for (auto& a : out.spatial_dofs()) a = amplitude * random_unit(rng);
  if (!temporal_gauge) {
    for (int tau = 0; tau < mesh.nt(); ++tau) {
      for (std::int64_t i = 0; i < mesh.spatial().num_vertices(); ++i) out.set_temporal(i, tau, amplitude * random_unit(rng));
    }
  }
  return out;
}

ScalarField random_scalar(const SpacetimeMesh& mesh, std::uint64_t seed, double amplitude) {
  ScalarField out(mesh);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    for (std::int64_t i = 0; i < mesh.spatial().num_vertices(); ++i) {
      Spinor phi;
      for (auto& c : phi) c = amplitude * Complex(normal(rng), normal(rng));
      out.set(i, tau, phi);
    }
  }
  return out;
}

Spinor covariant_difference(const ScalarField& phi, const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                            const EntityRef& edge) {
  if (!mesh.valid(edge)) throw Error(ErrorKind::InvalidRef, "edge reference outside the mesh");
  std::int64_t origin = 0, target = 0;
  int t_origin = edge.time, t_target = edge.time;
  if (edge.kind == EntityKind::spatial_edge) {
    origin = mesh.spatial().edge(edge.index).origin;
    target = mesh.spatial().edge(edge.index).target;
  } else if (edge.kind == EntityKind::temporal_edge) {
    origin = target = edge.index;
    t_target = mesh.next(edge.time);
  } else {
    throw Error(ErrorKind::InvalidRef, "covariant differences live on edges");
  }
  // U_{target, origin} = exp(-A_{origin -> target})
  const GroupElement u = exp(-field.dof(edge));
  const Spinor moved = u * phi.at(origin, t_origin);
  const Spinor& end = phi.at(target, t_target);
  return {end[0] - moved[0], end[1] - moved[1]};
}

void write_snapshot(std::ostream& out, const DiscreteGaugeField& field, const SpacetimeMesh& mesh) {
  if (field.num_spatial_edges() != mesh.spatial().num_edges() || field.nt() != mesh.nt()) {
    throw Error(ErrorKind::InvalidSize, "field does not belong to this mesh");
  }
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "sgt-field " << mesh.n() << ' ' << mesh.nt() << ' ' << (field.temporal_gauge() ? 1 : 0) << '\n';
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    for (std::int64_t e = 0; e < field.num_spatial_edges(); ++e) {
      const auto& a = field.spatial(e, tau);
      buf << "s " << tau << ' ' << e << ' ' << a[0] << ' ' << a[1] << ' ' << a[2] << '\n';
    }
  }
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    for (std::int64_t i = 0; i < field.num_vertices(); ++i) {
      const auto& a = field.temporal(i, tau);
      buf << "t " << tau << ' ' << i << ' ' << a[0] << ' ' << a[1] << ' ' << a[2] << '\n';
    }
  }
  out << buf.str();
  if (!out) throw Error(ErrorKind::IOFailure, "failed to write field snapshot");
}

DiscreteGaugeField read_snapshot(std::istream& in, const SpacetimeMesh& mesh) {
  std::string magic;
  int n = 0, nt = 0, gauge = 0;
  if (!(in >> magic >> n >> nt >> gauge) || magic != "sgt-field") {
    throw Error(ErrorKind::IOFailure, "not a field snapshot");
  }
  if (n != mesh.n() || nt != mesh.nt()) throw Error(ErrorKind::InvalidSize, "snapshot was written for another mesh");
  DiscreteGaugeField out(mesh);
  const std::size_t expected = out.spatial_.size() + out.temporal_.size();
  std::size_t seen = 0;
  char kind = 0;
  int tau = 0;
  std::int64_t index = 0;
  double a0 = 0, a1 = 0, a2 = 0;
  while (in >> kind >> tau >> index >> a0 >> a1 >> a2) {
    if (tau < 0 || tau >= nt) throw Error(ErrorKind::IOFailure, "time node out of range in snapshot");
    if (kind == 's' && index >= 0 && index < out.edges_) {
      out.spatial_[tau * out.edges_ + index] = {a0, a1, a2};
    } else if (kind == 't' && index >= 0 && index < out.vertices_) {
      out.temporal_[tau * out.vertices_ + index] = {a0, a1, a2};
    } else {
      throw Error(ErrorKind::IOFailure, "malformed snapshot record");
    }
    ++seen;
  }
  if (!in.eof() || seen != expected) throw Error(ErrorKind::IOFailure, "truncated or malformed snapshot");
  out.temporal_gauge_ = gauge != 0;
  if (out.temporal_gauge_) {
    for (const auto& a : out.temporal_) {
      if (!a.is_zero()) throw Error(ErrorKind::IOFailure, "temporal-gauge snapshot has nonzero temporal dofs");
    }
  }
  return out;
}

}  // namespace sgt
