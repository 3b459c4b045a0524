#pragma once

// Discrete gauge and scalar fields on a SpacetimeMesh.
//
// Gauge fields are stored in the algebra, one dof per canonically oriented
// edge, time-major: spatial[tau * E + e] and temporal[tau * V + i]. The link
// of an edge i -> j is U_ij = exp(A_ij); reversal flips the sign of the dof.

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sgt/liealg.hpp"
#include "sgt/mesh.hpp"
#include "sgt/quadrature.hpp"
#include "sgt/whitney.hpp"

namespace sgt {

class DiscreteGaugeField {
 public:
  DiscreteGaugeField() = default;
  /// Zero field in temporal gauge.
  explicit DiscreteGaugeField(const SpacetimeMesh& mesh);

  int nt() const { return nt_; }
  std::int64_t num_spatial_edges() const { return edges_; }
  std::int64_t num_vertices() const { return vertices_; }

  const AlgebraElement& spatial(std::int64_t edge, int tau) const { return spatial_[tau * edges_ + edge]; }
  const AlgebraElement& temporal(std::int64_t vertex, int tau) const { return temporal_[tau * vertices_ + vertex]; }
  void set_spatial(std::int64_t edge, int tau, const AlgebraElement& a) { spatial_[tau * edges_ + edge] = a; }
  /// Clears the temporal-gauge flag unless a is zero.
  void set_temporal(std::int64_t vertex, int tau, const AlgebraElement& a);

  std::span<const AlgebraElement> spatial_dofs() const { return spatial_; }
  std::span<const AlgebraElement> temporal_dofs() const { return temporal_; }
  std::span<AlgebraElement> spatial_dofs() { return spatial_; }

  /// Dof of any edge reference (spatial or temporal edge), or throws InvalidRef.
  const AlgebraElement& dof(const EntityRef& edge) const;

  bool temporal_gauge() const { return temporal_gauge_; }
  /// Zeros every temporal dof and sets the flag.
  void enforce_temporal_gauge();

  /// this + s * other, elementwise. The flag survives only if both have it.
  DiscreteGaugeField axpy(double s, const DiscreteGaugeField& other) const;

  bool same_shape(const DiscreteGaugeField& other) const {
    return nt_ == other.nt_ && edges_ == other.edges_ && vertices_ == other.vertices_;
  }

 private:
  friend DiscreteGaugeField read_snapshot(std::istream& in, const SpacetimeMesh& mesh);

  int nt_ = 0;
  std::int64_t edges_ = 0;
  std::int64_t vertices_ = 0;
  std::vector<AlgebraElement> spatial_;
  std::vector<AlgebraElement> temporal_;
  bool temporal_gauge_ = true;
};

/// G at every (vertex, time node), time-major.
class GaugeTransform {
 public:
  GaugeTransform() = default;
  /// Identity transform.
  explicit GaugeTransform(const SpacetimeMesh& mesh);

  const GroupElement& at(std::int64_t vertex, int tau) const { return g_[tau * vertices_ + vertex]; }
  void set(std::int64_t vertex, int tau, const GroupElement& g) { g_[tau * vertices_ + vertex] = g; }
  std::int64_t num_vertices() const { return vertices_; }
  int nt() const { return nt_; }

  /// (g' g) acting as g first, then g'.
  friend GaugeTransform compose(const GaugeTransform& outer, const GaugeTransform& inner);
  GaugeTransform inverse() const;

 private:
  int nt_ = 0;
  std::int64_t vertices_ = 0;
  std::vector<GroupElement> g_;
};

using Spinor = std::array<Complex, 2>;

Spinor operator*(const Quat& u, const Spinor& phi);
inline Spinor operator*(const GroupElement& u, const Spinor& phi) { return u.quat() * phi; }
/// Re(a^H b)
double real_dot(const Spinor& a, const Spinor& b);

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const SpacetimeMesh& mesh);

  const Spinor& at(std::int64_t vertex, int tau) const { return phi_[tau * vertices_ + vertex]; }
  void set(std::int64_t vertex, int tau, const Spinor& phi) { phi_[tau * vertices_ + vertex] = phi; }
  std::int64_t num_vertices() const { return vertices_; }
  int nt() const { return nt_; }

 private:
  int nt_ = 0;
  std::int64_t vertices_ = 0;
  std::vector<Spinor> phi_;
};

/// One of the four smooth reference fields, all in temporal gauge.
struct TestField {
  int id = 0;
  std::string description;
  ContinuumField field;
  double exact_action = 0.0;
};

/// Throws UnknownCase outside 1..4.
TestField test_field(int id);

DiscreteGaugeField sample(const ContinuumField& field, const SpacetimeMesh& mesh, const QuadratureRule& rule);
DiscreteGaugeField sample(const TestField& field, const SpacetimeMesh& mesh, const QuadratureRule& rule);

/// Link along an edge taken in its stored orientation (sign = +1) or reversed.
GroupElement link(const DiscreteGaugeField& field, const SignedRef& edge);
inline GroupElement link(const DiscreteGaugeField& field, const EntityRef& edge) { return link(field, {edge, 1}); }

/// A -> log(G_i exp(A) G_j^{-1}). Propagates BranchAmbiguity.
DiscreteGaugeField apply_gauge(const DiscreteGaugeField& field, const GaugeTransform& g, const SpacetimeMesh& mesh);
/// phi -> G phi.
ScalarField apply_gauge(const ScalarField& phi, const GaugeTransform& g);

GaugeTransform random_gauge(const SpacetimeMesh& mesh, std::uint64_t seed, double amplitude);
/// Random spatial and temporal dofs, each amplitude times a uniformly random unit vector.
DiscreteGaugeField random_field(const SpacetimeMesh& mesh, std::uint64_t seed, double amplitude,
                                bool temporal_gauge = false);
/// Independent standard normal real and imaginary parts, scaled by amplitude.
ScalarField random_scalar(const SpacetimeMesh& mesh, std::uint64_t seed, double amplitude);

/// phi_target - U_{target, origin} phi_origin for a spatial or temporal edge.
Spinor covariant_difference(const ScalarField& phi, const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                            const EntityRef& edge);

/// Plain-text snapshot, see README for the layout. Throws IOFailure.
void write_snapshot(std::ostream& out, const DiscreteGaugeField& field, const SpacetimeMesh& mesh);
DiscreteGaugeField read_snapshot(std::istream& in, const SpacetimeMesh& mesh);

}  // namespace sgt
