#pragma once

// Lowest-order Whitney forms on tetrahedra, their extension to the prisms
// T x [tau, tau + dt], mass matrices and structure constants.
//
// 2-forms on a tetrahedron are represented by their Hodge dual vector
// (w_yz, w_zx, w_xy), so dl_j ^ dl_k corresponds to grad l_j x grad l_k and the
// Euclidean inner product of 2-forms is the vector dot product.
//
// Spacetime bases:
//   spatial k-form at node tau   lambda_T (x) P_tau(t)     (P_tau the time hat)
//   temporal edge e_t(tau)       lambda_i dt / dt  on [tau, tau + dt]
//   temporal face f_t(tau)       lambda_e ^ dt / dt  on [tau, tau + dt]
// which makes the mass matrices Kronecker products of a spatial factor and a
// time factor: hat x hat overlaps for spatial bases, 1/dt on a single slab for
// temporal ones.

#include <Eigen/SparseCore>

#include <algorithm>
#include <array>
#include <functional>
#include <span>
#include <vector>

#include "sgt/liealg.hpp"
#include "sgt/mesh.hpp"
#include "sgt/quadrature.hpp"

namespace sgt {

using TetGeometry = std::array<Vec3, 4>;

double signed_volume(const TetGeometry& tet);

/// Constant gradients of the barycentric coordinates. Throws DegenerateTet.
std::array<Vec3, 4> barycentric_gradients(const TetGeometry& tet);
std::array<double, 4> barycentric_coordinates(const TetGeometry& tet, const Vec3& point);

/// lambda_i dlambda_j - lambda_j dlambda_i, as a covector.
Vec3 whitney_edge(const TetGeometry& tet, int i, int j, const Vec3& point);
/// 2 (lambda_i dl_j^dl_k + lambda_j dl_k^dl_i + lambda_k dl_i^dl_j), Hodge dual vector.
Vec3 whitney_face(const TetGeometry& tet, int i, int j, int k, const Vec3& point);

/// Integral over the tetrahedron of prod lambda_k^{a_k}: 3! |T| prod a_k! / (sum a_k + 3)!.
double monomial_integral(double volume, const std::array<int, 4>& exponents);

/// Per-tetrahedron Gram matrices in local numbering: faces kTetFaces
/// (oriented by ascending local index), edges kTetEdges (a -> b), vertices.
struct LocalMass {
  std::array<std::array<double, 4>, 4> face{};
  std::array<std::array<double, 6>, 6> edge{};
  std::array<std::array<double, 4>, 4> vertex{};
};

LocalMass local_mass(const TetGeometry& tet);

enum class TimeCoupling {
  hat,   // overlaps of piecewise-linear time hats: 2dt/3 diagonal, dt/6 neighbours
  slab,  // piecewise-constant 1/dt basis on a single slab: 1/dt diagonal
};

/// Symmetric matrix over (spatial entity, time node) pairs stored as
/// spatial (x) time. Vectors are laid out time-major: x[tau * rows + row].
class KroneckerMass {
 public:
  KroneckerMass() = default;
  KroneckerMass(Eigen::SparseMatrix<double> spatial, TimeCoupling coupling, int nt, double dt);

  const Eigen::SparseMatrix<double>& spatial() const { return spatial_; }
  TimeCoupling coupling() const { return coupling_; }
  int nt() const { return nt_; }
  std::int64_t spatial_rows() const { return spatial_.rows(); }
  std::int64_t rows() const { return spatial_.rows() * nt_; }

  double time_weight(int tau, int taup) const;
  double operator()(std::int64_t row, int tau, std::int64_t col, int taup) const;

  /// x^T M y.
  double bilinear(std::span<const double> x, std::span<const double> y) const;

 private:
  Eigen::SparseMatrix<double> spatial_;
  TimeCoupling coupling_ = TimeCoupling::hat;
  int nt_ = 0;
  double dt_ = 0.0;
};

/// C_{e1 e2}, C_{e2 e3}, C_{e3 e1} with e_k the loop edges of an oriented triangle.
std::array<double, 3> face_structure_constants(const std::array<Vec3, 3>& triangle);
/// C_{e1 e2}, ..., C_{e4 e1} for the loop i_tau -> j_tau -> j_tau+dt -> i_tau+dt.
std::array<double, 4> temporal_face_structure_constants();

struct StructureConstants {
  std::vector<std::array<double, 3>> spatial;   // per spatial face
  std::vector<std::array<double, 4>> temporal;  // per spatial edge, identical in every slab
};

StructureConstants structure_constants(const SpacetimeMesh& mesh);

struct MassData {
  int nt = 0;
  double dt = 0.0;
  std::array<LocalMass, kTetPermutations.size()> shapes{};  // indexed by Tet::shape

  KroneckerMass faces_spatial;   // M_ss  over (f, tau)
  KroneckerMass faces_temporal;  // M_tt  over (e, tau) = f_t(tau)
  KroneckerMass edges_spatial;   // M_e_ss over (e, tau)
  KroneckerMass edges_temporal;  // M_e_tt over (i, tau) = e_t(tau)

  StructureConstants constants;

  const LocalMass& local(const SpatialMesh::Tet& t) const { return shapes[t.shape]; }
};

/// Exact assembly by the barycentric monomial formula and exact time factors.
MassData assemble_mass(const SpacetimeMesh& mesh);

/// Continuum g-valued 1-form A_0 dt + A_x dx + A_y dy + A_z dz on [0,1]^4.
/// Optional derivative members feed check_stokes; empty means zero.
struct ContinuumField {
  using Vector = std::array<AlgebraElement, 3>;
  using VectorFn = std::function<Vector(double t, const Vec3& x)>;

  VectorFn spatial;
  std::function<AlgebraElement(double t, const Vec3& x)> temporal;

  VectorFn curl;               // dA as (yz, zx, xy) components
  VectorFn time_derivative;    // d_t A
  VectorFn temporal_gradient;  // grad A_0
};

/// Line-integral degrees of freedom, time-major:
/// spatial[tau * E + e] = int_e A(tau), temporal[tau * V + i] = int_{e_t} A_0.
struct EdgeDofs {
  std::vector<AlgebraElement> spatial;
  std::vector<AlgebraElement> temporal;
};

EdgeDofs interpolate_edge_dofs(const ContinuumField& field, const SpacetimeMesh& mesh, const QuadratureRule& rule);

struct StokesResidual {
  double spatial = 0.0;   // max over spatial faces
  double temporal = 0.0;  // max over temporal faces
  double max() const { return std::max(spatial, temporal); }
};

/// Compares signed boundary sums of edge dofs with quadrature fluxes of the
/// exterior derivative, for every face at every time node. Fields that are not
/// periodic only make sense away from the wrap-around seam: `interior_only`
/// skips faces whose unwrapped vertices leave [0,1)^3 and the last slab.
StokesResidual check_stokes(const SpacetimeMesh& mesh, const ContinuumField& field, const QuadratureRule& rule,
                            bool interior_only = false);

}  // namespace sgt
