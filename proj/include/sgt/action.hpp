#pragma once

// Discrete Yang-Mills actions and the gauge-covariant scalar kinetic action.
//
//   S^J  mass-matrix form of the interpolated curvature dofs (not gauge invariant)
//   S^I  same pairing with loop curvatures F - 1 at their distinguished points
//   S^L  S^I with parallel transports bringing both curvatures to a common point
//
// S^I and S^L are accumulated prism by prism, T x [tau, tau + dt]: every face
// pair coupled by the mass matrix lives in a common prism, and the transport
// between two distinguished points is the link of the tetrahedron edge that
// joins them.

#include <optional>
#include <string_view>
#include <vector>

#include "sgt/gaugefield.hpp"
#include "sgt/liealg.hpp"
#include "sgt/mesh.hpp"
#include "sgt/whitney.hpp"

namespace sgt {

enum class ActionKind { J, I, L };

const char* to_string(ActionKind kind) noexcept;
/// "J", "I" or "L". Throws UnknownCase.
ActionKind parse_action_kind(std::string_view name);

struct ActionBreakdown {
  double temporal = 0.0;
  double spatial = 0.0;
  double scalar_temporal = 0.0;
  double scalar_spatial = 0.0;

  double gauge() const { return temporal + spatial; }
  double scalar() const { return scalar_temporal + scalar_spatial; }
  double total() const { return gauge() + scalar(); }
};

/// Where a loop starts (index into its vertex list) and which way it runs.
struct FaceLoop {
  int start = 0;
  bool reversed = false;
};

/// Loop-signed edge dofs of a spatial face (3) or temporal face (4) in the
/// default orientation, starting at the distinguished point.
std::vector<AlgebraElement> face_loop_dofs(const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                                           const EntityRef& face);

/// U_ij U_jk U_ki. The default loop starts at the distinguished point.
GroupElement spatial_curvature(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, std::int64_t face, int tau,
                               FaceLoop loop = {});
/// U_ij(tau) U_0,jj' U_j'i'(tau + dt) U_0,i'i for spatial edge e = i -> j.
GroupElement temporal_curvature(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, std::int64_t edge,
                                int tau, FaceLoop loop = {});

struct JCurvature {
  std::vector<AlgebraElement> spatial;   // tau * F + f
  std::vector<AlgebraElement> temporal;  // tau * E + e, the face e x [tau, tau + dt]
};

JCurvature j_curvature_dofs(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass);

/// Optional per-prism output: gauge action contribution of prism tau * T + t.
using PrismTerms = std::vector<double>;

ActionBreakdown action_J(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass);
ActionBreakdown action_I(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass,
                         PrismTerms* per_prism = nullptr);
ActionBreakdown action_L(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass,
                         PrismTerms* per_prism = nullptr);
ActionBreakdown action(ActionKind kind, const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                       const MassData& mass);

/// Transported scalar kinetic action (gauge invariant). Fills only the scalar parts.
ActionBreakdown scalar_action_L(const ScalarField& phi, const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                                const MassData& mass);
/// Same sums without the transports inserted between the two differences.
ActionBreakdown scalar_action_F(const ScalarField& phi, const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                                const MassData& mass);

/// Exact continuum Yang-Mills action of a reference field. Throws UnknownCase.
double continuum_action(int case_id);

/// (S(A + eps A') - S(A - eps A')) / (2 eps) of the gauge part.
double action_differential_fd(ActionKind kind, const DiscreteGaugeField& field, const DiscreteGaugeField& direction,
                              const SpacetimeMesh& mesh, const MassData& mass, double step);

/// d/ds F(A + s A') at s = 0 for the default loop of `face`, as
/// F dexp_{-W}(dW) with W the BCH-chained loop exponent. Throws BranchAmbiguity
/// when F is too close to -1 for the loop exponent to be defined.
Mat2 loop_differential(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const EntityRef& face,
                       const DiscreteGaugeField& direction);

inline constexpr int kLoopBchOrder = 8;
inline constexpr int kLoopDexpOrder = 8;

}  // namespace sgt
