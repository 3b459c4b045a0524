// Acceptance run: one PASS/FAIL line per criterion, details indented below it.
// SGT_ACCEPTANCE_SHORT=1 drops N = 32 from the convergence sweep.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sgt/harness.hpp"
#include "sgt/oracle.hpp"

using namespace sgt;

namespace {

int failures = 0;

void verdict(int id, const char* title, bool ok) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, title);
  if (!ok) ++failures;
}

bool report(const oracle::Check& c) {
  std::printf("    %-4s %-56s %.3e %s %.3e\n", c.pass() ? "ok" : "bad", c.name.c_str(), c.value,
              c.at_least ? ">=" : "<=", c.tolerance);
  return c.pass();
}

bool convergence(bool short_mode) {
  std::vector<int> ns{4, 8, 16};
  if (!short_mode) ns.push_back(32);
  bool ok = true;
  for (int id = 1; id <= 4; ++id) {
    const ConvergenceRun run = run_convergence(id, ns, ActionKind::L);
    const bool slope = run.fit.points >= 3 && run.fit.exponent >= 1.8 && run.fit.exponent <= 2.2;
    std::printf("    case %d:", id);
    for (const auto& r : run.records) std::printf(" %.3e", r.rel_err);
    std::printf("  p=%.3f C=%.3f  %s\n", run.fit.exponent, run.fit.prefactor,
                slope && run.strictly_decreasing ? "ok" : "bad");
    ok = ok && slope && run.strictly_decreasing;
  }
  return ok;
}

bool gauge_invariance() {
  const GaugeInvarianceResult r = run_gauge_invariance(4, 10, 0.2, 2);
  const bool ok = r.trials >= 20 && r.deviation_L <= 1e-10 && r.deviation_I > 1e-6;
  std::printf("    trials %d  S^L %.3e (<= 1e-10)  S^I %.3e (> 1e-6)  S^J %.3e\n", r.trials, r.deviation_L,
              r.deviation_I, r.deviation_J);
  std::printf("    scalar kinetic: transported %.3e  untransported %.3e\n", r.deviation_scalar_L,
              r.deviation_scalar_F);
  return ok;
}

bool lie_kernel() {
  bool ok = true;
  for (const auto& c : oracle::lie_kernel_suite()) ok = report(c) && ok;
  return ok;
}

double whitney_duality_defect(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto rule = QuadratureRule::gauss_legendre(3);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    TetGeometry t;
    do {
      for (auto& p : t) p = Vec3(u(rng), u(rng), u(rng));
    } while (std::abs(signed_volume(t)) < 0.05);
    const auto l = barycentric_coordinates(t, Vec3(u(rng), u(rng), u(rng)));
    worst = std::max(worst, std::abs(l[0] + l[1] + l[2] + l[3] - 1.0));
    for (int s = 0; s < 6; ++s) {
      for (int r = 0; r < 6; ++r) {
        const auto [a, b] = kTetEdges[r];
        const Vec3 d = t[b] - t[a];
        const double c = rule.integrate(
            [&](double x) { return whitney_edge(t, kTetEdges[s][0], kTetEdges[s][1], t[a] + x * d).dot(d); });
        worst = std::max(worst, std::abs(c - (r == s ? 1.0 : 0.0)));
      }
    }
    for (int f = 0; f < 4; ++f) {
      for (int g = 0; g < 4; ++g) {
        const auto [a, b, c] = kTetFaces[g];
        const Vec3 area = 0.5 * (t[b] - t[a]).cross(t[c] - t[a]);
        const Vec3 w = whitney_face(t, kTetFaces[f][0], kTetFaces[f][1], kTetFaces[f][2], (t[a] + t[b] + t[c]) / 3.0);
        worst = std::max(worst, std::abs(w.dot(area) - (f == g ? 1.0 : 0.0)));
      }
    }
  }
  return worst;
}

bool feec() {
  bool ok = report({"partition of unity and Whitney duality", whitney_duality_defect(7), 1e-10});

  const SpacetimeMesh mesh(2, 3);
  const MassData mass = assemble_mass(mesh);
  double min_eig = INFINITY, asym = 0.0;
  for (const KroneckerMass* m : {&mass.faces_spatial, &mass.faces_temporal, &mass.edges_spatial, &mass.edges_temporal}) {
    const Eigen::MatrixXd d(m->spatial());
    asym = std::max(asym, (d - d.transpose()).cwiseAbs().maxCoeff());
    min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(d).eigenvalues().minCoeff());
  }
  double coupling = 0.0;
  for (int a = 0; a < mesh.nt(); ++a) {
    for (int b = 0; b < mesh.nt(); ++b) {
      if (a == b) continue;
      coupling = std::max({coupling, std::abs(mass.faces_temporal.time_weight(a, b)),
                           std::abs(mass.edges_temporal.time_weight(a, b))});
    }
  }
  ok = report({"mass asymmetry (N = 2)", asym, 0.0}) && ok;
  ok = report({"mass minimum eigenvalue (N = 2)", min_eig, -1e-12, true}) && ok;
  ok = report({"temporal blocks coupling distinct slabs", coupling, 0.0}) && ok;

  const SpacetimeMesh mesh4(4, 4);
  ContinuumField xdy;
  xdy.spatial = [](double, const Vec3& x) {
    return ContinuumField::Vector{AlgebraElement{}, x[0] * AlgebraElement(0, 0, 1), AlgebraElement{}};
  };
  xdy.curl = [](double, const Vec3&) {
    return ContinuumField::Vector{AlgebraElement{}, AlgebraElement{}, AlgebraElement(0, 0, 1)};
  };
  const double stokes = check_stokes(mesh4, xdy, QuadratureRule::gauss_legendre(8), true).max();
  ok = report({"Stokes residual, A = x dy, N = 4", stokes, 1e-10}) && ok;

  for (const auto& c : oracle::feec_suite()) ok = report(c) && ok;
  return ok;
}

double max_loop_identity_defect() {
  const SpacetimeMesh mesh(2, 2);
  const DiscreteGaugeField a = random_field(mesh, 77, 0.1);
  const auto& s = mesh.spatial();
  auto dist = [](const GroupElement& x, const GroupElement& y) { return frobenius_norm(x.matrix() - y.matrix()); };
  double worst = 0.0;
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    for (std::int64_t f = 0; f < s.num_faces(); ++f) {
      const GroupElement base = spatial_curvature(a, mesh, f, tau);
      const auto xs = face_loop_dofs(a, mesh, {EntityKind::spatial_face, f, tau});
      worst = std::max(worst, dist(spatial_curvature(a, mesh, f, tau, {0, true}), base.inverse()));
      GroupElement u;
      for (int k = 1; k < 3; ++k) {
        u = u * exp(xs[k - 1]);
        worst = std::max(worst, dist(spatial_curvature(a, mesh, f, tau, {k, false}), u.inverse() * base * u));
      }
    }
    for (std::int64_t e = 0; e < s.num_edges(); ++e) {
      const GroupElement base = temporal_curvature(a, mesh, e, tau);
      const auto xs = face_loop_dofs(a, mesh, {EntityKind::temporal_face, e, tau});
      worst = std::max(worst, dist(temporal_curvature(a, mesh, e, tau, {0, true}), base.inverse()));
      GroupElement u;
      for (int k = 1; k < 4; ++k) {
        u = u * exp(xs[k - 1]);
        worst = std::max(worst, dist(temporal_curvature(a, mesh, e, tau, {k, false}), u.inverse() * base * u));
      }
    }
  }
  return worst;
}

double max_loop_differential_error() {
  const SpacetimeMesh mesh(2, 2);
  const DiscreteGaugeField a = random_field(mesh, 78, 0.1);
  const DiscreteGaugeField da = random_field(mesh, 79, 1.0);
  const double eps = 1e-5;
  const DiscreteGaugeField plus = a.axpy(eps, da), minus = a.axpy(-eps, da);
  const auto& s = mesh.spatial();
  double worst = 0.0;
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    for (std::int64_t f = 0; f < s.num_faces(); ++f) {
      const Mat2 fd = Complex(0.5 / eps) *
                      (spatial_curvature(plus, mesh, f, tau).matrix() - spatial_curvature(minus, mesh, f, tau).matrix());
      const Mat2 an = loop_differential(a, mesh, {EntityKind::spatial_face, f, tau}, da);
      worst = std::max(worst, frobenius_norm(an - fd));
    }
    for (std::int64_t e = 0; e < s.num_edges(); ++e) {
      const Mat2 fd = Complex(0.5 / eps) * (temporal_curvature(plus, mesh, e, tau).matrix() -
                                            temporal_curvature(minus, mesh, e, tau).matrix());
      const Mat2 an = loop_differential(a, mesh, {EntityKind::temporal_face, e, tau}, da);
      worst = std::max(worst, frobenius_norm(an - fd));
    }
  }
  return worst;
}

// Every changed prism must contain the perturbed edge in its tet and sit in an adjacent slab.
bool locality() {
  const SpacetimeMesh mesh(3, 4);
  const MassData mass = assemble_mass(mesh);
  const auto& s = mesh.spatial();
  std::mt19937_64 rng(80);
  bool ok = true;
  for (int trial = 0; trial < 5; ++trial) {
    DiscreteGaugeField a = random_field(mesh, 81 + trial, 0.3);
    PrismTerms before_l, after_l, before_i, after_i;
    action_L(a, mesh, mass, &before_l);
    action_I(a, mesh, mass, &before_i);
    const auto e = std::uniform_int_distribution<std::int64_t>(0, s.num_edges() - 1)(rng);
    const int tau = std::uniform_int_distribution<int>(0, mesh.nt() - 1)(rng);
    a.set_spatial(e, tau, a.spatial(e, tau) + AlgebraElement(0.03, 0.01, -0.02));
    action_L(a, mesh, mass, &after_l);
    action_I(a, mesh, mass, &after_i);
    std::set<std::size_t> support;
    for (std::int64_t t = 0; t < s.num_tets(); ++t) {
      const auto& edges = s.tet(t).edges;
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) continue;
      for (int slab : {mesh.prev(tau), tau}) support.insert(static_cast<std::size_t>(slab * s.num_tets() + t));
    }
    std::size_t changed = 0, outside = 0;
    for (std::size_t p = 0; p < before_l.size(); ++p) {
      const bool diff = before_l[p] != after_l[p] || before_i[p] != after_i[p];
      changed += diff;
      outside += diff && !support.count(p);
    }
    std::printf("    perturbed edge %lld at node %d: %zu of %zu prisms changed, %zu outside the incident set\n",
                static_cast<long long>(e), tau, changed, before_l.size(), outside);
    ok = ok && outside == 0 && changed > 0;
  }
  return ok;
}

// Smooth, time-dependent gauge rotation. Case 3 has A_z = 0 and no z dependence,
// so on the Kuhn mesh every transport S^L inserts meets a trivial curvature and
// S^I = S^L holds exactly; rotating the field makes the transports matter.
GaugeTransform smooth_gauge(const SpacetimeMesh& mesh) {
  GaugeTransform g(mesh);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    const double t = tau * mesh.dt();
    for (std::int64_t v = 0; v < mesh.spatial().num_vertices(); ++v) {
      const Vec3 x = mesh.spatial().position(static_cast<int>(v));
      g.set(v, tau, exp(AlgebraElement(0.5 * std::sin(two_pi * x[2]), 0.3 * std::cos(two_pi * (x[0] + t)),
                                       0.4 * std::sin(two_pi * x[1]))));
    }
  }
  return g;
}

bool pairwise_convergence() {
  bool ok = true;
  for (bool rotated : {false, true}) {
    double prev_ji = INFINITY, prev_il = INFINITY;
    for (int n : {4, 8, 16}) {
      const SpacetimeMesh mesh(n, n);
      const MassData mass = assemble_mass(mesh);
      DiscreteGaugeField a = sample(test_field(3), mesh, QuadratureRule::gauss_legendre(kDefaultQuadraturePoints));
      if (rotated) a = apply_gauge(a, smooth_gauge(mesh), mesh);
      const double j = action_J(a, mesh, mass).total();
      const double i = action_I(a, mesh, mass).total();
      const double l = action_L(a, mesh, mass).total();
      const double ji = std::abs(j - i), il = std::abs(i - l);
      std::printf("    case 3%s, N=%2d: |S^J - S^I| = %.3e  |S^I - S^L| = %.3e\n", rotated ? " rotated" : "", n, ji,
                  il);
      // an identically vanishing difference counts as converged
      const bool il_ok = il < prev_il || il <= 1e-15 * l;
      ok = ok && ji < prev_ji && il_ok;
      prev_ji = ji;
      prev_il = il;
    }
  }
  return ok;
}

bool action_structure() {
  bool ok = report({"loop reversal / relocation identities (N = 2)", max_loop_identity_defect(), 1e-13});
  ok = report({"loop differential vs central differences (N = 2)", max_loop_differential_error(), 1e-7}) && ok;
  const bool local = locality();
  std::printf("    %-4s single-dof perturbations stay in incident prisms\n", local ? "ok" : "bad");
  const bool pairs = pairwise_convergence();
  std::printf("    %-4s pairwise action differences shrink under refinement\n", pairs ? "ok" : "bad");
  return ok && local && pairs;
}

}  // namespace

int main() {
  const char* env = std::getenv("SGT_ACCEPTANCE_SHORT");
  const bool short_mode = env && std::string(env) != "0";
  try {
    verdict(1, short_mode ? "S^L convergence, N = 4, 8, 16" : "S^L convergence, N = 4, 8, 16, 32",
            convergence(short_mode));
    verdict(2, "gauge invariance of S^L, S^I positive control", gauge_invariance());
    verdict(3, "Lie-kernel oracle suite", lie_kernel());
    verdict(4, "FEEC property suite", feec());
    verdict(5, "action-structure suite", action_structure());
  } catch (const Error& e) {
    std::printf("[FAIL] unexpected error: %s\n", e.what());
    return 1;
  }
  std::printf("[NOTE] criterion 6: operator-norm consistency statements are covered by the error-slope, "
              "differential and pairwise checks above\n");
  std::printf("%s\n", failures == 0 ? "all acceptance criteria passed" : "acceptance criteria failed");
  return failures == 0 ? 0 : 1;
}
