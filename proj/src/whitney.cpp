#include "sgt/whitney.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "sgt/error.hpp"

namespace sgt {

namespace {

constexpr double kFactorial[] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800, 479001600};

// int_T lambda_a lambda_b.
double pair_integral(double volume, int a, int b) { return volume * (a == b ? 2.0 : 1.0) / 20.0; }

AlgebraElement along(const ContinuumField::Vector& a, const Vec3& d) {
  return d[0] * a[0] + d[1] * a[1] + d[2] * a[2];
}

// Orientation sign of dmu_a ^ dmu_b on a triangle with positively ordered vertices 0, 1, 2.
int triangle_epsilon(int a, int b) {
  if (a == b) return 0;
  return (b - a + 3) % 3 == 1 ? 1 : -1;
}

}  // namespace

double signed_volume(const TetGeometry& tet) {
  Eigen::Matrix3d m;
  m.col(0) = tet[1] - tet[0];
  m.col(1) = tet[2] - tet[0];
  m.col(2) = tet[3] - tet[0];
  return m.determinant() / 6.0;
}

std::array<Vec3, 4> barycentric_gradients(const TetGeometry& tet) {
  Eigen::Matrix3d m;
  m.row(0) = (tet[1] - tet[0]).transpose();
  m.row(1) = (tet[2] - tet[0]).transpose();
  m.row(2) = (tet[3] - tet[0]).transpose();
  const double det = m.determinant();
  const double scale = (tet[1] - tet[0]).norm() * (tet[2] - tet[0]).norm() * (tet[3] - tet[0]).norm();
  if (!(std::abs(det) > 1e-12 * scale)) throw Error(ErrorKind::DegenerateTet, "tetrahedron has no volume");
  // Columns of m^{-1} are the gradients of lambda_1..lambda_3.
  const Eigen::Matrix3d inv = m.inverse();
  std::array<Vec3, 4> g;
  for (int k = 0; k < 3; ++k) g[k + 1] = inv.col(k);
  g[0] = -(g[1] + g[2] + g[3]);
  return g;
}

std::array<double, 4> barycentric_coordinates(const TetGeometry& tet, const Vec3& point) {
  const auto g = barycentric_gradients(tet);
  std::array<double, 4> l{};
  for (int k = 1; k < 4; ++k) l[k] = g[k].dot(point - tet[0]);
  l[0] = 1.0 - l[1] - l[2] - l[3];
  return l;
}

Vec3 whitney_edge(const TetGeometry& tet, int i, int j, const Vec3& point) {
  const auto g = barycentric_gradients(tet);
  const auto l = barycentric_coordinates(tet, point);
  return l[i] * g[j] - l[j] * g[i];
}

Vec3 whitney_face(const TetGeometry& tet, int i, int j, int k, const Vec3& point) {
  const auto g = barycentric_gradients(tet);
  const auto l = barycentric_coordinates(tet, point);
  return 2.0 * (l[i] * g[j].cross(g[k]) + l[j] * g[k].cross(g[i]) + l[k] * g[i].cross(g[j]));
}

double monomial_integral(double volume, const std::array<int, 4>& exponents) {
  int total = 0;
  double numerator = 1.0;
  for (int a : exponents) {
    total += a;
    numerator *= kFactorial[a];
  }
  return 6.0 * volume * numerator / kFactorial[total + 3];
}

LocalMass local_mass(const TetGeometry& tet) {
  const auto g = barycentric_gradients(tet);
  const double vol = std::abs(signed_volume(tet));
  LocalMass out;

  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) out.vertex[a][b] = pair_integral(vol, a, b);
  }

  for (int s = 0; s < 6; ++s) {
    const auto [a, b] = kTetEdges[s];
    for (int r = s; r < 6; ++r) {
      const auto [c, d] = kTetEdges[r];
      out.edge[s][r] = pair_integral(vol, a, c) * g[b].dot(g[d]) - pair_integral(vol, a, d) * g[b].dot(g[c]) -
                       pair_integral(vol, b, c) * g[a].dot(g[d]) + pair_integral(vol, b, d) * g[a].dot(g[c]);
      out.edge[r][s] = out.edge[s][r];
    }
  }

  // lambda_f = 2 sum_cyclic lambda_i (g_j x g_k): coefficient vectors per vertex.
  auto face_terms = [&g](int k) {
    const auto [i, j, l] = kTetFaces[k];
    return std::array<std::pair<int, Vec3>, 3>{
        {{i, 2.0 * g[j].cross(g[l])}, {j, 2.0 * g[l].cross(g[i])}, {l, 2.0 * g[i].cross(g[j])}}};
  };
  for (int k = 0; k < 4; ++k) {
    const auto fk = face_terms(k);
    for (int m = k; m < 4; ++m) {
      const auto fm = face_terms(m);
      double acc = 0.0;
      for (const auto& [a, va] : fk) {
        for (const auto& [b, vb] : fm) acc += pair_integral(vol, a, b) * va.dot(vb);
      }
      out.face[k][m] = out.face[m][k] = acc;
    }
  }
  return out;
}

KroneckerMass::KroneckerMass(Eigen::SparseMatrix<double> spatial, TimeCoupling coupling, int nt, double dt)
    : spatial_(std::move(spatial)), coupling_(coupling), nt_(nt), dt_(dt) {}

double KroneckerMass::time_weight(int tau, int taup) const {
  if (coupling_ == TimeCoupling::slab) return tau == taup ? 1.0 / dt_ : 0.0;
  if (tau == taup) return 2.0 * dt_ / 3.0;
  const bool adjacent = taup == (tau + 1) % nt_ || tau == (taup + 1) % nt_;
  if (!adjacent) return 0.0;
  // With two time nodes the hats overlap on both slabs.
  return nt_ == 2 ? dt_ / 3.0 : dt_ / 6.0;
}

double KroneckerMass::operator()(std::int64_t row, int tau, std::int64_t col, int taup) const {
  const double w = time_weight(tau, taup);
  return w == 0.0 ? 0.0 : w * spatial_.coeff(row, col);
}

double KroneckerMass::bilinear(std::span<const double> x, std::span<const double> y) const {
  const auto n = spatial_.rows();
  if (static_cast<std::int64_t>(x.size()) != rows() || static_cast<std::int64_t>(y.size()) != rows()) {
    throw Error(ErrorKind::InvalidSize, "vector length does not match the mass matrix");
  }
  using Map = Eigen::Map<const Eigen::VectorXd>;
  auto xs = [&](int tau) { return Map(x.data() + tau * n, n); };
  auto ys = [&](int tau) { return Map(y.data() + tau * n, n); };

  double total = 0.0;
  if (coupling_ == TimeCoupling::slab) {
    for (int tau = 0; tau < nt_; ++tau) total += xs(tau).dot(spatial_ * ys(tau)) / dt_;
    return total;
  }
  // Slab by slab: local hat mass [[dt/3, dt/6], [dt/6, dt/3]] on (tau, tau+1).
  for (int tau = 0; tau < nt_; ++tau) {
    const int up = (tau + 1) % nt_;
    const Eigen::VectorXd s0 = spatial_ * ys(tau);
    const Eigen::VectorXd s1 = spatial_ * ys(up);
    total += dt_ / 3.0 * (xs(tau).dot(s0) + xs(up).dot(s1)) + dt_ / 6.0 * (xs(tau).dot(s1) + xs(up).dot(s0));
  }
  return total;
}

std::array<double, 3> face_structure_constants(const std::array<Vec3, 3>& triangle) {
  const double area2 = (triangle[1] - triangle[0]).cross(triangle[2] - triangle[0]).norm();
  if (!(area2 > 0.0)) throw Error(ErrorKind::DegenerateTet, "degenerate triangle");
  // int_f mu_a mu_c dmu_b ^ dmu_d = eps_bd (1 + delta_ac) / 24, independent of shape.
  auto term = [](int a, int b, int c, int d) { return triangle_epsilon(b, d) * (a == c ? 2.0 : 1.0) / 24.0; };
  auto wedge = [&](int a, int b, int c, int d) {
    // (mu_a dmu_b - mu_b dmu_a) ^ (mu_c dmu_d - mu_d dmu_c)
    return term(a, b, c, d) - term(a, b, d, c) - term(b, a, c, d) + term(b, a, d, c);
  };
  return {wedge(0, 1, 1, 2), wedge(1, 2, 2, 0), wedge(2, 0, 0, 1)};
}

std::array<double, 4> temporal_face_structure_constants() {
  // Face coordinates s along the edge, u = (t - tau)/dt, orientation ds ^ du.
  // Loop-oriented basis forms as (ds coefficient, du coefficient).
  struct Form {
    double (*ds)(double, double);
    double (*du)(double, double);
  };
  const std::array<Form, 4> loop{{
      {[](double, double u) { return 1.0 - u; }, [](double, double) { return 0.0; }},  // e(tau)
      {[](double, double) { return 0.0; }, [](double s, double) { return s; }},        // e_t at j
      {[](double, double u) { return -u; }, [](double, double) { return 0.0; }},       // -e(tau+dt)
      {[](double, double) { return 0.0; }, [](double s, double) { return -(1.0 - s); }},  // -e_t at i
  }};
  const auto rule = QuadratureRule::gauss_legendre(2);
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    const Form& a = loop[k];
    const Form& b = loop[(k + 1) % 4];
    out[k] = rule.integrate([&](double s) {
      return rule.integrate([&](double u) { return a.ds(s, u) * b.du(s, u) - a.du(s, u) * b.ds(s, u); });
    });
  }
  return out;
}

StructureConstants structure_constants(const SpacetimeMesh& mesh) {
  const auto& s = mesh.spatial();
  StructureConstants out;
  out.spatial.resize(s.num_faces());
  for (std::int64_t f = 0; f < s.num_faces(); ++f) out.spatial[f] = face_structure_constants(s.face_positions(f));
  out.temporal.assign(s.num_edges(), temporal_face_structure_constants());
  return out;
}

MassData assemble_mass(const SpacetimeMesh& mesh) {
  const auto& s = mesh.spatial();
  MassData out;
  out.nt = mesh.nt();
  out.dt = mesh.dt();
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(kTetPermutations.size()); ++t) {
    out.shapes[s.tet(t).shape] = local_mass(s.tet_positions(t));
  }

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> face_t, edge_t, vertex_t;
  face_t.reserve(16 * s.num_tets());
  edge_t.reserve(36 * s.num_tets());
  vertex_t.reserve(16 * s.num_tets());
  for (const auto& tet : s.tets()) {
    const LocalMass& lm = out.local(tet);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        face_t.emplace_back(tet.faces[a], tet.faces[b], lm.face[a][b]);
        vertex_t.emplace_back(tet.vertices[a], tet.vertices[b], lm.vertex[a][b]);
      }
    }
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) edge_t.emplace_back(tet.edges[a], tet.edges[b], lm.edge[a][b]);
    }
  }
  auto build = [](std::int64_t n, std::vector<Triplet>& triplets) {
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    triplets.clear();
    triplets.shrink_to_fit();
    return m;
  };
  Eigen::SparseMatrix<double> faces = build(s.num_faces(), face_t);
  Eigen::SparseMatrix<double> edges = build(s.num_edges(), edge_t);
  Eigen::SparseMatrix<double> vertices = build(s.num_vertices(), vertex_t);

  out.faces_spatial = KroneckerMass(std::move(faces), TimeCoupling::hat, mesh.nt(), mesh.dt());
  out.faces_temporal = KroneckerMass(edges, TimeCoupling::slab, mesh.nt(), mesh.dt());
  out.edges_spatial = KroneckerMass(std::move(edges), TimeCoupling::hat, mesh.nt(), mesh.dt());
  out.edges_temporal = KroneckerMass(std::move(vertices), TimeCoupling::slab, mesh.nt(), mesh.dt());
  out.constants = structure_constants(mesh);
  return out;
}

EdgeDofs interpolate_edge_dofs(const ContinuumField& field, const SpacetimeMesh& mesh, const QuadratureRule& rule) {
  const auto& s = mesh.spatial();
  const std::int64_t ne = s.num_edges();
  const std::int64_t nv = s.num_vertices();
  EdgeDofs out;
  out.spatial.assign(ne * mesh.nt(), AlgebraElement{});
  out.temporal.assign(nv * mesh.nt(), AlgebraElement{});
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    const double t = tau * mesh.dt();
    if (field.spatial) {
      for (std::int64_t e = 0; e < ne; ++e) {
        const Vec3 origin = s.position(s.edge(e).origin);
        const Vec3 d = s.edge_vector(e);
        out.spatial[tau * ne + e] = rule.integrate([&](double u) { return along(field.spatial(t, origin + u * d), d); });
      }
    }
    if (field.temporal) {
      for (std::int64_t i = 0; i < nv; ++i) {
        const Vec3 x = s.position(static_cast<int>(i));
        out.temporal[tau * nv + i] =
            mesh.dt() * rule.integrate([&](double u) { return field.temporal(t + u * mesh.dt(), x); });
      }
    }
  }
  return out;
}

StokesResidual check_stokes(const SpacetimeMesh& mesh, const ContinuumField& field, const QuadratureRule& rule,
                            bool interior_only) {
  const auto& s = mesh.spatial();
  const EdgeDofs dofs = interpolate_edge_dofs(field, mesh, rule);
  const std::int64_t ne = s.num_edges();
  const std::int64_t nv = s.num_vertices();
  const double dt = mesh.dt();
  StokesResidual out;

  auto inside = [](const Vec3& p) { return p.maxCoeff() < 1.0 - 1e-12; };
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    const double t = tau * dt;
    for (std::int64_t f = 0; f < s.num_faces(); ++f) {
      const auto& face = s.face(f);
      if (interior_only) {
        const auto p = s.face_positions(f);
        if (!inside(p[0]) || !inside(p[1]) || !inside(p[2])) continue;
      }
      AlgebraElement boundary;
      for (int k = 0; k < 3; ++k) boundary += face.edge_signs[k] * dofs.spatial[tau * ne + face.edges[k]];
      AlgebraElement flux;
      if (field.curl) {
        const auto p = s.face_positions(f);
        const Vec3 a = p[1] - p[0];
        const Vec3 b = p[2] - p[0];
        const Vec3 n = a.cross(b);
        // Collapsed tensor rule on the reference triangle.
        flux = rule.integrate([&](double xi) {
          return (1.0 - xi) * rule.integrate([&](double eta) {
                   return along(field.curl(t, p[0] + xi * a + eta * (1.0 - xi) * b), n);
                 });
        });
      }
      out.spatial = std::max(out.spatial, (boundary - flux).norm());
    }

    const int up = mesh.next(tau);
    if (interior_only && up == 0) continue;
    for (std::int64_t e = 0; e < ne; ++e) {
      const auto& edge = s.edge(e);
      if (interior_only && !inside(s.position(edge.origin) + s.edge_vector(e))) continue;
      const AlgebraElement boundary = dofs.spatial[tau * ne + e] + dofs.temporal[tau * nv + edge.target] -
                                      dofs.spatial[up * ne + e] - dofs.temporal[tau * nv + edge.origin];
      const Vec3 origin = s.position(edge.origin);
      const Vec3 d = s.edge_vector(e);
      // int_{e x I} (d_e A_0 - d_t A_e) ds dt
      const AlgebraElement flux = dt * rule.integrate([&](double u) {
        return rule.integrate([&](double sp) {
          const double time = t + u * dt;
          const Vec3 x = origin + sp * d;
          AlgebraElement v;
          if (field.temporal_gradient) v += along(field.temporal_gradient(time, x), d);
          if (field.time_derivative) v -= along(field.time_derivative(time, x), d);
          return v;
        });
      });
      out.temporal = std::max(out.temporal, (boundary - flux).norm());
    }
  }
  return out;
}

}  // namespace sgt
