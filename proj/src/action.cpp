#include "sgt/action.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <string>

#include "sgt/error.hpp"

namespace sgt {

namespace {

constexpr Quat kOne = Quat::identity();

Quat conjugate(const Quat& r, const Quat& q) { return r * q * r.adjoint(); }

Quat loop_product(std::span<const AlgebraElement> xs, FaceLoop loop) {
  const int n = static_cast<int>(xs.size());
  if (loop.start < 0 || loop.start >= n) throw Error(ErrorKind::InvalidRef, "loop start outside the face");
  Quat u = kOne;
  for (int m = 0; m < n; ++m) {
    if (!loop.reversed) {
      u = u * exp(xs[(loop.start + m) % n]).quat();
    } else {
      u = u * exp(-xs[((loop.start - 1 - m) % n + n) % n]).quat();
    }
  }
  return u;
}

// Links and loop curvatures at one time node.
struct NodeData {
  std::vector<Quat> links;  // exp(A_e(tau)) per spatial edge
  std::vector<Quat> q;      // F_f(tau) - 1 per spatial face
};

// Temporal links and temporal-face curvatures of the slab [tau, tau + dt].
struct SlabData {
  std::vector<Quat> links;  // exp(A_0,i(tau)) per vertex
  std::vector<Quat> q;      // F^t_e(tau) - 1 per spatial edge
};

NodeData node_data(const DiscreteGaugeField& field, const SpatialMesh& s, int tau, bool curvature) {
  NodeData out;
  out.links.resize(s.num_edges());
  for (std::int64_t e = 0; e < s.num_edges(); ++e) out.links[e] = exp(field.spatial(e, tau)).quat();
  if (curvature) {
    out.q.resize(s.num_faces());
    for (std::int64_t f = 0; f < s.num_faces(); ++f) {
      const auto& face = s.face(f);
      Quat u = kOne;
      for (int k = 0; k < 3; ++k) {
        const Quat& l = out.links[face.edges[k]];
        u = u * (face.edge_signs[k] > 0 ? l : l.adjoint());
      }
      out.q[f] = u - kOne;
    }
  }
  return out;
}

SlabData slab_data(const DiscreteGaugeField& field, const SpatialMesh& s, int tau, const NodeData& lo,
                   const NodeData& hi, bool curvature) {
  SlabData out;
  out.links.resize(s.num_vertices());
  for (std::int64_t i = 0; i < s.num_vertices(); ++i) out.links[i] = exp(field.temporal(i, tau)).quat();
  if (curvature) {
    out.q.resize(s.num_edges());
    for (std::int64_t e = 0; e < s.num_edges(); ++e) {
      const auto& edge = s.edge(e);
      out.q[e] = lo.links[e] * out.links[edge.target] * hi.links[e].adjoint() * out.links[edge.origin].adjoint() - kOne;
    }
  }
  return out;
}

// Link between local vertices a and b of a tetrahedron: U_ab.
Quat local_link(const SpatialMesh::Tet& tet, const NodeData& node, int a, int b) {
  if (a == b) return kOne;
  const Quat& l = node.links[tet.edges[tet_edge_slot(a, b)]];
  return a < b ? l : l.adjoint();
}

// U_0 from node a to node b of the slab (0 = tau, 1 = tau + dt) at one vertex.
Quat time_link(const SlabData& slab, std::int32_t vertex, int a, int b) {
  if (a == b) return kOne;
  const Quat& l = slab.links[vertex];
  return a < b ? l : l.adjoint();
}

constexpr int face_base(int k) { return k == 0 ? 1 : 0; }

// Visits every slab with rolling node data, calling body(tau, lo, hi, slab).
template <class Body>
void for_each_slab(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, bool curvature, Body&& body) {
  const auto& s = mesh.spatial();
  const NodeData first = node_data(field, s, 0, curvature);
  NodeData lo = first;
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    const int up = mesh.next(tau);
    NodeData hi = up == 0 ? first : node_data(field, s, up, curvature);
    const SlabData slab = slab_data(field, s, tau, lo, hi, curvature);
    body(tau, lo, hi, slab);
    lo = std::move(hi);
  }
}

void check_shapes(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass) {
  if (field.num_spatial_edges() != mesh.spatial().num_edges() || field.nt() != mesh.nt() || mass.nt != mesh.nt() ||
      mass.edges_spatial.spatial_rows() != mesh.spatial().num_edges()) {
    throw Error(ErrorKind::InvalidSize, "field, mesh and mass data disagree in shape");
  }
}

template <bool Transport>
ActionBreakdown loop_action(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass,
                            PrismTerms* per_prism) {
  check_shapes(field, mesh, mass);
  const auto& s = mesh.spatial();
  const double dt = mesh.dt();
  const double w_same = dt / 3.0;
  const double w_cross = dt / 6.0;
  if (per_prism) per_prism->assign(mesh.num_prisms(), 0.0);

  ActionBreakdown out;
  for_each_slab(field, mesh, true, [&](int tau, const NodeData& lo, const NodeData& hi, const SlabData& slab) {
    const NodeData* nodes[2] = {&lo, &hi};
    double slab_spatial = 0.0;
    double slab_temporal = 0.0;
    for (std::int64_t t = 0; t < s.num_tets(); ++t) {
      const auto& tet = s.tet(t);
      const LocalMass& lm = mass.local(tet);

      // moved[a][k][beta]: curvature of face k at node a carried to local vertex beta (0 or 1).
      // held[b][l][a]: curvature of face l at node b carried along its own time line to node a.
      Quat moved[2][4][2];
      Quat held[2][4][2];
      for (int a = 0; a < 2; ++a) {
        for (int k = 0; k < 4; ++k) {
          const Quat& q = nodes[a]->q[tet.faces[k]];
          for (int beta = 0; beta < 2; ++beta) {
            moved[a][k][beta] = Transport ? conjugate(local_link(tet, *nodes[a], beta, face_base(k)), q) : q;
          }
          for (int c = 0; c < 2; ++c) {
            held[a][k][c] = Transport ? conjugate(time_link(slab, tet.vertices[face_base(k)], c, a), q) : q;
          }
        }
      }
      double spatial = 0.0;
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
          double acc = 0.0;
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              const double w = a == b ? w_same : w_cross;
              acc += w * dot(moved[a][k][face_base(l)], held[b][l][a]);
            }
          }
          spatial += lm.face[k][l] * acc;
        }
      }
      spatial *= 2.0;

      Quat tq[6];
      for (int r = 0; r < 6; ++r) tq[r] = slab.q[tet.edges[r]];
      double temporal = 0.0;
      for (int e = 0; e < 6; ++e) {
        const int base_e = kTetEdges[e][0];
        for (int r = 0; r < 6; ++r) {
          const Quat lhs = Transport ? conjugate(local_link(tet, lo, kTetEdges[r][0], base_e), tq[e]) : tq[e];
          temporal += lm.edge[e][r] * dot(lhs, tq[r]);
        }
      }
      temporal *= 2.0 / dt;

      slab_spatial += spatial;
      slab_temporal += temporal;
      if (per_prism) (*per_prism)[tau * s.num_tets() + t] = spatial + temporal;
    }
    out.spatial += slab_spatial;
    out.temporal += slab_temporal;
  });
  return out;
}

template <bool Transport>
ActionBreakdown scalar_action(const ScalarField& phi, const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                              const MassData& mass) {
  check_shapes(field, mesh, mass);
  const auto& s = mesh.spatial();
  if (phi.num_vertices() != s.num_vertices() || phi.nt() != mesh.nt()) {
    throw Error(ErrorKind::InvalidSize, "scalar field does not belong to this mesh");
  }
  const double dt = mesh.dt();
  const double w_same = dt / 3.0;
  const double w_cross = dt / 6.0;

  auto spatial_differences = [&](const NodeData& node, int tau) {
    std::vector<Spinor> d(s.num_edges());
    for (std::int64_t e = 0; e < s.num_edges(); ++e) {
      const auto& edge = s.edge(e);
      const Spinor moved = node.links[e].adjoint() * phi.at(edge.origin, tau);
      const Spinor& end = phi.at(edge.target, tau);
      d[e] = {end[0] - moved[0], end[1] - moved[1]};
    }
    return d;
  };

  ActionBreakdown out;
  std::vector<Spinor> d_lo = spatial_differences(node_data(field, s, 0, false), 0);
  const std::vector<Spinor> d_first = d_lo;
  for_each_slab(field, mesh, false, [&](int tau, const NodeData& lo, const NodeData& hi, const SlabData& slab) {
    const int up = mesh.next(tau);
    const std::vector<Spinor> d_hi = up == 0 ? d_first : spatial_differences(hi, up);
    const std::vector<Spinor>* ds[2] = {&d_lo, &d_hi};
    const NodeData* nodes[2] = {&lo, &hi};

    std::vector<Spinor> d_time(s.num_vertices());
    for (std::int64_t i = 0; i < s.num_vertices(); ++i) {
      const Spinor moved = slab.links[i].adjoint() * phi.at(i, tau);
      const Spinor& end = phi.at(i, up);
      d_time[i] = {end[0] - moved[0], end[1] - moved[1]};
    }

    double slab_spatial = 0.0;
    double slab_temporal = 0.0;
    for (const auto& tet : s.tets()) {
      const LocalMass& lm = mass.local(tet);
      for (int e = 0; e < 6; ++e) {
        const int head_e = kTetEdges[e][1];
        for (int r = 0; r < 6; ++r) {
          const int head_r = kTetEdges[r][1];
          double acc = 0.0;
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              const Spinor& lhs = (*ds[a])[tet.edges[e]];
              const Spinor& rhs = (*ds[b])[tet.edges[r]];
              const double w = a == b ? w_same : w_cross;
              if (Transport) {
                const Quat u = time_link(slab, tet.vertices[head_e], a, b) * local_link(tet, *nodes[b], head_e, head_r);
                acc += w * real_dot(lhs, u * rhs);
              } else {
                acc += w * real_dot(lhs, rhs);
              }
            }
          }
          slab_spatial += lm.edge[e][r] * acc;
        }
      }
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const Spinor& lhs = d_time[tet.vertices[a]];
          const Spinor& rhs = d_time[tet.vertices[b]];
          const double v = Transport ? real_dot(lhs, local_link(tet, hi, a, b) * rhs) : real_dot(lhs, rhs);
          slab_temporal += lm.vertex[a][b] * v;
        }
      }
    }
    out.scalar_spatial += slab_spatial;
    out.scalar_temporal += slab_temporal / dt;
    d_lo = d_hi;
  });
  return out;
}

}  // namespace

const char* to_string(ActionKind kind) noexcept {
  switch (kind) {
    case ActionKind::J: return "J";
    case ActionKind::I: return "I";
    case ActionKind::L: return "L";
  }
  return "?";
}

ActionKind parse_action_kind(std::string_view name) {
  if (name == "J") return ActionKind::J;
  if (name == "I") return ActionKind::I;
  if (name == "L") return ActionKind::L;
  throw Error(ErrorKind::UnknownCase, "action kind must be J, I or L, got '" + std::string(name) + "'");
}

std::vector<AlgebraElement> face_loop_dofs(const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                                           const EntityRef& face) {
  if (!mesh.valid(face)) throw Error(ErrorKind::InvalidRef, "face reference outside the mesh");
  const auto& s = mesh.spatial();
  if (face.kind == EntityKind::spatial_face) {
    const auto& f = s.face(face.index);
    std::vector<AlgebraElement> xs(3);
    for (int k = 0; k < 3; ++k) {
      const AlgebraElement& a = field.spatial(f.edges[k], face.time);
      xs[k] = f.edge_signs[k] > 0 ? a : -a;
    }
    return xs;
  }
  if (face.kind == EntityKind::temporal_face) {
    const auto& e = s.edge(face.index);
    const int up = mesh.next(face.time);
    return {field.spatial(face.index, face.time), field.temporal(e.target, face.time), -field.spatial(face.index, up),
            -field.temporal(e.origin, face.time)};
  }
  throw Error(ErrorKind::InvalidRef, "loop curvature lives on faces");
}

GroupElement spatial_curvature(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, std::int64_t face, int tau,
                               FaceLoop loop) {
  const auto xs = face_loop_dofs(field, mesh, {EntityKind::spatial_face, face, tau});
  return GroupElement(loop_product(xs, loop));
}

GroupElement temporal_curvature(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, std::int64_t edge,
                                int tau, FaceLoop loop) {
  const auto xs = face_loop_dofs(field, mesh, {EntityKind::temporal_face, edge, tau});
  return GroupElement(loop_product(xs, loop));
}

JCurvature j_curvature_dofs(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass) {
  check_shapes(field, mesh, mass);
  const auto& s = mesh.spatial();
  const std::int64_t nf = s.num_faces();
  const std::int64_t ne = s.num_edges();
  JCurvature out;
  out.spatial.resize(nf * mesh.nt());
  out.temporal.resize(ne * mesh.nt());
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    for (std::int64_t f = 0; f < nf; ++f) {
      const auto xs = face_loop_dofs(field, mesh, {EntityKind::spatial_face, f, tau});
      const auto& c = mass.constants.spatial[f];
      AlgebraElement j = xs[0] + xs[1] + xs[2];
      for (int k = 0; k < 3; ++k) j += c[k] * commutator(xs[k], xs[(k + 1) % 3]);
      out.spatial[tau * nf + f] = j;
    }
    for (std::int64_t e = 0; e < ne; ++e) {
      const auto xs = face_loop_dofs(field, mesh, {EntityKind::temporal_face, e, tau});
      const auto& c = mass.constants.temporal[e];
      AlgebraElement j = xs[0] + xs[1] + xs[2] + xs[3];
      for (int k = 0; k < 4; ++k) j += c[k] * commutator(xs[k], xs[(k + 1) % 4]);
      out.temporal[tau * ne + e] = j;
    }
  }
  return out;
}

ActionBreakdown action_J(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass) {
  const JCurvature j = j_curvature_dofs(field, mesh, mass);
  const auto& s = mesh.spatial();
  const std::int64_t nf = s.num_faces();
  const std::int64_t ne = s.num_edges();
  const double dt = mesh.dt();

  // Re tr(X Y^H) = (1/2) x . y, so each block is half the sum over components
  // of the scalar Kronecker form.
  auto components = [](std::span<const AlgebraElement> xs) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), 3);
    for (std::size_t r = 0; r < xs.size(); ++r) {
      for (int c = 0; c < 3; ++c) m(static_cast<Eigen::Index>(r), c) = xs[r][c];
    }
    return m;
  };
  auto pair = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& my) { return 0.5 * x.cwiseProduct(my).sum(); };

  ActionBreakdown out;
  const auto& ms = mass.faces_spatial.spatial();
  std::span<const AlgebraElement> js(j.spatial);
  Eigen::MatrixXd x_lo = components(js.subspan(0, nf));
  const Eigen::MatrixXd x_first = x_lo;
  Eigen::MatrixXd m_lo = ms * x_lo;
  const Eigen::MatrixXd m_first = m_lo;
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    const int up = mesh.next(tau);
    Eigen::MatrixXd x_hi = up == 0 ? x_first : components(js.subspan(up * nf, nf));
    Eigen::MatrixXd m_hi = up == 0 ? m_first : Eigen::MatrixXd(ms * x_hi);
    out.spatial += dt / 3.0 * (pair(x_lo, m_lo) + pair(x_hi, m_hi)) + dt / 6.0 * (pair(x_lo, m_hi) + pair(x_hi, m_lo));
    x_lo = std::move(x_hi);
    m_lo = std::move(m_hi);
  }

  const auto& mt = mass.faces_temporal.spatial();
  std::span<const AlgebraElement> jt(j.temporal);
  for (int tau = 0; tau < mesh.nt(); ++tau) {
    const Eigen::MatrixXd x = components(jt.subspan(tau * ne, ne));
    out.temporal += pair(x, mt * x) / dt;
  }
  return out;
}

ActionBreakdown action_I(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass,
                         PrismTerms* per_prism) {
  return loop_action<false>(field, mesh, mass, per_prism);
}

ActionBreakdown action_L(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const MassData& mass,
                         PrismTerms* per_prism) {
  return loop_action<true>(field, mesh, mass, per_prism);
}

ActionBreakdown action(ActionKind kind, const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                       const MassData& mass) {
  switch (kind) {
    case ActionKind::J: return action_J(field, mesh, mass);
    case ActionKind::I: return action_I(field, mesh, mass);
    case ActionKind::L: return action_L(field, mesh, mass);
  }
  throw Error(ErrorKind::UnknownCase, "unknown action kind");
}

ActionBreakdown scalar_action_L(const ScalarField& phi, const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                                const MassData& mass) {
  return scalar_action<true>(phi, field, mesh, mass);
}

ActionBreakdown scalar_action_F(const ScalarField& phi, const DiscreteGaugeField& field, const SpacetimeMesh& mesh,
                                const MassData& mass) {
  return scalar_action<false>(phi, field, mesh, mass);
}

double continuum_action(int case_id) {
  switch (case_id) {
    case 1:
    case 2: return 1.0;
    case 3: return 0.5 + 1.0 / (8.0 * std::pow(2.0 * std::numbers::pi, 4));
    case 4: return 0.5;
    default: throw Error(ErrorKind::UnknownCase, "test cases are 1..4, got " + std::to_string(case_id));
  }
}

double action_differential_fd(ActionKind kind, const DiscreteGaugeField& field, const DiscreteGaugeField& direction,
                              const SpacetimeMesh& mesh, const MassData& mass, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidSize, "finite-difference step must be positive");
  const double plus = action(kind, field.axpy(step, direction), mesh, mass).gauge();
  const double minus = action(kind, field.axpy(-step, direction), mesh, mass).gauge();
  return (plus - minus) / (2.0 * step);
}

Mat2 loop_differential(const DiscreteGaugeField& field, const SpacetimeMesh& mesh, const EntityRef& face,
                       const DiscreteGaugeField& direction) {
  const auto xs = face_loop_dofs(field, mesh, face);
  const auto dxs = face_loop_dofs(direction, mesh, face);
  const Quat f = loop_product(xs, {});
  if (std::abs(2.0 * f.w + 2.0) <= 1e-9) {
    throw Error(ErrorKind::BranchAmbiguity, "loop holonomy is too close to -1");
  }
  std::vector<AlgebraTangent> chain(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) chain[k] = {xs[k], dxs[k]};
  const AlgebraTangent w = bch_chain(chain, kLoopBchOrder);
  return f.matrix() * dexp(w.value, w.tangent, kLoopDexpOrder).matrix();
}

}  // namespace sgt
