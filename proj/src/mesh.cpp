#include "sgt/mesh.hpp"

#include <ostream>
#include <string>

#include "sgt/error.hpp"

namespace sgt {

namespace {

constexpr std::array<std::array<std::int8_t, 8>, 8> make_face_lookup() {
  std::array<std::array<std::int8_t, 8>, 8> table{};
  for (auto& row : table) row.fill(-1);
  for (std::size_t k = 0; k < kFaceChains.size(); ++k) {
    table[kFaceChains[k][0]][kFaceChains[k][1]] = static_cast<std::int8_t>(k);
  }
  return table;
}

constexpr auto kFaceLookup = make_face_lookup();

constexpr int permutation_sign(const std::array<std::uint8_t, 3>& p) {
  int inversions = 0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) inversions += p[a] > p[b] ? 1 : 0;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

Vec3 offset_vector(std::uint8_t mask) {
  return {static_cast<double>(mask & 1), static_cast<double>((mask >> 1) & 1), static_cast<double>((mask >> 2) & 1)};
}

int wrap(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

const char* to_string(EntityKind kind) noexcept {
  switch (kind) {
    case EntityKind::vertex: return "vertex";
    case EntityKind::spatial_edge: return "spatial_edge";
    case EntityKind::temporal_edge: return "temporal_edge";
    case EntityKind::spatial_face: return "spatial_face";
    case EntityKind::temporal_face: return "temporal_face";
    case EntityKind::tetrahedron: return "tetrahedron";
    case EntityKind::prism: return "prism";
  }
  return "unknown";
}

SpatialMesh::SpatialMesh(int n) : n_(n) {
  if (n < 2) throw Error(ErrorKind::InvalidSize, "spatial mesh needs N >= 2, got " + std::to_string(n));
  const std::int64_t nv = num_vertices();
  if (nv * 12 > std::int64_t{0x7fffffff}) throw Error(ErrorKind::InvalidSize, "N too large for 32-bit indices");

  auto shifted = [this](int v, std::uint8_t mask) {
    const LatticePoint p = coordinates(v);
    return vertex_at(p.x + (mask & 1), p.y + ((mask >> 1) & 1), p.z + ((mask >> 2) & 1));
  };

  edges_.resize(7 * nv);
  faces_.resize(12 * nv);
  tets_.resize(6 * nv);
  for (int v = 0; v < nv; ++v) {
    for (std::uint8_t s = 1; s <= 7; ++s) {
      edges_[edge_index(v, s)] = Edge{v, shifted(v, s), s};
    }
    for (std::size_t k = 0; k < kFaceChains.size(); ++k) {
      const auto [s1, s2] = kFaceChains[k];
      const int v1 = shifted(v, s1);
      Face& f = faces_[12 * v + k];
      f.vertices = {v, v1, shifted(v, s2)};
      f.edges = {edge_index(v, s1), edge_index(v1, static_cast<std::uint8_t>(s2 ^ s1)), edge_index(v, s2)};
      f.edge_signs = {1, 1, -1};
    }
    for (std::size_t p = 0; p < kTetPermutations.size(); ++p) {
      const auto& perm = kTetPermutations[p];
      std::array<std::uint8_t, 4> masks{};
      masks[1] = static_cast<std::uint8_t>(1u << perm[0]);
      masks[2] = static_cast<std::uint8_t>(masks[1] | (1u << perm[1]));
      masks[3] = 7;
      Tet& t = tets_[6 * v + p];
      for (int a = 0; a < 4; ++a) t.vertices[a] = masks[a] == 0 ? v : shifted(v, masks[a]);
      for (int s = 0; s < 6; ++s) {
        const auto [a, b] = kTetEdges[s];
        t.edges[s] = edge_index(t.vertices[a], static_cast<std::uint8_t>(masks[b] ^ masks[a]));
      }
      for (int k = 0; k < 4; ++k) {
        const auto [a, b, c] = kTetFaces[k];
        t.faces[k] = face_index(t.vertices[a], static_cast<std::uint8_t>(masks[b] ^ masks[a]),
                                static_cast<std::uint8_t>(masks[c] ^ masks[a]));
      }
      t.orientation = static_cast<std::int8_t>(permutation_sign(perm));
      t.shape = static_cast<std::uint8_t>(p);
    }
  }

  face_tets_.assign(faces_.size(), {-1, -1});
  for (std::int64_t t = 0; t < num_tets(); ++t) {
    for (int f : tets_[t].faces) {
      auto& slot = face_tets_[f];
      if (slot[0] < 0) {
        slot[0] = static_cast<std::int32_t>(t);
      } else {
        slot[1] = static_cast<std::int32_t>(t);
      }
    }
  }
}

int SpatialMesh::vertex_at(int x, int y, int z) const {
  return (wrap(x, n_) * n_ + wrap(y, n_)) * n_ + wrap(z, n_);
}

LatticePoint SpatialMesh::coordinates(int vertex) const {
  return {vertex / (n_ * n_), (vertex / n_) % n_, vertex % n_};
}

Vec3 SpatialMesh::position(int vertex) const {
  const LatticePoint p = coordinates(vertex);
  return h() * Vec3(p.x, p.y, p.z);
}

int SpatialMesh::face_index(int anchor, std::uint8_t s1, std::uint8_t s2) const {
  const int k = kFaceLookup[s1 & 7][s2 & 7];
  if (k < 0) throw Error(ErrorKind::InvalidRef, "not a face chain");
  return 12 * anchor + k;
}

Vec3 SpatialMesh::edge_vector(std::int64_t e) const { return h() * offset_vector(edges_[e].offset); }

std::array<Vec3, 4> SpatialMesh::tet_positions(std::int64_t t) const {
  const Tet& tet = tets_[t];
  const Vec3 base = position(tet.vertices[0]);
  const auto& perm = kTetPermutations[tet.shape];
  std::array<Vec3, 4> p{base, base, base, base};
  p[1][perm[0]] += h();
  p[2] = p[1];
  p[2][perm[1]] += h();
  p[3] = base + Vec3::Constant(h());
  return p;
}

std::array<Vec3, 3> SpatialMesh::face_positions(std::int64_t f) const {
  const Face& face = faces_[f];
  const Vec3 base = position(face.vertices[0]);
  const auto [s1, s2] = kFaceChains[f % 12];
  return {base, base + h() * offset_vector(s1), base + h() * offset_vector(s2)};
}

SpacetimeMesh::SpacetimeMesh(int n, int nt) : spatial_(n), nt_(nt) {
  if (nt < 2) throw Error(ErrorKind::InvalidSize, "spacetime mesh needs N_t >= 2, got " + std::to_string(nt));
}

bool SpacetimeMesh::valid(const EntityRef& ref) const {
  if (ref.time < 0 || ref.time >= nt_ || ref.index < 0) return false;
  switch (ref.kind) {
    case EntityKind::vertex:
    case EntityKind::temporal_edge: return ref.index < spatial_.num_vertices();
    case EntityKind::spatial_edge:
    case EntityKind::temporal_face: return ref.index < spatial_.num_edges();
    case EntityKind::spatial_face: return ref.index < spatial_.num_faces();
    case EntityKind::tetrahedron:
    case EntityKind::prism: return ref.index < spatial_.num_tets();
  }
  return false;
}

std::vector<SignedRef> SpacetimeMesh::incidence(const EntityRef& ref) const {
  if (!valid(ref)) throw Error(ErrorKind::InvalidRef, "entity reference out of range");
  const int tau = ref.time;
  switch (ref.kind) {
    case EntityKind::spatial_edge: {
      const auto& e = spatial_.edge(ref.index);
      return {{{EntityKind::vertex, e.target, tau}, 1}, {{EntityKind::vertex, e.origin, tau}, -1}};
    }
    case EntityKind::temporal_edge:
      return {{{EntityKind::vertex, ref.index, next(tau)}, 1}, {{EntityKind::vertex, ref.index, tau}, -1}};
    case EntityKind::spatial_face: {
      const auto& f = spatial_.face(ref.index);
      std::vector<SignedRef> out;
      for (int k = 0; k < 3; ++k) out.push_back({{EntityKind::spatial_edge, f.edges[k], tau}, f.edge_signs[k]});
      return out;
    }
    case EntityKind::temporal_face: {
      const auto& e = spatial_.edge(ref.index);
      return {{{EntityKind::spatial_edge, ref.index, tau}, 1},
              {{EntityKind::temporal_edge, e.target, tau}, 1},
              {{EntityKind::spatial_edge, ref.index, next(tau)}, -1},
              {{EntityKind::temporal_edge, e.origin, tau}, -1}};
    }
    case EntityKind::tetrahedron: {
      const auto& t = spatial_.tet(ref.index);
      std::vector<SignedRef> out;
      for (int k = 0; k < 4; ++k) {
        const int sign = (k % 2 == 0 ? 1 : -1) * t.orientation;
        out.push_back({{EntityKind::spatial_face, t.faces[k], tau}, sign});
      }
      return out;
    }
    case EntityKind::vertex:
    case EntityKind::prism: break;
  }
  throw Error(ErrorKind::InvalidRef, std::string("incidence is not defined for ") + to_string(ref.kind));
}

EntityRef SpacetimeMesh::distinguished_point(const EntityRef& face) const {
  if (!valid(face)) throw Error(ErrorKind::InvalidRef, "entity reference out of range");
  if (face.kind == EntityKind::spatial_face) {
    return {EntityKind::vertex, spatial_.face(face.index).vertices[0], face.time};
  }
  if (face.kind == EntityKind::temporal_face) {
    return {EntityKind::vertex, spatial_.edge(face.index).origin, face.time};
  }
  throw Error(ErrorKind::InvalidRef, "distinguished points exist only for faces");
}

ConnectingEdge SpacetimeMesh::connecting_edge(const EntityRef& v, const EntityRef& w,
                                              std::optional<std::int64_t> tet) const {
  if (v.kind != EntityKind::vertex || w.kind != EntityKind::vertex || !valid(v) || !valid(w)) {
    throw Error(ErrorKind::InvalidRef, "connecting_edge takes two vertex references");
  }
  if (v == w) return {v, 1, true};

  if (v.index == w.index) {
    if (w.time == next(v.time)) return {{EntityKind::temporal_edge, v.index, v.time}, 1, false};
    if (v.time == next(w.time)) return {{EntityKind::temporal_edge, v.index, w.time}, -1, false};
    throw Error(ErrorKind::NotAdjacent, "vertex copies are not time-adjacent");
  }
  if (v.time != w.time) throw Error(ErrorKind::NotAdjacent, "vertices at different time nodes");

  auto search_cell = [&](const SpatialMesh::Tet& t) -> std::optional<ConnectingEdge> {
    for (int s = 0; s < 6; ++s) {
      const auto [a, b] = kTetEdges[s];
      if (t.vertices[a] == v.index && t.vertices[b] == w.index) {
        return ConnectingEdge{{EntityKind::spatial_edge, t.edges[s], v.time}, 1, false};
      }
      if (t.vertices[b] == v.index && t.vertices[a] == w.index) {
        return ConnectingEdge{{EntityKind::spatial_edge, t.edges[s], v.time}, -1, false};
      }
    }
    return std::nullopt;
  };

  if (tet) {
    if (*tet < 0 || *tet >= spatial_.num_tets()) throw Error(ErrorKind::InvalidRef, "tetrahedron out of range");
    if (auto found = search_cell(spatial_.tet(*tet))) return *found;
    throw Error(ErrorKind::NotAdjacent, "vertices are not joined by an edge of the given tetrahedron");
  }
  for (std::uint8_t s = 1; s <= 7; ++s) {
    const int forward = spatial_.edge_index(static_cast<int>(v.index), s);
    if (spatial_.edge(forward).target == w.index) return {{EntityKind::spatial_edge, forward, v.time}, 1, false};
    const int backward = spatial_.edge_index(static_cast<int>(w.index), s);
    if (spatial_.edge(backward).target == v.index) return {{EntityKind::spatial_edge, backward, v.time}, -1, false};
  }
  throw Error(ErrorKind::NotAdjacent, "vertices share no mesh edge");
}

void SpacetimeMesh::dump(std::ostream& out) const {
  out << "# sgt mesh N=" << n() << " Nt=" << nt_ << "\n";
  const auto& s = spatial_;
  for (std::int64_t v = 0; v < s.num_vertices(); ++v) {
    const auto p = s.coordinates(static_cast<int>(v));
    out << "vertex " << v << ' ' << p.x << ' ' << p.y << ' ' << p.z << '\n';
  }
  for (std::int64_t e = 0; e < s.num_edges(); ++e) {
    const auto& edge = s.edge(e);
    out << "edge " << e << ' ' << edge.origin << ' ' << edge.target << ' ' << int(edge.offset) << '\n';
  }
  for (std::int64_t f = 0; f < s.num_faces(); ++f) {
    const auto& face = s.face(f);
    out << "face " << f;
    for (int k = 0; k < 3; ++k) out << ' ' << face.vertices[k];
    for (int k = 0; k < 3; ++k) out << ' ' << face.edges[k] << ':' << int(face.edge_signs[k]);
    out << '\n';
  }
  for (std::int64_t t = 0; t < s.num_tets(); ++t) {
    const auto& tet = s.tet(t);
    out << "tet " << t;
    for (int k = 0; k < 4; ++k) out << ' ' << tet.vertices[k];
    out << ' ' << int(tet.orientation) << '\n';
  }
}

}  // namespace sgt
