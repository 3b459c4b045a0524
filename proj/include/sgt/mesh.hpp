#pragma once

// Periodic spacetime simplicial complex: an N^3 arrangement of unit cells,
// each split into six tetrahedra along the (0,0,0)-(1,1,1) diagonal, repeated
// at N_t uniform time nodes on [0,1) with periodic wrap in all four directions.
//
// Every simplex of the Kuhn subdivision is a chain of axis subsets
// {} < S_1 < ... < S_k of {x, y, z} anchored at a lattice vertex v: its
// vertices are v + S_1, ..., v + S_k. Entities are indexed by
// (anchor vertex, within-cell table slot):
//
//   edge  7 v + (S - 1)         S in 1..7 (bit 0 = x, bit 1 = y, bit 2 = z)
//   face 12 v + k               k indexes kFaceChains
//   tet   6 v + p               p indexes kTetPermutations
//
// with v = (x N + y) N + z. Orientations follow the chain: edges run from the
// anchor to anchor + S, faces are oriented v -> v+S_1 -> v+S_2 and their
// distinguished point is the anchor. Temporal faces e x [tau, tau+dt] are
// oriented i_tau -> j_tau -> j_{tau+dt} -> i_{tau+dt} and pointed at i_tau.

#include <Eigen/Core>

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sgt {

using Vec3 = Eigen::Vector3d;

enum class EntityKind : std::uint8_t {
  vertex,
  spatial_edge,
  temporal_edge,
  spatial_face,
  temporal_face,
  tetrahedron,
  prism,
};

const char* to_string(EntityKind kind) noexcept;

/// Spacetime entity. `index` is the spatial entity index; for temporal edges it
/// is the spatial vertex, for temporal faces the spatial edge, for prisms the
/// tetrahedron. `time` is the time node (or the slab [time, time+dt]).
struct EntityRef {
  EntityKind kind = EntityKind::vertex;
  std::int64_t index = 0;
  int time = 0;

  friend constexpr auto operator<=>(const EntityRef&, const EntityRef&) = default;
};

struct SignedRef {
  EntityRef ref;
  int sign = 1;

  friend constexpr bool operator==(const SignedRef&, const SignedRef&) = default;
};

struct LatticePoint {
  int x = 0;
  int y = 0;
  int z = 0;

  friend constexpr bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

// (S_1, S_2) pairs, one per triangle of a cell.
inline constexpr std::array<std::array<std::uint8_t, 2>, 12> kFaceChains{{
    {1, 3}, {2, 3}, {1, 5}, {4, 5}, {2, 6}, {4, 6},
    {1, 7}, {2, 7}, {3, 7}, {4, 7}, {5, 7}, {6, 7},
}};

// Axis order walked from (0,0,0) to (1,1,1).
inline constexpr std::array<std::array<std::uint8_t, 3>, 6> kTetPermutations{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

// Local vertex pairs of the six tetrahedron edges.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Local vertices of face k, which is opposite vertex k.
inline constexpr std::array<std::array<int, 3>, 4> kTetFaces{{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

/// Index into kTetEdges of the local pair {a, b}, a != b.
constexpr int tet_edge_slot(int a, int b) {
  if (a > b) std::swap(a, b);
  constexpr std::array<int, 16> table{-1, 0, 1, 2, 0, -1, 3, 4, 1, 3, -1, 5, 2, 4, 5, -1};
  return table[4 * a + b];
}

class SpatialMesh {
 public:
  struct Edge {
    std::int32_t origin;
    std::int32_t target;
    std::uint8_t offset;
  };

  struct Face {
    std::array<std::int32_t, 3> vertices;   // orientation order, vertices[0] is the distinguished point
    std::array<std::int32_t, 3> edges;      // v0->v1, v1->v2, v2->v0 as stored edges
    std::array<std::int8_t, 3> edge_signs;  // +1 if the stored edge runs along the loop
  };

  struct Tet {
    std::array<std::int32_t, 4> vertices;  // chain order
    std::array<std::int32_t, 6> edges;     // kTetEdges order, each stored p_a -> p_b
    std::array<std::int32_t, 4> faces;     // face k opposite vertex k
    std::int8_t orientation;               // sign of det(p1-p0, p2-p0, p3-p0)
    std::uint8_t shape;                    // row of kTetPermutations
  };

  /// Throws InvalidSize for n < 2.
  explicit SpatialMesh(int n);

  int n() const { return n_; }
  double h() const { return 1.0 / n_; }

  std::int64_t num_vertices() const { return static_cast<std::int64_t>(n_) * n_ * n_; }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
  std::int64_t num_faces() const { return static_cast<std::int64_t>(faces_.size()); }
  std::int64_t num_tets() const { return static_cast<std::int64_t>(tets_.size()); }

  int vertex_at(int x, int y, int z) const;
  int vertex_at(const LatticePoint& p) const { return vertex_at(p.x, p.y, p.z); }
  LatticePoint coordinates(int vertex) const;
  Vec3 position(int vertex) const;

  int edge_index(int anchor, std::uint8_t offset) const { return 7 * anchor + (offset - 1); }
  int face_index(int anchor, std::uint8_t s1, std::uint8_t s2) const;

  const Edge& edge(std::int64_t e) const { return edges_[e]; }
  const Face& face(std::int64_t f) const { return faces_[f]; }
  const Tet& tet(std::int64_t t) const { return tets_[t]; }
  std::span<const Tet> tets() const { return tets_; }

  /// Unwrapped lattice offset of an edge (components 0 or 1).
  Vec3 edge_vector(std::int64_t e) const;
  /// Vertex positions of a tetrahedron, unwrapped so the cell is contiguous.
  std::array<Vec3, 4> tet_positions(std::int64_t t) const;
  /// Vertex positions of a face in orientation order, unwrapped.
  std::array<Vec3, 3> face_positions(std::int64_t f) const;

  /// The two tetrahedra containing face f.
  const std::array<std::int32_t, 2>& face_tets(std::int64_t f) const { return face_tets_[f]; }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<Tet> tets_;
  std::vector<std::array<std::int32_t, 2>> face_tets_;
};

/// Result of connecting_edge. `identity` marks v == w (transport is 1).
struct ConnectingEdge {
  EntityRef edge;
  int sign = 1;  // +1 when the stored edge runs v -> w
  bool identity = false;
};

class SpacetimeMesh {
 public:
  /// Throws InvalidSize for n < 2 or nt < 2.
  SpacetimeMesh(int n, int nt);

  const SpatialMesh& spatial() const { return spatial_; }
  int n() const { return spatial_.n(); }
  int nt() const { return nt_; }
  double h() const { return spatial_.h(); }
  double dt() const { return 1.0 / nt_; }
  int next(int tau) const { return tau + 1 == nt_ ? 0 : tau + 1; }
  int prev(int tau) const { return tau == 0 ? nt_ - 1 : tau - 1; }

  std::int64_t num_temporal_edges() const { return spatial_.num_vertices() * nt_; }
  std::int64_t num_temporal_faces() const { return spatial_.num_edges() * nt_; }
  std::int64_t num_prisms() const { return spatial_.num_tets() * nt_; }

  bool valid(const EntityRef& ref) const;

  /// Oriented boundary of an edge, face or tetrahedron. Tetrahedron signs are
  /// relative to its positive orientation. Throws InvalidRef otherwise.
  std::vector<SignedRef> incidence(const EntityRef& ref) const;

  /// Vertex at which a face's loop curvature is located.
  EntityRef distinguished_point(const EntityRef& face) const;

  /// Mesh edge joining vertex refs v and w: same time node inside a common
  /// tetrahedron, or time-adjacent copies of one spatial vertex. With `tet`
  /// the search is restricted to that cell, which disambiguates N = 2 where
  /// two lattice edges can join the same vertex pair. Throws NotAdjacent.
  ConnectingEdge connecting_edge(const EntityRef& v, const EntityRef& w,
                                 std::optional<std::int64_t> tet = std::nullopt) const;

  /// Plain-text entity table (see README for the format).
  void dump(std::ostream& out) const;

 private:
  SpatialMesh spatial_;
  int nt_;
};

}  // namespace sgt
