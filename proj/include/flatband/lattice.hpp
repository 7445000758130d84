#pragma once

// The cubic torus G = C_L1 x C_L2 x C_L3, its faces (4-cycles), incidence
// and hopping matrices, and the signed kernel vectors attached to even cycles.

#include "flatband/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flatband {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using FaceId = std::uint32_t;

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

// Orientation of a face. The plane is spanned by (first_axis, second_axis).
enum class Plane : std::uint8_t { XY = 0, YZ = 1, ZX = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};
inline constexpr std::array<Plane, 3> kPlanes{Plane::XY, Plane::YZ, Plane::ZX};

constexpr Axis first_axis(Plane p) { return static_cast<Axis>(static_cast<int>(p)); }
constexpr Axis second_axis(Plane p) { return static_cast<Axis>((static_cast<int>(p) + 1) % 3); }
constexpr Axis normal_axis(Plane p) { return static_cast<Axis>((static_cast<int>(p) + 2) % 3); }
// The plane whose normal is `a`.
constexpr Plane plane_normal_to(Axis a) { return static_cast<Plane>((static_cast<int>(a) + 1) % 3); }

const char* to_string(Axis a);
const char* to_string(Plane p);
Plane parse_plane(const std::string& name);

// Lattice extents, validated and stored sorted (L1 <= L2 <= L3).
class TorusSpec {
 public:
  // Throws Error(InvalidArgument) unless every extent is even and >= 4.
  TorusSpec(int a, int b, int c);

  int L1() const noexcept { return ext_[0]; }
  int L2() const noexcept { return ext_[1]; }
  int L3() const noexcept { return ext_[2]; }
  int extent(Axis a) const noexcept { return ext_[static_cast<int>(a)]; }
  const std::array<int, 3>& extents() const noexcept { return ext_; }

  // "4x4x6"
  std::string label() const;

  bool operator==(const TorusSpec&) const = default;

 private:
  std::array<int, 3> ext_;
};

struct Edge {
  VertexId base;
  Axis axis;
  bool operator==(const Edge&) const = default;
};

// A unit square: the corner `anchor` together with anchor + first_axis,
// anchor + first_axis + second_axis and anchor + second_axis.
struct Face {
  VertexId anchor;
  Plane plane;
  bool operator==(const Face&) const = default;
};

struct SignedEntry {
  EdgeId edge;
  int sign;  // +1 or -1
  bool operator==(const SignedEntry&) const = default;
};

// Kernel vector of a face, nonzero on its four edges (traversal order).
struct FaceState {
  Face face;
  std::array<SignedEntry, 4> entries;
};

// Immutable cubic torus with canonical numbering:
//   vertex id = x + L1 * (y + L2 * z)
//   edge id   = 3 * base vertex + axis   (edge runs from base to base + axis)
//   face id   = 3 * anchor vertex + plane
class CubicTorus {
 public:
  explicit CubicTorus(const TorusSpec& spec);

  const TorusSpec& spec() const noexcept { return spec_; }
  std::size_t num_vertices() const noexcept { return nv_; }
  std::size_t num_edges() const noexcept { return 3 * nv_; }
  std::size_t num_faces() const noexcept { return 3 * nv_; }

  std::array<int, 3> coords(VertexId v) const;
  VertexId vertex(int x, int y, int z) const;  // coordinates taken modulo the extents
  VertexId shift(VertexId v, Axis a, int delta) const;
  int parity(VertexId v) const;

  static EdgeId edge_id(VertexId base, Axis a) { return 3 * base + static_cast<EdgeId>(a); }
  static Edge edge(EdgeId e) { return {e / 3, static_cast<Axis>(e % 3)}; }
  std::array<VertexId, 2> endpoints(EdgeId e) const;
  std::optional<EdgeId> edge_between(VertexId u, VertexId v) const;
  // The six edges incident to v, ordered (+X, +Y, +Z, -X, -Y, -Z).
  std::array<EdgeId, 6> incident_edges(VertexId v) const;

  static FaceId face_id(const Face& f) { return 3 * f.anchor + static_cast<FaceId>(f.plane); }
  static Face face(FaceId id) { return {id / 3, static_cast<Plane>(id % 3)}; }
  // Corners in traversal order, starting at the anchor.
  std::array<VertexId, 4> face_vertices(const Face& f) const;
  // Edges in traversal order: (v0,v1), (v1,v2), (v2,v3), (v3,v0).
  std::array<EdgeId, 4> face_edges(const Face& f) const;
  const std::array<FaceId, 4>& faces_of_edge(EdgeId e) const { return faces_of_edge_[e]; }

  // Edges sharing exactly one endpoint with e (the 10 neighbours in L(G)).
  std::array<EdgeId, 10> line_graph_neighbors(EdgeId e) const;

 private:
  TorusSpec spec_;
  std::size_t nv_;
  std::vector<std::array<FaceId, 4>> faces_of_edge_;
};

CubicTorus build_torus(const TorusSpec& spec);

// |V| x |E| 0/1 incidence matrix B.
IntegerMatrix incidence_matrix(const CubicTorus& torus);
// T = B^t B (diagonal 2, off-diagonal 1 for edges sharing a vertex).
IntegerMatrix hopping_matrix(const CubicTorus& torus);
// Adjacency matrix of L(G), i.e. the off-diagonal part of T.
IntegerMatrix line_graph_adjacency(const CubicTorus& torus);

// All 3|V| faces in face-id order.
std::vector<Face> enumerate_faces(const CubicTorus& torus);

// Signed kernel vector of a closed walk in G (consecutive vertices adjacent,
// last vertex adjacent to the first). Each edge is oriented from its even to
// its odd endpoint; the entry is +1 when the walk traverses it that way.
std::vector<SignedEntry> cycle_state(const CubicTorus& torus, std::span<const VertexId> walk);

FaceState face_state(const CubicTorus& torus, const Face& face);

// Dense |E|-vector of a sparse signed state.
std::vector<std::int64_t> to_dense(const CubicTorus& torus, std::span<const SignedEntry> entries);

// B * v for a dense edge vector.
std::vector<std::int64_t> apply_incidence(const CubicTorus& torus, std::span<const std::int64_t> v);

}  // namespace flatband
