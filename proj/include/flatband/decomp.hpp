#pragma once

// 4-cycle decompositions of the cubic torus: the periodic tower construction,
// column rotations, exhaustive exact-cover counting/enumeration and the
// per-plane reduction to dense 2x2 packings on the square torus.

#include "flatband/exact_cover.hpp"
#include "flatband/lattice.hpp"
#include "flatband/types.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace flatband {

// A set of faces, stored as sorted unique face ids. Identity is the face set.
class Decomposition {
 public:
  Decomposition() = default;
  explicit Decomposition(std::vector<FaceId> faces);

  const std::vector<FaceId>& faces() const noexcept { return faces_; }
  std::size_t size() const noexcept { return faces_.size(); }
  bool contains(FaceId f) const;

  Decomposition with(FaceId f) const;
  Decomposition without(FaceId f) const;

  auto operator<=>(const Decomposition&) const = default;

 private:
  std::vector<FaceId> faces_;
};

struct VerifyReport {
  bool valid = false;
  std::size_t face_count = 0;
  std::size_t expected_faces = 0;
  std::vector<EdgeId> uncovered;          // edges in no face
  std::vector<EdgeId> multiply_covered;   // edges in two or more faces
};

VerifyReport verify_decomposition(const CubicTorus& torus, const Decomposition& d);

struct VertexViolation {
  VertexId vertex;
  std::array<int, 3> per_plane;  // number of incident faces of plane XY, YZ, ZX
};

struct ProfileReport {
  bool ok = false;
  std::size_t vertices_checked = 0;
  std::vector<VertexViolation> violations;
};

// Checks that each vertex lies in exactly one face of every orientation.
ProfileReport vertex_axis_profile(const CubicTorus& torus, const Decomposition& d);

// Interwoven towers with period 2 in every direction. `phase` picks one of
// the eight translates: XY faces sit at (x, y) = (a, b) mod 2, YZ faces at
// (y, z) = (1-b, c) and ZX faces at (z, x) = (1-c, 1-a), for phase (a, b, c).
Decomposition tower_decomposition(const CubicTorus& torus, std::array<int, 3> phase = {0, 0, 0});

// The column of unit cells running along `axis` whose transverse corner has
// coordinate `u` along next(axis) and `v` along next(next(axis)).
// Its faces at height h are the four walls
//   a_h, c_h : plane (axis, next(axis))        at transverse offsets v, v+1
//   b_h, d_h : plane (next(next(axis)), axis)  at transverse offsets u, u+1
struct Column {
  Axis axis;
  int u;
  int v;
  bool operator==(const Column&) const = default;
};

enum class ColumnState { Up, Down, NotRotatable };

// Up = {a_h, c_h : h even} + {b_h, d_h : h odd}; Down swaps the parities.
std::array<std::vector<FaceId>, 2> column_patterns(const CubicTorus& torus, const Column& col);
ColumnState column_state(const CubicTorus& torus, const Decomposition& d, const Column& col);

// Swaps the column between its two patterns. Error(InvalidArgument) when the
// decomposition contains neither pattern completely.
Decomposition rotate_column(const CubicTorus& torus, const Decomposition& d, const Column& col);

// All columns along `axis` that are in a rotatable state in d.
std::vector<Column> rotatable_columns(const CubicTorus& torus, const Decomposition& d, Axis axis);

struct CountResult {
  BigInt count;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  bool completed = false;
};

// Exact cover with items = edges and options = faces.
ExactCoverProblem decomposition_problem(const CubicTorus& torus);

CountResult count_decompositions(const CubicTorus& torus, const SearchBudget& budget = {}, unsigned threads = 1);

// Streams decompositions in search order until `limit` have been emitted or
// the visitor returns false. Each face set is emitted once.
SearchStats enumerate_decompositions(const CubicTorus& torus, std::size_t limit,
                                     const std::function<bool(const Decomposition&)>& visit,
                                     const SearchBudget& budget = {});
std::vector<Decomposition> enumerate_decompositions(const CubicTorus& torus, std::size_t limit);

// ---------------------------------------------------------------------------
// Dense 2x2 packings of the La x Lb square torus.

struct SquareAnchor {
  int a;
  int b;
  auto operator<=>(const SquareAnchor&) const = default;
};

// Squares occupying (a,b), (a+1,b), (a,b+1), (a+1,b+1); anchors kept sorted.
struct Packing2D {
  int La = 0;
  int Lb = 0;
  std::vector<SquareAnchor> squares;

  bool operator==(const Packing2D&) const = default;
};

// Every vertex in exactly one square (which also excludes shared vertices).
bool is_perfect_packing(const Packing2D& p);

// Faces of d parallel to `plane` at coordinate `layer` along the plane normal,
// as squares on the (first_axis, second_axis) torus.
Packing2D plane_slice(const CubicTorus& torus, const Decomposition& d, Plane plane, int layer);

inline constexpr int kDefaultPackingCap = 1024;  // max La * Lb for complete enumeration

// All perfect packings in search order. Error(CapExceeded) if La * Lb > cap.
std::vector<Packing2D> enumerate_2d_packings(int La, int Lb, int cap = kDefaultPackingCap);

// "column" = a strip of squares sharing the same a-range, shifted along b;
// "row" = a strip sharing the same b-range, shifted along a.
enum class ShiftKind { None, Column, Row };

// Witness that a packing arises from a regular configuration by shifting
// whole strips by one square in one direction.
struct PackingClass {
  bool classified = false;
  int base = -1;  // 2 * (a parity) + (b parity) of the reference strip
  ShiftKind kind = ShiftKind::None;
  std::vector<int> shifts;  // per strip, 0/1 relative to the reference strip
};

PackingClass classify_2d_packing(const Packing2D& p);

// Rebuilds the packing described by a witness (inverse of classify).
Packing2D packing_from_witness(int La, int Lb, const PackingClass& c);

// One text row per b coordinate; every cell shows the letter of the square
// covering it ('.' if none).
std::string packing_ascii(const Packing2D& p);

const char* to_string(ShiftKind k);

}  // namespace flatband
