#include "flatband/decomp.hpp"

#include <algorithm>
#include <string>

namespace flatband {

Decomposition::Decomposition(std::vector<FaceId> faces) : faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
}

bool Decomposition::contains(FaceId f) const { return std::binary_search(faces_.begin(), faces_.end(), f); }

Decomposition Decomposition::with(FaceId f) const {
  auto faces = faces_;
  faces.push_back(f);
  return Decomposition(std::move(faces));
}

Decomposition Decomposition::without(FaceId f) const {
  auto faces = faces_;
  faces.erase(std::remove(faces.begin(), faces.end(), f), faces.end());
  return Decomposition(std::move(faces));
}

VerifyReport verify_decomposition(const CubicTorus& torus, const Decomposition& d) {
  VerifyReport rep;
  rep.face_count = d.size();
  rep.expected_faces = torus.num_edges() / 4;
  std::vector<int> cover(torus.num_edges(), 0);
  for (FaceId f : d.faces()) {
    if (f >= torus.num_faces()) throw Error(ErrorKind::InvalidArgument, "face id out of range");
    for (EdgeId e : torus.face_edges(CubicTorus::face(f))) ++cover[e];
  }
  for (EdgeId e = 0; e < torus.num_edges(); ++e) {
    if (cover[e] == 0) rep.uncovered.push_back(e);
    else if (cover[e] > 1) rep.multiply_covered.push_back(e);
  }
  rep.valid = rep.uncovered.empty() && rep.multiply_covered.empty();
  return rep;
}

ProfileReport vertex_axis_profile(const CubicTorus& torus, const Decomposition& d) {
  std::vector<std::array<int, 3>> counts(torus.num_vertices(), {0, 0, 0});
  for (FaceId f : d.faces()) {
    const Face face = CubicTorus::face(f);
    for (VertexId v : torus.face_vertices(face)) ++counts[v][static_cast<int>(face.plane)];
  }
  ProfileReport rep;
  rep.vertices_checked = torus.num_vertices();
  for (VertexId v = 0; v < torus.num_vertices(); ++v)
    if (counts[v] != std::array<int, 3>{1, 1, 1}) rep.violations.push_back({v, counts[v]});
  rep.ok = rep.violations.empty();
  return rep;
}

Decomposition tower_decomposition(const CubicTorus& torus, std::array<int, 3> phase) {
  for (int& p : phase) p &= 1;
  const auto [a, b, c] = phase;
  std::vector<FaceId> faces;
  faces.reserve(torus.num_edges() / 4);
  for (VertexId v = 0; v < torus.num_vertices(); ++v) {
    const auto [x, y, z] = torus.coords(v);
    if ((x & 1) == a && (y & 1) == b) faces.push_back(CubicTorus::face_id({v, Plane::XY}));
    if ((y & 1) == 1 - b && (z & 1) == c) faces.push_back(CubicTorus::face_id({v, Plane::YZ}));
    if ((z & 1) == 1 - c && (x & 1) == 1 - a) faces.push_back(CubicTorus::face_id({v, Plane::ZX}));
  }
  return Decomposition(std::move(faces));
}

namespace {

Axis next_axis(Axis a) { return static_cast<Axis>((static_cast<int>(a) + 1) % 3); }

// Vertex with coordinate h along `axis`, u along next(axis), v along next(next(axis)).
VertexId column_vertex(const CubicTorus& torus, Axis axis, int h, int u, int v) {
  std::array<int, 3> c{};
  const Axis p = next_axis(axis), q = next_axis(p);
  c[static_cast<int>(axis)] = h;
  c[static_cast<int>(p)] = u;
  c[static_cast<int>(q)] = v;
  return torus.vertex(c[0], c[1], c[2]);
}

}  // namespace

std::array<std::vector<FaceId>, 2> column_patterns(const CubicTorus& torus, const Column& col) {
  const Axis k = col.axis;
  const Axis q = next_axis(next_axis(k));
  const Plane wall_ac = static_cast<Plane>(static_cast<int>(k));  // (axis, next(axis))
  const Plane wall_bd = static_cast<Plane>(static_cast<int>(q));  // (next(next(axis)), axis)
  const int length = torus.spec().extent(k);
  std::array<std::vector<FaceId>, 2> out;
  for (int h = 0; h < length; ++h) {
    const FaceId a = CubicTorus::face_id({column_vertex(torus, k, h, col.u, col.v), wall_ac});
    const FaceId c = CubicTorus::face_id({column_vertex(torus, k, h, col.u, col.v + 1), wall_ac});
    const FaceId b = CubicTorus::face_id({column_vertex(torus, k, h, col.u, col.v), wall_bd});
    const FaceId d = CubicTorus::face_id({column_vertex(torus, k, h, col.u + 1, col.v), wall_bd});
    auto& ac = out[h % 2 == 0 ? 0 : 1];
    auto& bd = out[h % 2 == 0 ? 1 : 0];
    ac.push_back(a);
    ac.push_back(c);
    bd.push_back(b);
    bd.push_back(d);
  }
  return out;
}

ColumnState column_state(const CubicTorus& torus, const Decomposition& d, const Column& col) {
  const auto patterns = column_patterns(torus, col);
  auto all_in = [&](const std::vector<FaceId>& fs) {
    return std::all_of(fs.begin(), fs.end(), [&](FaceId f) { return d.contains(f); });
  };
  if (all_in(patterns[0])) return ColumnState::Up;
  if (all_in(patterns[1])) return ColumnState::Down;
  return ColumnState::NotRotatable;
}

Decomposition rotate_column(const CubicTorus& torus, const Decomposition& d, const Column& col) {
  const auto state = column_state(torus, d, col);
  if (state == ColumnState::NotRotatable)
    throw Error(ErrorKind::InvalidArgument, std::string("column along ") + to_string(col.axis) + " at (" +
                                                std::to_string(col.u) + "," + std::to_string(col.v) +
                                                ") is not in a rotatable state");
  const auto patterns = column_patterns(torus, col);
  const auto& drop = patterns[state == ColumnState::Up ? 0 : 1];
  const auto& add = patterns[state == ColumnState::Up ? 1 : 0];
  std::vector<FaceId> faces;
  faces.reserve(d.size());
  for (FaceId f : d.faces())
    if (std::find(drop.begin(), drop.end(), f) == drop.end()) faces.push_back(f);
  faces.insert(faces.end(), add.begin(), add.end());
  return Decomposition(std::move(faces));
}

std::vector<Column> rotatable_columns(const CubicTorus& torus, const Decomposition& d, Axis axis) {
  const Axis p = next_axis(axis), q = next_axis(p);
  std::vector<Column> out;
  for (int u = 0; u < torus.spec().extent(p); ++u)
    for (int v = 0; v < torus.spec().extent(q); ++v) {
      const Column col{axis, u, v};
      if (column_state(torus, d, col) != ColumnState::NotRotatable) out.push_back(col);
    }
  return out;
}

ExactCoverProblem decomposition_problem(const CubicTorus& torus) {
  std::vector<std::vector<std::uint32_t>> options(torus.num_faces());
  for (FaceId f = 0; f < torus.num_faces(); ++f) {
    const auto edges = torus.face_edges(CubicTorus::face(f));
    options[f].assign(edges.begin(), edges.end());
  }
  return ExactCoverProblem(torus.num_edges(), std::move(options));
}

CountResult count_decompositions(const CubicTorus& torus, const SearchBudget& budget, unsigned threads) {
  const auto problem = decomposition_problem(torus);
  const auto res = count_exact_covers(problem, budget, threads);
  return {res.count, res.stats.nodes, res.stats.seconds, res.stats.completed};
}

SearchStats enumerate_decompositions(const CubicTorus& torus, std::size_t limit,
                                     const std::function<bool(const Decomposition&)>& visit,
                                     const SearchBudget& budget) {
  const auto problem = decomposition_problem(torus);
  std::size_t emitted = 0;
  if (limit == 0) return {};
  return enumerate_exact_covers(
      problem,
      [&](std::span<const std::uint32_t> chosen) {
        Decomposition d(std::vector<FaceId>(chosen.begin(), chosen.end()));
        if (!visit(d)) return false;
        return ++emitted < limit;
      },
      budget);
}

std::vector<Decomposition> enumerate_decompositions(const CubicTorus& torus, std::size_t limit) {
  std::vector<Decomposition> out;
  enumerate_decompositions(torus, limit, [&](const Decomposition& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

}  // namespace flatband
