#include "flatband/lattice.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace flatband;

TEST_CASE("extents are validated and sorted") {
  const TorusSpec s(6, 4, 8);
  CHECK(s.L1() == 4);
  CHECK(s.L2() == 6);
  CHECK(s.L3() == 8);
  CHECK(s.label() == "4x6x8");
  CHECK_THROWS_WITH_AS(TorusSpec(4, 3, 4), "extent must be even >= 4 (got 3)", Error);
  CHECK_THROWS_AS(TorusSpec(2, 4, 4), Error);
  CHECK_THROWS_AS(TorusSpec(4, 4, -4), Error);
  try {
    TorusSpec(5, 4, 4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("numbering round trips") {
  const CubicTorus t{TorusSpec(4, 6, 8)};
  for (VertexId v = 0; v < t.num_vertices(); ++v) {
    const auto [x, y, z] = t.coords(v);
    CHECK(t.vertex(x, y, z) == v);
    CHECK(t.vertex(x + 4, y - 6, z + 16) == v);
  }
  for (EdgeId e = 0; e < t.num_edges(); ++e) {
    const Edge ed = CubicTorus::edge(e);
    CHECK(CubicTorus::edge_id(ed.base, ed.axis) == e);
    const auto ends = t.endpoints(e);
    CHECK(ends[1] == t.shift(ends[0], ed.axis, 1));
    CHECK(t.edge_between(ends[0], ends[1]) == e);
    CHECK(t.edge_between(ends[1], ends[0]) == e);
  }
  CHECK_FALSE(t.edge_between(0, t.vertex(1, 1, 0)).has_value());
}

TEST_CASE("graph degrees and line graph") {
  const CubicTorus t{TorusSpec(4, 4, 4)};
  CHECK(t.num_vertices() == 64);
  CHECK(t.num_edges() == 192);
  for (VertexId v = 0; v < t.num_vertices(); ++v) {
    const auto inc = t.incident_edges(v);
    CHECK(std::set<EdgeId>(inc.begin(), inc.end()).size() == 6);
    for (EdgeId e : inc) {
      const auto ends = t.endpoints(e);
      CHECK((ends[0] == v || ends[1] == v));
    }
  }
  for (EdgeId e = 0; e < t.num_edges(); ++e) {
    const auto nb = t.line_graph_neighbors(e);
    CHECK(std::set<EdgeId>(nb.begin(), nb.end()).size() == 10);
    const auto a = t.endpoints(e);
    for (EdgeId f : nb) {
      const auto b = t.endpoints(f);
      int shared = 0;
      for (auto x : a)
        for (auto y : b) shared += x == y;
      CHECK(shared == 1);
    }
  }
}

TEST_CASE("incidence and hopping matrices") {
  const CubicTorus t{TorusSpec(4, 4, 6)};
  const auto b = incidence_matrix(t);
  REQUIRE(b.rows() == t.num_vertices());
  REQUIRE(b.cols() == t.num_edges());
  for (std::size_t v = 0; v < b.rows(); ++v) {
    std::int64_t s = 0;
    for (std::size_t e = 0; e < b.cols(); ++e) s += b(v, e);
    CHECK(s == 6);
  }
  for (std::size_t e = 0; e < b.cols(); ++e) {
    std::int64_t s = 0;
    for (std::size_t v = 0; v < b.rows(); ++v) s += b(v, e);
    CHECK(s == 2);
  }
  const auto h = hopping_matrix(t);
  CHECK(h == multiply(b.transposed(), b));
  const auto adj = line_graph_adjacency(t);
  for (std::size_t e = 0; e < h.rows(); ++e) {
    CHECK(h(e, e) == 2);
    CHECK(adj(e, e) == 0);
    for (std::size_t f = 0; f < h.cols(); ++f)
      if (e != f) CHECK(adj(e, f) == h(e, f));
  }
}

TEST_CASE("face states lie in the kernel and match the reference squares") {
  const CubicTorus t{TorusSpec(4, 4, 4)};
  const oracle::Torus ref(4, 4, 4);
  const int dirs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (const Face& f : enumerate_faces(t)) {
    const auto s = face_state(t, f);
    std::set<EdgeId> edges;
    for (const auto& x : s.entries) {
      CHECK((x.sign == 1 || x.sign == -1));
      edges.insert(x.edge);
    }
    CHECK(edges.size() == 4);
    const auto dense = to_dense(t, s.entries);
    for (auto v : apply_incidence(t, dense)) CHECK(v == 0);

    const int p = static_cast<int>(f.plane);
    const auto expected = oracle::square_state(ref, static_cast<int>(f.anchor), dirs[p][0], dirs[p][1]);
    for (const auto& x : s.entries) {
      REQUIRE(expected.count(static_cast<int>(x.edge)) == 1);
      CHECK(expected.at(static_cast<int>(x.edge)) == x.sign);
    }
  }
}

TEST_CASE("each edge lies in four faces") {
  const CubicTorus t{TorusSpec(4, 6, 6)};
  std::vector<int> seen(t.num_edges(), 0);
  for (FaceId f = 0; f < t.num_faces(); ++f)
    for (EdgeId e : t.face_edges(CubicTorus::face(f))) {
      ++seen[e];
      const auto& fs = t.faces_of_edge(e);
      CHECK(std::find(fs.begin(), fs.end(), f) != fs.end());
    }
  for (int c : seen) CHECK(c == 4);
}

TEST_CASE("cycle states of walks") {
  const CubicTorus t{TorusSpec(4, 4, 4)};
  // A straight non-contractible loop along X.
  std::vector<VertexId> loop;
  for (int x = 0; x < 4; ++x) loop.push_back(t.vertex(x, 1, 2));
  const auto s = cycle_state(t, loop);
  for (auto v : apply_incidence(t, to_dense(t, s))) CHECK(v == 0);
  const std::vector<VertexId> broken{t.vertex(0, 0, 0), t.vertex(1, 0, 0), t.vertex(3, 0, 0), t.vertex(0, 1, 0)};
  CHECK_THROWS_AS(cycle_state(t, broken), Error);
  const std::vector<VertexId> odd{0, 1, 2};
  CHECK_THROWS_AS(cycle_state(t, odd), Error);
}

TEST_CASE("plane names") {
  CHECK(parse_plane("xy") == Plane::XY);
  CHECK(parse_plane("YZ") == Plane::YZ);
  CHECK(parse_plane("XZ") == Plane::ZX);
  CHECK_THROWS_AS(parse_plane("XX"), Error);
  CHECK(std::string(to_string(Plane::ZX)) == "ZX");
  CHECK(normal_axis(Plane::XY) == Axis::Z);
  CHECK(plane_normal_to(Axis::X) == Plane::YZ);
}
