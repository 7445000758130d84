#include "flatband/decomp.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <deque>
#include <set>

using namespace flatband;

namespace {

std::vector<std::array<int, 3>> all_phases() {
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) out.push_back({a, b, c});
  return out;
}

}  // namespace

TEST_CASE("exact cover on a small instance") {
  // Items 0..3; options {0,1}, {2,3}, {0,2}, {1,3}, {0,1,2,3}.
  const ExactCoverProblem p(4, {{0, 1}, {2, 3}, {0, 2}, {1, 3}, {0, 1, 2, 3}});
  CHECK(count_exact_covers(p).count == 3);
  std::set<std::vector<std::uint32_t>> seen;
  enumerate_exact_covers(p, [&](std::span<const std::uint32_t> chosen) {
    std::vector<std::uint32_t> v(chosen.begin(), chosen.end());
    std::sort(v.begin(), v.end());
    seen.insert(v);
    return true;
  });
  CHECK(seen == std::set<std::vector<std::uint32_t>>{{0, 1}, {2, 3}, {4}});
  const ExactCoverProblem none(3, {{0, 1}, {1, 2}});
  CHECK(count_exact_covers(none).count == 0);
}

TEST_CASE("tower decompositions are valid for every phase") {
  for (auto [a, b, c] : {std::array{4, 4, 4}, std::array{4, 6, 8}, std::array{6, 6, 6}}) {
    const CubicTorus t{TorusSpec(a, b, c)};
    for (const auto& phase : all_phases()) {
      const auto d = tower_decomposition(t, phase);
      const auto rep = verify_decomposition(t, d);
      CHECK(rep.valid);
      CHECK(rep.face_count == t.num_edges() / 4);
      CHECK(vertex_axis_profile(t, d).ok);
    }
  }
}

TEST_CASE("verification reports defects") {
  const CubicTorus t{TorusSpec(4, 4, 4)};
  const auto d = tower_decomposition(t);
  const auto missing = d.without(d.faces().front());
  const auto rep = verify_decomposition(t, missing);
  CHECK_FALSE(rep.valid);
  CHECK(rep.uncovered.size() == 4);
  FaceId extra = 0;
  while (d.contains(extra)) ++extra;
  const auto doubled = d.with(extra);
  CHECK(verify_decomposition(t, doubled).multiply_covered.size() == 4);
  CHECK_FALSE(vertex_axis_profile(t, doubled).ok);
}

TEST_CASE("column rotation is a validity preserving involution") {
  for (auto [a, b, c] : {std::array{4, 4, 4}, std::array{4, 6, 8}}) {
    const CubicTorus t{TorusSpec(a, b, c)};
    const auto tower = tower_decomposition(t);
    for (Axis axis : kAxes) {
      const auto cols = rotatable_columns(t, tower, axis);
      const int Lk = t.spec().extent(axis);
      const int others = t.spec().extents()[0] * t.spec().extents()[1] * t.spec().extents()[2] / Lk;
      CHECK(cols.size() == static_cast<std::size_t>(others / 4));
      for (const auto& col : cols) {
        const auto once = rotate_column(t, tower, col);
        CHECK(once != tower);
        CHECK(verify_decomposition(t, once).valid);
        CHECK(vertex_axis_profile(t, once).ok);
        CHECK(rotate_column(t, once, col) == tower);
        std::vector<FaceId> diff;
        std::set_difference(tower.faces().begin(), tower.faces().end(), once.faces().begin(), once.faces().end(),
                            std::back_inserter(diff));
        CHECK(diff.size() == static_cast<std::size_t>(2 * Lk));
      }
    }
  }
}

TEST_CASE("rotating a column that is not in a rotatable state fails") {
  const CubicTorus t{TorusSpec(4, 4, 4)};
  const auto tower = tower_decomposition(t);
  const auto cols = rotatable_columns(t, tower, Axis::X);
  Column bad{Axis::X, 0, 0};
  bool found = false;
  for (int u = 0; u < 4 && !found; ++u)
    for (int v = 0; v < 4 && !found; ++v) {
      bad = {Axis::X, u, v};
      found = std::find(cols.begin(), cols.end(), bad) == cols.end();
    }
  REQUIRE(found);
  CHECK(column_state(t, tower, bad) == ColumnState::NotRotatable);
  CHECK_THROWS_AS(rotate_column(t, tower, bad), Error);
}

TEST_CASE("decomposition counts match the reference search") {
  for (auto [a, b, c] : {std::array{4, 4, 4}, std::array{4, 4, 6}}) {
    const CubicTorus t{TorusSpec(a, b, c)};
    const auto res = count_decompositions(t);
    CHECK(res.completed);
    CHECK(res.count == static_cast<unsigned long>(oracle::count_square_covers(oracle::Torus(a, b, c))));
  }
  const CubicTorus t{TorusSpec(4, 4, 4)};
  CHECK(count_decompositions(t).count == 200);
  CHECK(count_decompositions(t, {}, 3).count == 200);
  CHECK(count_decompositions(CubicTorus{TorusSpec(4, 6, 6)}).count == 4040);
}

TEST_CASE("budgeted counts are partial lower witnesses") {
  const CubicTorus t{TorusSpec(4, 4, 6)};
  SearchBudget b;
  b.max_nodes = 500;
  const auto partial = count_decompositions(t, b);
  CHECK_FALSE(partial.completed);
  CHECK(partial.count < 936);
  CHECK(partial.nodes <= 501);
}

TEST_CASE("enumeration lists every decomposition once") {
  const CubicTorus t{TorusSpec(4, 4, 4)};
  const auto all = enumerate_decompositions(t, 1000);
  CHECK(all.size() == 200);
  CHECK(std::set<Decomposition>(all.begin(), all.end()).size() == 200);
  for (const auto& d : all) {
    CHECK(verify_decomposition(t, d).valid);
    CHECK(vertex_axis_profile(t, d).ok);
  }
  const auto first = enumerate_decompositions(t, 7);
  REQUIRE(first.size() == 7);
  CHECK(std::equal(first.begin(), first.end(), all.begin()));
  std::size_t visited = 0;
  enumerate_decompositions(t, 50, [&](const Decomposition&) { return ++visited < 3; });
  CHECK(visited == 3);
}

TEST_CASE("decompositions reachable by rotations from the towers are enumerated") {
  const CubicTorus t{TorusSpec(4, 4, 4)};
  const auto all = enumerate_decompositions(t, 1000);
  const std::set<Decomposition> listed(all.begin(), all.end());
  std::set<Decomposition> seen;
  std::deque<Decomposition> queue;
  for (const auto& phase : all_phases()) {
    const auto d = tower_decomposition(t, phase);
    if (seen.insert(d).second) queue.push_back(d);
  }
  while (!queue.empty()) {
    const auto d = queue.front();
    queue.pop_front();
    for (Axis axis : kAxes)
      for (const auto& col : rotatable_columns(t, d, axis)) {
        auto next = rotate_column(t, d, col);
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
  }
  for (const auto& d : seen) CHECK(listed.count(d) == 1);
  CHECK(seen.size() >= 48);
}
