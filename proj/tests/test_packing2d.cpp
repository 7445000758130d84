#include "flatband/decomp.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace flatband;

namespace {

std::vector<std::pair<int, int>> anchors(const Packing2D& p) {
  std::vector<std::pair<int, int>> out;
  for (const auto& s : p.squares) out.emplace_back(s.a, s.b);
  return out;
}

}  // namespace

TEST_CASE("2D packings match the subset search") {
  for (auto [la, lb] : {std::pair{4, 4}, std::pair{4, 6}, std::pair{6, 4}}) {
    const auto listed = enumerate_2d_packings(la, lb);
    std::set<std::vector<std::pair<int, int>>> got;
    for (const auto& p : listed) {
      CHECK(is_perfect_packing(p));
      got.insert(anchors(p));
    }
    CHECK(got.size() == listed.size());
    CHECK(got == oracle::brute_force_packings(la, lb));
  }
  CHECK(enumerate_2d_packings(4, 4).size() == 12);
}

TEST_CASE("every packing is classified and rebuilt from its witness") {
  for (auto [la, lb] : {std::pair{4, 4}, std::pair{4, 6}, std::pair{6, 6}, std::pair{6, 8}}) {
    const auto listed = enumerate_2d_packings(la, lb);
    CHECK(listed.size() <= static_cast<std::size_t>(4 * ((1 << (la / 2)) + (1 << (lb / 2)))));
    for (const auto& p : listed) {
      const auto c = classify_2d_packing(p);
      REQUIRE(c.classified);
      CHECK(c.base >= 0);
      CHECK(c.base < 4);
      CHECK(packing_from_witness(la, lb, c) == p);
    }
  }
}

TEST_CASE("imperfect packings are rejected") {
  Packing2D p{4, 4, {{0, 0}, {1, 0}, {0, 2}, {2, 2}}};
  CHECK_FALSE(is_perfect_packing(p));
  CHECK_FALSE(classify_2d_packing(p).classified);
  CHECK_THROWS_AS(enumerate_2d_packings(4, 5), Error);
  CHECK_THROWS_AS(enumerate_2d_packings(40, 40, 1024), Error);
  CHECK_THROWS_AS(packing_from_witness(4, 4, PackingClass{}), Error);
}

TEST_CASE("ascii rendering") {
  const Packing2D p{4, 4, {{0, 0}, {0, 2}, {2, 0}, {2, 2}}};
  CHECK(packing_ascii(p) == "AACC\nAACC\nBBDD\nBBDD\n");
}

TEST_CASE("slices of every 3D decomposition are classified packings") {
  const CubicTorus t{TorusSpec(4, 4, 4)};
  const auto all = enumerate_decompositions(t, 200);
  REQUIRE(all.size() == 200);
  for (const auto& d : all)
    for (Plane plane : kPlanes)
      for (int layer = 0; layer < 4; ++layer) {
        const auto p = plane_slice(t, d, plane, layer);
        CHECK(is_perfect_packing(p));
        CHECK(classify_2d_packing(p).classified);
      }
  CHECK_THROWS_AS(plane_slice(t, all.front(), Plane::XY, 4), Error);
}
