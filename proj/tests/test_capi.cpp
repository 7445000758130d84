// Exercises the shared library through its C header only.
#include "flatband/flatband.h"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct Torus {
  fb_torus* t = nullptr;
  Torus(int a, int b, int c) { REQUIRE(fb_torus_create(a, b, c, &t) == FB_OK); }
  ~Torus() { fb_torus_destroy(t); }
};

json take(fb_status s, char*& text) {
  REQUIRE_MESSAGE(s == FB_OK, fb_last_error());
  json j = json::parse(text);
  fb_string_free(text);
  text = nullptr;
  return j;
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(fb_status_name(FB_OK)) == "ok");
  CHECK(std::string(fb_status_name(FB_ERR_BRACKET_VIOLATION)) == "bracket violation");
  CHECK(std::string(fb_version()).size() > 0);

  fb_torus* t = nullptr;
  CHECK(fb_torus_create(4, 3, 4, &t) == FB_ERR_INVALID_ARGUMENT);
  CHECK(t == nullptr);
  CHECK(std::string(fb_last_error()).find("extent must be even >= 4 (got 3)") != std::string::npos);
  CHECK(fb_torus_create(4, 4, 4, nullptr) == FB_ERR_INVALID_ARGUMENT);
  char* out = nullptr;
  CHECK(fb_lattice_summary(nullptr, 1e-9, &out) == FB_ERR_INVALID_ARGUMENT);
  CHECK(fb_decomposition_parse("{not json", nullptr) == FB_ERR_INVALID_ARGUMENT);
  fb_decomposition* d = nullptr;
  CHECK(fb_decomposition_parse("{not json", &d) == FB_ERR_INVALID_ARGUMENT);
  CHECK(std::string(fb_last_error()).find("malformed JSON") == 0);
}

TEST_CASE("torus handles") {
  Torus t(8, 4, 6);
  int ext[3];
  REQUIRE(fb_torus_extents(t.t, ext) == FB_OK);
  CHECK(ext[0] == 4);
  CHECK(ext[1] == 6);
  CHECK(ext[2] == 8);

  char* out = nullptr;
  const auto s = take(fb_lattice_summary(t.t, 1e-9, &out), out);
  CHECK(s["vertices"] == 192);
  CHECK(s["kernelDim"] == 3 * 192 - 192 + 1);
  CHECK(s["size"] == json::parse("[4,6,8]"));
}

TEST_CASE("decompositions through the C interface") {
  Torus t(4, 4, 4);
  fb_decomposition* d = nullptr;
  REQUIRE(fb_tower(t.t, 0, 0, 0, &d) == FB_OK);
  CHECK(fb_decomposition_size(d) == 48);

  std::vector<uint32_t> faces(4);
  size_t total = 0;
  REQUIRE(fb_decomposition_faces(d, faces.data(), faces.size(), &total) == FB_OK);
  CHECK(total == 48);

  char* out = nullptr;
  const auto v = take(fb_decomposition_verify(t.t, d, &out), out);
  CHECK(v["valid"] == true);
  CHECK(v["profile"]["ok"] == true);

  REQUIRE(fb_decomposition_json(t.t, d, &out) == FB_OK);
  fb_decomposition* back = nullptr;
  REQUIRE(fb_decomposition_parse(out, &back) == FB_OK);
  fb_string_free(out);
  CHECK(fb_decomposition_size(back) == 48);

  fb_decomposition* rotated = nullptr;
  CHECK(fb_decomposition_rotate(t.t, d, 7, 0, 0, &rotated) == FB_ERR_INVALID_ARGUMENT);

  REQUIRE(fb_decomposition_slice(t.t, d, "XY", 0, 1, &out) == FB_OK);
  CHECK(std::string(out).size() == 20);
  fb_string_free(out);
  CHECK(fb_decomposition_slice(t.t, d, "XX", 0, 0, &out) == FB_ERR_INVALID_ARGUMENT);

  fb_decomposition_destroy(back);
  fb_decomposition_destroy(d);
}

TEST_CASE("counts, budgets and reports") {
  Torus t(4, 4, 4);
  char* out = nullptr;
  const auto c = take(fb_decomp_count(t.t, nullptr, 2, &out), out);
  CHECK(c["count"] == "200");
  CHECK(c["completed"] == true);

  fb_budget budget{100, 0.0};
  const auto partial = take(fb_decomp_count(t.t, &budget, 1, &out), out);
  CHECK(partial["completed"] == false);

  const auto e = take(fb_decomp_enumerate(t.t, 1000, nullptr, &out), out);
  CHECK(e["count"] == 200);
  CHECK(e["invalid"] == 0);
  CHECK(e["profileViolations"] == 0);

  const auto p = take(fb_packings2d(4, 4, &out), out);
  CHECK(p["count"] == 12);
  CHECK(p["allClassified"] == true);

  const auto r = take(fb_report(t.t, nullptr, 1, &out), out);
  CHECK(r["omega4"]["count"] == "200");
  CHECK(r["spanRank"] == 16);
  CHECK(r["lowerConfirmed"] == true);
  CHECK(r["upperConfirmed"] == true);
  CHECK(r["spanConfirmed"] == true);

  const std::string report_text = r.dump();
  REQUIRE(fb_report_csv("bounds", report_text.c_str(), &out) == FB_OK);
  const std::string csv = out;
  fb_string_free(out);
  CHECK(csv.find("4x4x4,48,200,3145728,16,16,") != std::string::npos);
  CHECK(fb_report_csv("nope", report_text.c_str(), &out) == FB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("many-body reports") {
  char* out = nullptr;
  const auto g = take(fb_column_gram(4, &out), out);
  CHECK(g["crossOverlap"] == "272");
  CHECK(g["ok"] == true);

  Torus t(4, 4, 4);
  const auto r = take(fb_rotated_rank(t.t, 1, &out), out);
  CHECK(r["rank"] == 16);
  CHECK(r["expected"] == "16");

  const auto s = take(fb_span_rank(t.t, 4, 1, &out), out);
  CHECK(s["states"] == 4);

  const auto e = take(fb_entropy(48, 24, &out), out);
  CHECK(e["count"] == "32247603683100");
  CHECK(fb_entropy(48, 49, &out) == FB_ERR_INVALID_ARGUMENT);
}
