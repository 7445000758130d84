#include "flatband/flatband.h"

#include "flatband/bounds.hpp"
#include "flatband/decomp.hpp"
#include "flatband/exactalg.hpp"
#include "flatband/manybody.hpp"
#include "flatband/serialize.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct fb_torus {
  flatband::CubicTorus torus;
};

struct fb_decomposition {
  flatband::Decomposition decomposition;
};

namespace {

using namespace flatband;

thread_local std::string last_error;

// Families up to this many columns are included in fb_report.
constexpr int kReportFamilyColumns = 8;

fb_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return FB_ERR_INVALID_ARGUMENT;
    case ErrorKind::CapExceeded: return FB_ERR_CAP_EXCEEDED;
    case ErrorKind::BudgetExhausted: return FB_ERR_BUDGET_EXHAUSTED;
    case ErrorKind::BracketViolation: return FB_ERR_BRACKET_VIOLATION;
    case ErrorKind::Numerical: return FB_ERR_NUMERICAL;
  }
  return FB_ERR_INTERNAL;
}

template <class F>
fb_status guarded(F&& f) {
  try {
    f();
    return FB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return FB_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FB_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must not be null");
}

void emit(const std::string& s, char** out) {
  require(out, "output pointer");
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
}

void emit(const json& j, char** out) { emit(j.dump(2), out); }

SearchBudget budget_of(const fb_budget* b) {
  SearchBudget sb;
  if (b) {
    sb.max_nodes = b->max_nodes;
    sb.max_seconds = b->max_seconds;
  }
  return sb;
}

}  // namespace

extern "C" {

const char* fb_version(void) { return "0.1.0"; }

const char* fb_status_name(fb_status s) {
  switch (s) {
    case FB_OK: return "ok";
    case FB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FB_ERR_CAP_EXCEEDED: return "cap exceeded";
    case FB_ERR_BUDGET_EXHAUSTED: return "budget exhausted";
    case FB_ERR_BRACKET_VIOLATION: return "bracket violation";
    case FB_ERR_NUMERICAL: return "numerical failure";
    case FB_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* fb_last_error(void) { return last_error.c_str(); }

void fb_string_free(char* s) { std::free(s); }

fb_status fb_torus_create(int l1, int l2, int l3, fb_torus** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new fb_torus{CubicTorus(TorusSpec(l1, l2, l3))};
  });
}

void fb_torus_destroy(fb_torus* t) { delete t; }

fb_status fb_torus_extents(const fb_torus* t, int out[3]) {
  return guarded([&] {
    require(t, "torus");
    require(out, "output array");
    const auto& e = t->torus.spec().extents();
    for (int k = 0; k < 3; ++k) out[k] = e[k];
  });
}

fb_status fb_lattice_summary(const fb_torus* t, double tol, char** out) {
  return guarded([&] {
    require(t, "torus");
    json j = summarize_lattice(t->torus, tol);
    j["size"] = t->torus.spec();
    j["tolerance"] = tol;
    emit(j, out);
  });
}

fb_status fb_lattice_json(const fb_torus* t, char** out) {
  return guarded([&] {
    require(t, "torus");
    emit(lattice_to_json(t->torus), out);
  });
}

fb_status fb_lattice_dot(const fb_torus* t, int line_graph, char** out) {
  return guarded([&] {
    require(t, "torus");
    emit(line_graph ? line_graph_dot(t->torus) : graph_dot(t->torus), out);
  });
}

fb_status fb_tower(const fb_torus* t, int a, int b, int c, fb_decomposition** out) {
  return guarded([&] {
    require(t, "torus");
    require(out, "output pointer");
    *out = new fb_decomposition{tower_decomposition(t->torus, {a, b, c})};
  });
}

fb_status fb_decomposition_parse(const char* text, fb_decomposition** out) {
  return guarded([&] {
    require(text, "JSON text");
    require(out, "output pointer");
    *out = new fb_decomposition{decomposition_from_json(json::parse(text))};
  });
}

void fb_decomposition_destroy(fb_decomposition* d) { delete d; }

size_t fb_decomposition_size(const fb_decomposition* d) { return d ? d->decomposition.size() : 0; }

fb_status fb_decomposition_faces(const fb_decomposition* d, uint32_t* buf, size_t cap, size_t* count) {
  return guarded([&] {
    require(d, "decomposition");
    const auto& faces = d->decomposition.faces();
    if (count) *count = faces.size();
    if (cap > 0) require(buf, "buffer");
    for (size_t i = 0; i < faces.size() && i < cap; ++i) buf[i] = faces[i];
  });
}

fb_status fb_decomposition_json(const fb_torus* t, const fb_decomposition* d, char** out) {
  return guarded([&] {
    require(t, "torus");
    require(d, "decomposition");
    emit(decomposition_to_json(t->torus, d->decomposition), out);
  });
}

fb_status fb_decomposition_verify(const fb_torus* t, const fb_decomposition* d, char** out) {
  return guarded([&] {
    require(t, "torus");
    require(d, "decomposition");
    json j = verify_decomposition(t->torus, d->decomposition);
    const auto profile = vertex_axis_profile(t->torus, d->decomposition);
    j["profile"] = {{"ok", profile.ok},
                    {"verticesChecked", profile.vertices_checked},
                    {"violations", profile.violations.size()}};
    emit(j, out);
  });
}

fb_status fb_decomposition_rotate(const fb_torus* t, const fb_decomposition* d, int axis, int u, int v,
                                  fb_decomposition** out) {
  return guarded([&] {
    require(t, "torus");
    require(d, "decomposition");
    require(out, "output pointer");
    if (axis < 0 || axis > 2) throw Error(ErrorKind::InvalidArgument, "axis must be 0, 1 or 2");
    const Column col{static_cast<Axis>(axis), u, v};
    *out = new fb_decomposition{rotate_column(t->torus, d->decomposition, col)};
  });
}

fb_status fb_decomposition_slice(const fb_torus* t, const fb_decomposition* d, const char* plane, int layer,
                                 int ascii, char** out) {
  return guarded([&] {
    require(t, "torus");
    require(d, "decomposition");
    require(plane, "plane");
    const auto p = plane_slice(t->torus, d->decomposition, parse_plane(plane), layer);
    if (ascii) {
      emit(packing_ascii(p), out);
      return;
    }
    json j = p;
    j["plane"] = plane;
    j["layer"] = layer;
    j["perfect"] = is_perfect_packing(p);
    j["class"] = classify_2d_packing(p);
    emit(j, out);
  });
}

fb_status fb_decomp_count(const fb_torus* t, const fb_budget* budget, unsigned threads, char** out) {
  return guarded([&] {
    require(t, "torus");
    json j = count_decompositions(t->torus, budget_of(budget), threads);
    j["size"] = t->torus.spec();
    emit(j, out);
  });
}

fb_status fb_decomp_enumerate(const fb_torus* t, size_t limit, const fb_budget* budget, char** out) {
  return guarded([&] {
    require(t, "torus");
    json list = json::array();
    std::size_t invalid = 0, profile_violations = 0;
    const auto stats = enumerate_decompositions(
        t->torus, limit,
        [&](const Decomposition& d) {
          if (!verify_decomposition(t->torus, d).valid) ++invalid;
          profile_violations += vertex_axis_profile(t->torus, d).violations.size();
          list.push_back(d.faces());
          return true;
        },
        budget_of(budget));
    emit(json{{"size", t->torus.spec()},
              {"limit", limit},
              {"count", list.size()},
              {"completed", stats.completed},
              {"nodes", stats.nodes},
              {"seconds", stats.seconds},
              {"invalid", invalid},
              {"profileViolations", profile_violations},
              {"decompositions", list}},
         out);
  });
}

fb_status fb_packings2d(int la, int lb, char** out) {
  return guarded([&] {
    const auto packings = enumerate_2d_packings(la, lb);
    json list = json::array();
    bool all_classified = true;
    for (const auto& p : packings) {
      const auto c = classify_2d_packing(p);
      all_classified = all_classified && c.classified && packing_from_witness(la, lb, c) == p;
      json j = p;
      j["class"] = c;
      list.push_back(std::move(j));
    }
    const long bound = 4L * ((1L << (la / 2)) + (1L << (lb / 2)));
    emit(json{{"size", {la, lb}},
              {"count", packings.size()},
              {"bound", bound},
              {"allClassified", all_classified},
              {"packings", list}},
         out);
  });
}

fb_status fb_column_gram(int length, char** out) {
  return guarded([&] { emit(json(column_gram_check(length)), out); });
}

fb_status fb_rotated_rank(const fb_torus* t, unsigned threads, char** out) {
  return guarded([&] {
    require(t, "torus");
    json j = rotated_family_rank(t->torus, threads);
    j["size"] = t->torus.spec();
    j["expected"] = big_to_json(theorem2_lower(t->torus.spec()));
    emit(j, out);
  });
}

fb_status fb_span_rank(const fb_torus* t, size_t limit, unsigned threads, char** out) {
  return guarded([&] {
    require(t, "torus");
    json j = decomposition_span_rank(t->torus, limit, threads);
    j["size"] = t->torus.spec();
    emit(j, out);
  });
}

fb_status fb_zero_modes(const fb_torus* t, size_t samples, uint64_t seed, char** out) {
  return guarded([&] {
    require(t, "torus");
    ZeroModeOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    json j = two_boson_zero_dim(t->torus, opts);
    j["size"] = t->torus.spec();
    emit(j, out);
  });
}

fb_status fb_entropy(uint64_t critical_particles, uint64_t particles, char** out) {
  return guarded([&] { emit(json(dilution_entropy(critical_particles, particles)), out); });
}

fb_status fb_report(const fb_torus* t, const fb_budget* budget, unsigned threads, char** out) {
  return guarded([&] {
    require(t, "torus");
    const auto& spec = t->torus.spec();
    const auto count = count_decompositions(t->torus, budget_of(budget), threads);
    std::optional<std::size_t> span;
    if (spec.L2() * spec.L3() / 4 <= kReportFamilyColumns) span = rotated_family_rank(t->torus, threads).rank;
    emit(json(assemble_report(spec, count, span, span.has_value())), out);
  });
}

fb_status fb_report_csv(const char* kind, const char* report_json, char** out) {
  return guarded([&] {
    require(kind, "kind");
    require(report_json, "report");
    const auto j = json::parse(report_json);
    const std::string k = kind;
    if (k == "count")
      emit(count_csv_header() + "\n" + count_csv_row(spec_from_json(j.at("size")), j.get<CountResult>()) + "\n", out);
    else if (k == "bounds")
      emit(bounds_csv_header() + "\n" + bounds_csv_row(j.get<BoundsReport>()) + "\n", out);
    else if (k == "entropy")
      emit(entropy_csv_header() + "\n" + entropy_csv_row(j.get<EntropyReport>()) + "\n", out);
    else
      throw Error(ErrorKind::InvalidArgument, "unknown CSV kind " + k);
  });
}

}  // extern "C"
