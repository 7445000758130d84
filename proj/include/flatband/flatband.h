#ifndef FLATBAND_FLATBAND_H
#define FLATBAND_FLATBAND_H

/* C interface to the flatband library. Objects are opaque handles; every call
 * returns an fb_status and reports details through fb_last_error(), which is
 * per thread and valid until the next failing call on that thread. Strings
 * returned through `char** out` are owned by the caller and released with
 * fb_string_free. Reports are JSON documents (big integers as strings). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FLATBAND_BUILDING_LIBRARY)
#    define FB_API __declspec(dllexport)
#  else
#    define FB_API __declspec(dllimport)
#  endif
#else
#  define FB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fb_status {
  FB_OK = 0,
  FB_ERR_INVALID_ARGUMENT = 1,
  FB_ERR_CAP_EXCEEDED = 2,
  FB_ERR_BUDGET_EXHAUSTED = 3,
  FB_ERR_BRACKET_VIOLATION = 4,
  FB_ERR_NUMERICAL = 5,
  FB_ERR_INTERNAL = 6
} fb_status;

typedef struct fb_torus fb_torus;
typedef struct fb_decomposition fb_decomposition;

/* Zero fields mean "unlimited". */
typedef struct fb_budget {
  uint64_t max_nodes;
  double max_seconds;
} fb_budget;

FB_API const char* fb_version(void);
FB_API const char* fb_status_name(fb_status s);
FB_API const char* fb_last_error(void);
FB_API void fb_string_free(char* s);

/* Extents must be even and >= 4; they are stored sorted. */
FB_API fb_status fb_torus_create(int l1, int l2, int l3, fb_torus** out);
FB_API void fb_torus_destroy(fb_torus* t);
FB_API fb_status fb_torus_extents(const fb_torus* t, int out[3]);

/* Counts, degrees, kernel dimension, face span rank and flat-band spectrum. */
FB_API fb_status fb_lattice_summary(const fb_torus* t, double tol, char** out);
/* Vertex coordinates and edge endpoints. */
FB_API fb_status fb_lattice_json(const fb_torus* t, char** out);
/* DOT text of G (line_graph = 0) or of L(G). */
FB_API fb_status fb_lattice_dot(const fb_torus* t, int line_graph, char** out);

FB_API fb_status fb_tower(const fb_torus* t, int a, int b, int c, fb_decomposition** out);
/* Accepts the document written by fb_decomposition_json. */
FB_API fb_status fb_decomposition_parse(const char* json, fb_decomposition** out);
FB_API void fb_decomposition_destroy(fb_decomposition* d);
FB_API size_t fb_decomposition_size(const fb_decomposition* d);
/* Copies up to `cap` face ids; *count receives the total. */
FB_API fb_status fb_decomposition_faces(const fb_decomposition* d, uint32_t* buf, size_t cap, size_t* count);
FB_API fb_status fb_decomposition_json(const fb_torus* t, const fb_decomposition* d, char** out);
/* Edge-cover check plus the per-vertex orientation profile. */
FB_API fb_status fb_decomposition_verify(const fb_torus* t, const fb_decomposition* d, char** out);
/* axis: 0 = X, 1 = Y, 2 = Z. */
FB_API fb_status fb_decomposition_rotate(const fb_torus* t, const fb_decomposition* d, int axis, int u, int v,
                                         fb_decomposition** out);
/* plane: "XY", "YZ" or "ZX". With ascii != 0 the result is a text grid. */
FB_API fb_status fb_decomposition_slice(const fb_torus* t, const fb_decomposition* d, const char* plane, int layer,
                                        int ascii, char** out);

/* Exact decomposition count. A budget stop still returns FB_OK with
 * "completed": false and the partial count. */
FB_API fb_status fb_decomp_count(const fb_torus* t, const fb_budget* budget, unsigned threads, char** out);
/* First `limit` decompositions in search order, with verification totals. */
FB_API fb_status fb_decomp_enumerate(const fb_torus* t, size_t limit, const fb_budget* budget, char** out);
/* All perfect 2x2 packings of the la x lb torus with their classification. */
FB_API fb_status fb_packings2d(int la, int lb, char** out);

FB_API fb_status fb_column_gram(int length, char** out);
FB_API fb_status fb_rotated_rank(const fb_torus* t, unsigned threads, char** out);
FB_API fb_status fb_span_rank(const fb_torus* t, size_t limit, unsigned threads, char** out);
FB_API fb_status fb_zero_modes(const fb_torus* t, size_t samples, uint64_t seed, char** out);
FB_API fb_status fb_entropy(uint64_t critical_particles, uint64_t particles, char** out);

/* Bounds, decomposition count and rotated-family rank in one report.
 * FB_ERR_BRACKET_VIOLATION when a computed value leaves its bracket. */
FB_API fb_status fb_report(const fb_torus* t, const fb_budget* budget, unsigned threads, char** out);

/* CSV header plus one row for a report produced above. kind is "count"
 * (fb_decomp_count output), "bounds" (fb_report) or "entropy" (fb_entropy). */
FB_API fb_status fb_report_csv(const char* kind, const char* report_json, char** out);

#ifdef __cplusplus
}
#endif

#endif
