#pragma once

// Exact linear algebra over the integers: ranks (modular with fraction-free
// fallback), kernel bases of the incidence matrix, exact nullspace vectors,
// permanents. Floating point appears only in the spectral cross-check.

#include "flatband/lattice.hpp"
#include "flatband/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace flatband {

enum class RankMethod { Modular, FractionFree };

const char* to_string(RankMethod m);

struct RankResult {
  std::size_t rank = 0;
  RankMethod method = RankMethod::Modular;
  std::vector<std::uint64_t> primes;  // empty for fraction-free
};

struct RankOptions {
  RankMethod method = RankMethod::Modular;
  int prime_count = 2;             // independent primes that must agree
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

// Largest matrix dimension accepted by the rank routines.
inline constexpr std::size_t kMaxRankDimension = std::size_t{1} << 24;

// `count` distinct primes drawn uniformly from (2^60, 2^61), deterministic in `seed`.
std::vector<std::uint64_t> random_primes(int count, std::uint64_t seed);

// Rank over Z/pZ.
std::size_t rank_mod_prime(const IntegerMatrix& m, std::uint64_t p);
std::size_t rank_mod_prime(const BigMatrix& m, std::uint64_t p);

// Rank over Q by Bareiss fraction-free elimination.
std::size_t rank_fraction_free(const IntegerMatrix& m);
std::size_t rank_fraction_free(const BigMatrix& m);

// Rank over Q. The modular method runs `prime_count` primes and falls back
// to fraction-free elimination when they disagree.
RankResult exact_rank(const IntegerMatrix& m, const RankOptions& opts = {});
RankResult exact_rank(const BigMatrix& m, const RankOptions& opts = {});

// Independent rows and pivot columns found by elimination mod p.
// A[pivot_rows, pivot_cols] is nonsingular mod p, hence over Q.
struct PivotSelection {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};
PivotSelection modular_pivots(const IntegerMatrix& m, std::uint64_t p);

// For each non-pivot column f, the integer vector y with y_f > 0, support in
// pivot_cols + {f}, solving A[pivot_rows,:] y = 0 exactly. The caller is
// expected to check A y = 0 on all rows (it holds when the pivots realize
// the rational rank).
std::vector<std::vector<BigInt>> nullspace_vectors(const IntegerMatrix& m, const PivotSelection& pivots,
                                                   std::span<const std::size_t> free_cols);

// dim kern B, computed as |E| - rank(B).
std::size_t kernel_dimension(const CubicTorus& torus, const RankOptions& opts = {});

// Integer basis of kern B (|E| x (|E|-|V|+1)), one signed fundamental cycle
// of a BFS spanning tree per column. Entries are in {-1, 0, 1}.
IntegerMatrix kernel_basis(const CubicTorus& torus);

// Non-tree edges of the BFS tree used by kernel_basis, in column order.
// Column k is the only basis vector nonzero on non_tree_edges[k].
std::vector<EdgeId> kernel_basis_pivot_edges(const CubicTorus& torus);

// |E| x 3|V| matrix whose columns are the face states in face-id order.
IntegerMatrix face_state_matrix(const CubicTorus& torus);

std::size_t face_span_rank(const CubicTorus& torus, const RankOptions& opts = {});

struct SpectrumReport {
  std::size_t multiplicity = 0;  // eigenvalues of T in [-tol, tol]
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

// Symmetric eigensolve of T = B^t B. Throws Error(Numerical) on non-convergence
// or when an eigenvalue falls below -tol.
SpectrumReport flat_band_spectrum(const CubicTorus& torus, double tol = 1e-9);
std::size_t flat_band_multiplicity(const CubicTorus& torus, double tol = 1e-9);

// Structural facts about G, L(G) and T collected for the lattice command.
struct LatticeSummary {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  int min_degree = 0;
  int max_degree = 0;
  int min_line_degree = 0;  // degrees in L(G)
  int max_line_degree = 0;
  bool hopping_diagonal_two = false;
  bool vertex_cliques = false;  // the six edges at every vertex are pairwise adjacent in L(G)
  std::size_t kernel_dim = 0;
  std::size_t face_span_rank = 0;
  SpectrumReport spectrum;
};
LatticeSummary summarize_lattice(const CubicTorus& torus, double tol = 1e-9);

// Smallest eigenvalue of D^-1/2 G D^-1/2 (D = diag G), used as a PSD
// cross-check for exact Gram matrices with positive diagonal.
double min_scaled_eigenvalue(const BigMatrix& gram);

inline constexpr std::size_t kDefaultPermanentCap = 30;

// Ryser inclusion-exclusion over Gray-code ordered column subsets.
BigInt permanent(const IntegerMatrix& m, std::size_t cap = kDefaultPermanentCap);

// Permanent by expansion over rows, keeping only the used/unused pattern of
// columns that are still shared with later rows. Exact for any size; cost
// depends on that frontier, not on n. Error(CapExceeded) once more than
// `max_states` patterns are alive or the frontier exceeds 64 columns.
BigInt sparse_permanent(const IntegerMatrix& m, std::size_t max_states = std::size_t{1} << 22);

struct PermanentOptions {
  std::size_t cap = kDefaultPermanentCap;  // largest block handed to Ryser
  std::size_t ryser_max_block = 16;        // larger blocks go to sparse_permanent when allowed
  bool sparse_fallback = true;
  std::size_t max_states = std::size_t{1} << 22;
};

// Product of the permanents of the connected components of the bipartite
// row/column support graph. Zero as soon as a component is not square.
// Error(CapExceeded) names the offending block size.
BigInt block_permanent(const IntegerMatrix& m, const PermanentOptions& opts = {});

// Sizes (rows) of the square components block_permanent would evaluate;
// empty when some component is not square.
std::vector<std::size_t> permanent_block_sizes(const IntegerMatrix& m);

BigInt binomial(unsigned long n, unsigned long k);

}  // namespace flatband
