#pragma once

// Bosonic product states of localized face modes: Wick overlaps as
// permanents, Gram matrices and their exact ranks, the rotated tower family,
// the two-state column check, two-boson zero modes and the dilution count.

#include "flatband/decomp.hpp"
#include "flatband/exactalg.hpp"
#include "flatband/lattice.hpp"
#include "flatband/types.hpp"

#include <cstdint>
#include <vector>

namespace flatband {

// One boson in each listed face state. Faces are kept sorted.
class FaceProductState {
 public:
  FaceProductState() = default;
  explicit FaceProductState(std::vector<FaceId> faces);
  explicit FaceProductState(const Decomposition& d) : FaceProductState(d.faces()) {}

  const std::vector<FaceId>& faces() const noexcept { return faces_; }
  std::size_t particles() const noexcept { return faces_.size(); }

  auto operator<=>(const FaceProductState&) const = default;

 private:
  std::vector<FaceId> faces_;
};

// Commutator [f, g^dagger] = sum over edges of s_f(e) s_g(e).
std::int64_t single_particle_overlap(const CubicTorus& torus, FaceId f, FaceId g);

// M_ij = single_particle_overlap(A_i, B_j).
IntegerMatrix overlap_matrix(const CubicTorus& torus, const FaceProductState& a, const FaceProductState& b);

// <A|B> = perm M. Error(InvalidArgument) on a particle-number mismatch.
BigInt state_overlap(const CubicTorus& torus, const FaceProductState& a, const FaceProductState& b,
                     const PermanentOptions& opts = {});

// Pairwise overlaps. Entries are independent of `threads`; a failing entry
// is reported as Error(CapExceeded) naming the pair.
BigMatrix gram_matrix(const CubicTorus& torus, const std::vector<FaceProductState>& states,
                      const PermanentOptions& opts = {}, unsigned threads = 1);

std::size_t gram_rank(const BigMatrix& gram, const RankOptions& opts = {});
std::size_t gram_rank(const CubicTorus& torus, const std::vector<FaceProductState>& states,
                      const PermanentOptions& popts = {}, unsigned threads = 1);

// The 2^(L2 L3 / 4) decompositions obtained from the phase-0 tower by
// rotating any subset of its rotatable columns along X. State k rotates the
// columns whose bit is set in k (columns ordered by (u, v)).
inline constexpr std::size_t kMaxFamilyColumns = 20;
std::vector<FaceProductState> rotated_family(const CubicTorus& torus);

struct FamilyRankReport {
  std::size_t states = 0;
  std::size_t columns = 0;
  std::size_t rank = 0;
  bool all_valid = false;         // every state is a decomposition
  double min_scaled_eigenvalue = 0.0;
};
FamilyRankReport rotated_family_rank(const CubicTorus& torus, unsigned threads = 1);

// Up/down states of a single column of length L along Z in the (4, 4, L)
// phase-0 tower, each with 2L bosons.
struct ColumnGramReport {
  int length = 0;
  BigInt self_up;
  BigInt self_down;
  BigInt cross;
  BigInt det;           // self_up * self_down - cross^2
  BigInt expected_self;  // 4^(2L)
  bool ok = false;       // self overlaps equal 4^(2L), |cross| < 4^(2L), det > 0
};
ColumnGramReport column_gram_check(int length);

struct SpanRankReport {
  std::size_t limit = 0;
  std::size_t states = 0;
  std::size_t rank = 0;
  double min_scaled_eigenvalue = 0.0;
};
// Gram rank of the first `limit` decompositions in search order.
SpanRankReport decomposition_span_rank(const CubicTorus& torus, std::size_t limit, unsigned threads = 1,
                                       const PermanentOptions& opts = {});

struct ZeroModeOptions {
  std::size_t samples = 10;         // basis vectors checked against H
  std::size_t disjoint_pairs = 64;  // edge-disjoint face pairs checked
  std::uint64_t seed = 1;
};

struct ZeroModeReport {
  std::size_t kernel_dim = 0;
  std::size_t pair_count = 0;        // C(d0 + 1, 2)
  std::size_t constraint_rows = 0;   // |E|
  std::size_t constraint_rank = 0;
  std::size_t dimension = 0;         // pair_count - constraint_rank
  std::size_t samples_checked = 0;
  std::size_t samples_annihilated = 0;
  std::size_t disjoint_pairs_checked = 0;
  std::size_t disjoint_pairs_in_kernel = 0;
  std::size_t disjoint_pair_rank = 0;
  bool sound = false;
};

// Two-boson states in Sym^2(kern T) with no double occupancy. Sampled
// nullspace vectors are rebuilt as symmetric edge-edge amplitudes and checked
// against both the hopping and the on-site term exactly.
ZeroModeReport two_boson_zero_dim(const CubicTorus& torus, const ZeroModeOptions& opts = {});

struct EntropyReport {
  std::uint64_t critical_particles = 0;  // N_c
  std::uint64_t particles = 0;           // N
  BigInt count;                          // C(N_c, N)
  double density = 0.0;                  // N / (4 N_c)
  double critical_density = 0.25;
  double bound = 0.0;                    // h_b(4 rho) / 4, natural log
};

// Binary entropy in nats with h(0) = h(1) = 0.
double binary_entropy(double p);

EntropyReport dilution_entropy(std::uint64_t critical_particles, std::uint64_t particles);

}  // namespace flatband
