#include "flatband/manybody.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace flatband {

namespace {

struct Support {
  std::vector<std::pair<EdgeId, std::int64_t>> entries;
};

// Pair index p <-> (i, j), i <= j, row-major over the upper triangle.
std::vector<std::pair<std::size_t, std::size_t>> pair_table(std::size_t d) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(d * (d + 1) / 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) out.emplace_back(i, j);
  return out;
}

// Psi = sum_p c_p (u_i u_j^t + u_j u_i^t), the symmetric two-boson amplitude.
BigMatrix amplitude(std::size_t edges, const std::vector<Support>& basis,
                    const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const std::vector<BigInt>& c) {
  BigMatrix psi(edges, edges);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (c[p] == 0) continue;
    const auto [i, j] = pairs[p];
    for (const auto& [e, ue] : basis[i].entries)
      for (const auto& [f, vf] : basis[j].entries) {
        const BigInt w = c[p] * (ue * vf);
        psi(e, f) += w;
        psi(f, e) += w;
      }
  }
  return psi;
}

// (T (x) 1 + 1 (x) T) Psi = 0 and Psi(e, e) = 0 for every e.
bool annihilated(const CubicTorus& torus, const BigMatrix& psi) {
  const std::size_t n = torus.num_edges();
  std::vector<std::array<EdgeId, 10>> nbr(n);
  for (EdgeId e = 0; e < n; ++e) nbr[e] = torus.line_graph_neighbors(e);
  bool nonzero = false;
  BigInt acc;
  for (std::size_t e = 0; e < n; ++e) {
    if (psi(e, e) != 0) return false;
    for (std::size_t f = 0; f < n; ++f) {
      if (psi(e, f) != 0) nonzero = true;
      acc = 4 * psi(e, f);
      for (EdgeId g : nbr[e]) acc += psi(g, f);
      for (EdgeId g : nbr[f]) acc += psi(e, g);
      if (acc != 0) return false;
    }
  }
  return nonzero;
}

}  // namespace

ZeroModeReport two_boson_zero_dim(const CubicTorus& torus, const ZeroModeOptions& opts) {
  const std::size_t edges = torus.num_edges();
  const IntegerMatrix u = kernel_basis(torus);
  const std::size_t d = u.cols();
  const auto pairs = pair_table(d);

  std::vector<Support> basis(d);
  for (std::size_t e = 0; e < edges; ++e)
    for (std::size_t k = 0; k < d; ++k)
      if (u(e, k) != 0) basis[k].entries.emplace_back(static_cast<EdgeId>(e), u(e, k));

  // Row e: coefficient of the double occupancy of e contributed by pair p.
  IntegerMatrix constraints(edges, pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    for (const auto& [e, ue] : basis[i].entries)
      if (u(e, j) != 0) constraints(e, p) = ue * u(e, j);
  }

  ZeroModeReport rep;
  rep.kernel_dim = d;
  rep.pair_count = pairs.size();
  rep.constraint_rows = edges;
  RankOptions ropts;
  ropts.seed = opts.seed;
  rep.constraint_rank = exact_rank(constraints, ropts).rank;
  rep.dimension = rep.pair_count - rep.constraint_rank;

  std::mt19937_64 rng(opts.seed);

  // Soundness: rebuild sampled nullspace vectors as amplitudes and apply H.
  const auto primes = random_primes(1, opts.seed);
  const auto pivots = modular_pivots(constraints, primes.front());
  std::vector<bool> is_pivot(pairs.size(), false);
  for (std::size_t c : pivots.cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (!is_pivot[p]) free_cols.push_back(p);
  std::shuffle(free_cols.begin(), free_cols.end(), rng);
  free_cols.resize(std::min(opts.samples, free_cols.size()));
  std::sort(free_cols.begin(), free_cols.end());
  for (const auto& c : nullspace_vectors(constraints, pivots, free_cols)) {
    ++rep.samples_checked;
    if (annihilated(torus, amplitude(edges, basis, pairs, c))) ++rep.samples_annihilated;
  }

  // Products of two edge-disjoint face states, expanded in the kernel basis.
  const auto pivot_edges = kernel_basis_pivot_edges(torus);
  auto coordinates = [&](FaceId f) {
    std::vector<std::int64_t> alpha(d, 0);
    const auto s = face_state(torus, CubicTorus::face(f));
    std::vector<std::int64_t> dense(edges, 0);
    for (const auto& x : s.entries) dense[x.edge] = x.sign;
    for (std::size_t k = 0; k < d; ++k) alpha[k] = dense[pivot_edges[k]] * u(pivot_edges[k], k);
    for (std::size_t e = 0; e < edges; ++e) {
      std::int64_t v = 0;
      for (std::size_t k = 0; k < d; ++k) v += u(e, k) * alpha[k];
      if (v != dense[e]) throw Error(ErrorKind::Numerical, "face state is not in the span of the kernel basis");
    }
    return alpha;
  };
  std::vector<std::pair<FaceId, FaceId>> disjoint;
  for (FaceId f = 0; f < torus.num_faces(); ++f) {
    const auto ef = torus.face_edges(CubicTorus::face(f));
    for (FaceId g = f + 1; g < torus.num_faces(); ++g) {
      const auto eg = torus.face_edges(CubicTorus::face(g));
      const bool shares = std::any_of(ef.begin(), ef.end(),
                                      [&](EdgeId e) { return std::find(eg.begin(), eg.end(), e) != eg.end(); });
      if (!shares) disjoint.emplace_back(f, g);
    }
  }
  std::shuffle(disjoint.begin(), disjoint.end(), rng);
  disjoint.resize(std::min(opts.disjoint_pairs, disjoint.size()));
  IntegerMatrix pair_vectors(disjoint.size(), pairs.size());
  for (std::size_t q = 0; q < disjoint.size(); ++q) {
    const auto a = coordinates(disjoint[q].first);
    const auto b = coordinates(disjoint[q].second);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [i, j] = pairs[p];
      pair_vectors(q, p) = i == j ? a[i] * b[i] : a[i] * b[j] + a[j] * b[i];
    }
    bool in_kernel = true;
    for (std::size_t e = 0; e < edges && in_kernel; ++e) {
      std::int64_t v = 0;
      for (std::size_t p = 0; p < pairs.size(); ++p) v += constraints(e, p) * pair_vectors(q, p);
      in_kernel = v == 0;
    }
    ++rep.disjoint_pairs_checked;
    if (in_kernel) ++rep.disjoint_pairs_in_kernel;
  }
  if (!disjoint.empty()) rep.disjoint_pair_rank = exact_rank(pair_vectors, ropts).rank;

  rep.sound = rep.samples_annihilated == rep.samples_checked &&
              rep.disjoint_pairs_in_kernel == rep.disjoint_pairs_checked && rep.disjoint_pair_rank <= rep.dimension;
  return rep;
}

}  // namespace flatband
