#include "flatband/exactalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

namespace flatband {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 base, u64 exp, u64 p) {
  u64 r = 1;
  base %= p;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

u64 residue(std::int64_t x, u64 p) {
  const auto m = static_cast<std::int64_t>(x % static_cast<std::int64_t>(p));
  return static_cast<u64>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
}

u64 residue(const BigInt& x, u64 p) {
  static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");
  return mpz_fdiv_ui(x.get_mpz_t(), p);
}

void check_dimensions(std::size_t rows, std::size_t cols) {
  if (rows > kMaxRankDimension || cols > kMaxRankDimension)
    throw Error(ErrorKind::InvalidArgument, "matrix dimension exceeds rank backend limit");
}

struct ModularResult {
  std::size_t rank = 0;
  PivotSelection pivots;
};

// Row echelon form mod p, tracking which original rows served as pivots.
template <class T>
ModularResult eliminate_mod(const Matrix<T>& m, u64 p) {
  check_dimensions(m.rows(), m.cols());
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<u64> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = residue(m(i, j), p);
  std::vector<std::size_t> origin(rows);
  std::iota(origin.begin(), origin.end(), 0);

  ModularResult out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols, a.begin() + r * cols);
      std::swap(origin[piv], origin[r]);
    }
    const u64 inv = inv_mod(a[r * cols + c], p);
    u64* prow = &a[r * cols];
    for (std::size_t j = c; j < cols; ++j) prow[j] = mul_mod(prow[j], inv, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      u64* row = &a[i * cols];
      const u64 f = row[c];
      if (f == 0) continue;
      const u64 nf = p - f;
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] == 0) continue;
        u64 v = row[j] + mul_mod(nf, prow[j], p);
        row[j] = v >= p ? v - p : v;
      }
    }
    out.pivots.rows.push_back(origin[r]);
    out.pivots.cols.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

// Bareiss elimination in place; returns the rank. Division by the previous
// pivot is exact at every step, also when rank-deficient columns are skipped.
std::size_t bareiss_rank(BigMatrix a) {
  check_dimensions(a.rows(), a.cols());
  const std::size_t rows = a.rows(), cols = a.cols();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

BigMatrix to_big(const IntegerMatrix& m) {
  BigMatrix b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) b(i, j) = static_cast<long>(m(i, j));
  return b;
}

template <class T>
RankResult exact_rank_impl(const Matrix<T>& m, const RankOptions& opts) {
  RankResult res;
  if (opts.method == RankMethod::FractionFree) {
    res.method = RankMethod::FractionFree;
    res.rank = rank_fraction_free(m);
    return res;
  }
  const int count = std::max(2, opts.prime_count);
  const auto primes = random_primes(count, opts.seed);
  std::vector<std::size_t> ranks;
  for (u64 p : primes) ranks.push_back(rank_mod_prime(m, p));
  if (std::all_of(ranks.begin(), ranks.end(), [&](std::size_t r) { return r == ranks.front(); })) {
    res.method = RankMethod::Modular;
    res.rank = ranks.front();
    res.primes = primes;
    return res;
  }
  res.method = RankMethod::FractionFree;
  res.rank = rank_fraction_free(m);
  return res;
}

}  // namespace

const char* to_string(RankMethod m) {
  return m == RankMethod::Modular ? "modular" : "fraction-free";
}

std::vector<std::uint64_t> random_primes(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> dist((u64{1} << 60) + 1, (u64{1} << 61) - (u64{1} << 20));
  std::vector<u64> primes;
  while (static_cast<int>(primes.size()) < count) {
    mpz_class candidate(static_cast<unsigned long>(dist(rng)));
    mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
    const u64 p = candidate.get_ui();
    if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
  }
  return primes;
}

std::size_t rank_mod_prime(const IntegerMatrix& m, std::uint64_t p) { return eliminate_mod(m, p).rank; }
std::size_t rank_mod_prime(const BigMatrix& m, std::uint64_t p) { return eliminate_mod(m, p).rank; }

std::size_t rank_fraction_free(const IntegerMatrix& m) {
  return m.rows() <= m.cols() ? bareiss_rank(to_big(m)) : bareiss_rank(to_big(m.transposed()));
}

std::size_t rank_fraction_free(const BigMatrix& m) {
  return m.rows() <= m.cols() ? bareiss_rank(m) : bareiss_rank(m.transposed());
}

RankResult exact_rank(const IntegerMatrix& m, const RankOptions& opts) { return exact_rank_impl(m, opts); }
RankResult exact_rank(const BigMatrix& m, const RankOptions& opts) { return exact_rank_impl(m, opts); }

PivotSelection modular_pivots(const IntegerMatrix& m, std::uint64_t p) { return eliminate_mod(m, p).pivots; }

std::vector<std::vector<BigInt>> nullspace_vectors(const IntegerMatrix& m, const PivotSelection& pivots,
                                                   std::span<const std::size_t> free_cols) {
  const std::size_t r = pivots.rows.size();
  const std::size_t k = free_cols.size();
  if (pivots.cols.size() != r) throw Error(ErrorKind::InvalidArgument, "inconsistent pivot selection");
  for (std::size_t f : free_cols) {
    if (f >= m.cols() || std::find(pivots.cols.begin(), pivots.cols.end(), f) != pivots.cols.end())
      throw Error(ErrorKind::InvalidArgument, "requested column is not a free column");
  }

  // Augmented system [A_RP | -A_Rf ...], forward Bareiss, rational back substitution.
  BigMatrix aug(r, r + k);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug(i, j) = static_cast<long>(m(pivots.rows[i], pivots.cols[j]));
    for (std::size_t j = 0; j < k; ++j) aug(i, r + j) = -static_cast<long>(m(pivots.rows[i], free_cols[j]));
  }
  BigInt prev = 1;
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t piv = c;
    while (piv < r && aug(piv, c) == 0) ++piv;
    if (piv == r) throw Error(ErrorKind::Numerical, "pivot block is singular over Q");
    if (piv != c)
      for (std::size_t j = 0; j < r + k; ++j) std::swap(aug(piv, j), aug(c, j));
    for (std::size_t i = c + 1; i < r; ++i) {
      for (std::size_t j = c + 1; j < r + k; ++j) {
        BigInt v = aug(c, c) * aug(i, j) - aug(i, c) * aug(c, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        aug(i, j) = std::move(v);
      }
      aug(i, c) = 0;
    }
    prev = aug(c, c);
  }

  std::vector<std::vector<BigInt>> out;
  out.reserve(k);
  for (std::size_t q = 0; q < k; ++q) {
    std::vector<mpq_class> x(r);
    for (std::size_t ii = r; ii-- > 0;) {
      mpq_class acc(aug(ii, r + q));
      for (std::size_t j = ii + 1; j < r; ++j)
        if (aug(ii, j) != 0) acc -= mpq_class(aug(ii, j)) * x[j];
      x[ii] = acc / mpq_class(aug(ii, ii));
      x[ii].canonicalize();
    }
    BigInt scale = 1;
    for (const auto& xi : x) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), xi.get_den_mpz_t());
    std::vector<BigInt> y(m.cols(), 0);
    for (std::size_t j = 0; j < r; ++j) {
      mpq_class scaled = x[j] * mpq_class(scale);
      scaled.canonicalize();
      y[pivots.cols[j]] = scaled.get_num();
    }
    y[free_cols[q]] = scale;
    out.push_back(std::move(y));
  }
  return out;
}

std::size_t kernel_dimension(const CubicTorus& torus, const RankOptions& opts) {
  return torus.num_edges() - exact_rank(incidence_matrix(torus), opts).rank;
}

namespace {

struct SpanningTree {
  std::vector<EdgeId> parent_edge;  // per vertex; root has none
  std::vector<VertexId> parent;
  std::vector<std::size_t> depth;
  std::vector<bool> in_tree;  // per edge
};

SpanningTree bfs_tree(const CubicTorus& torus) {
  const std::size_t nv = torus.num_vertices();
  SpanningTree t;
  t.parent_edge.assign(nv, 0);
  t.parent.assign(nv, 0);
  t.depth.assign(nv, 0);
  t.in_tree.assign(torus.num_edges(), false);
  std::vector<bool> seen(nv, false);
  std::deque<VertexId> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : torus.incident_edges(v)) {
      const auto ends = torus.endpoints(e);
      const VertexId w = ends[0] == v ? ends[1] : ends[0];
      if (seen[w]) continue;
      seen[w] = true;
      t.parent[w] = v;
      t.parent_edge[w] = e;
      t.depth[w] = t.depth[v] + 1;
      t.in_tree[e] = true;
      queue.push_back(w);
    }
  }
  return t;
}

}  // namespace

std::vector<EdgeId> kernel_basis_pivot_edges(const CubicTorus& torus) {
  const auto tree = bfs_tree(torus);
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < torus.num_edges(); ++e)
    if (!tree.in_tree[e]) out.push_back(e);
  return out;
}

IntegerMatrix kernel_basis(const CubicTorus& torus) {
  const auto tree = bfs_tree(torus);
  const auto non_tree = kernel_basis_pivot_edges(torus);
  IntegerMatrix u(torus.num_edges(), non_tree.size());
  for (std::size_t col = 0; col < non_tree.size(); ++col) {
    const auto [a, b] = torus.endpoints(non_tree[col]);
    // walk: a -> ... -> lca -> ... -> b, closed by the edge (b, a)
    std::vector<VertexId> up_a{a}, up_b{b};
    VertexId x = a, y = b;
    while (tree.depth[x] > tree.depth[y]) up_a.push_back(x = tree.parent[x]);
    while (tree.depth[y] > tree.depth[x]) up_b.push_back(y = tree.parent[y]);
    while (x != y) {
      up_a.push_back(x = tree.parent[x]);
      up_b.push_back(y = tree.parent[y]);
    }
    std::vector<VertexId> walk(up_a.begin(), up_a.end());
    for (std::size_t i = up_b.size() - 1; i-- > 0;) walk.push_back(up_b[i]);
    for (const auto& [e, s] : cycle_state(torus, walk)) u(e, col) = s;
  }
  return u;
}

IntegerMatrix face_state_matrix(const CubicTorus& torus) {
  IntegerMatrix m(torus.num_edges(), torus.num_faces());
  for (FaceId f = 0; f < torus.num_faces(); ++f)
    for (const auto& [e, s] : face_state(torus, CubicTorus::face(f)).entries) m(e, f) = s;
  return m;
}

std::size_t face_span_rank(const CubicTorus& torus, const RankOptions& opts) {
  return exact_rank(face_state_matrix(torus), opts).rank;
}

SpectrumReport flat_band_spectrum(const CubicTorus& torus, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const auto t = hopping_matrix(torus);
  const auto n = static_cast<Eigen::Index>(t.rows());
  Eigen::MatrixXd dense(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) dense(i, j) = static_cast<double>(t(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Numerical, "symmetric eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  SpectrumReport rep;
  rep.min_eigenvalue = ev.minCoeff();
  rep.max_eigenvalue = ev.maxCoeff();
  if (rep.min_eigenvalue < -tol)
    throw Error(ErrorKind::Numerical, "hopping matrix has an eigenvalue below -tol");
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(ev(i)) <= tol) ++rep.multiplicity;
  return rep;
}

std::size_t flat_band_multiplicity(const CubicTorus& torus, double tol) {
  return flat_band_spectrum(torus, tol).multiplicity;
}

double min_scaled_eigenvalue(const BigMatrix& gram) {
  if (!gram.square()) throw Error(ErrorKind::InvalidArgument, "Gram matrix must be square");
  const auto n = static_cast<Eigen::Index>(gram.rows());
  if (n == 0) return 0.0;
  // Work with mantissa/exponent pairs so that entries far beyond double range scale correctly.
  auto split = [](const BigInt& v) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::pair<double, long>{mant, exp};
  };
  std::vector<std::pair<double, long>> diag(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (gram(i, i) <= 0) throw Error(ErrorKind::InvalidArgument, "Gram diagonal must be positive");
    diag[i] = split(gram(i, i));
  }
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto [mant, exp] = split(gram(i, j));
      const double denom = std::sqrt(diag[i].first * diag[j].first);
      const double e = static_cast<double>(exp) - 0.5 * static_cast<double>(diag[i].second + diag[j].second);
      s(i, j) = mant / denom * std::exp2(e);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Numerical, "symmetric eigensolver did not converge");
  return solver.eigenvalues().minCoeff();
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace flatband

namespace flatband {

LatticeSummary summarize_lattice(const CubicTorus& torus, double tol) {
  LatticeSummary s;
  s.vertices = torus.num_vertices();
  s.edges = torus.num_edges();
  s.faces = torus.num_faces();

  const auto b = incidence_matrix(torus);
  s.min_degree = std::numeric_limits<int>::max();
  for (std::size_t v = 0; v < b.rows(); ++v) {
    int deg = 0;
    for (std::size_t e = 0; e < b.cols(); ++e) deg += static_cast<int>(b(v, e));
    s.min_degree = std::min(s.min_degree, deg);
    s.max_degree = std::max(s.max_degree, deg);
  }

  const auto adj = line_graph_adjacency(torus);
  s.min_line_degree = std::numeric_limits<int>::max();
  for (std::size_t e = 0; e < adj.rows(); ++e) {
    int deg = 0;
    for (std::size_t f = 0; f < adj.cols(); ++f) deg += static_cast<int>(adj(e, f));
    s.min_line_degree = std::min(s.min_line_degree, deg);
    s.max_line_degree = std::max(s.max_line_degree, deg);
  }

  const auto t = hopping_matrix(torus);
  s.hopping_diagonal_two = true;
  for (std::size_t e = 0; e < t.rows(); ++e) s.hopping_diagonal_two = s.hopping_diagonal_two && t(e, e) == 2;

  s.vertex_cliques = true;
  for (VertexId v = 0; v < torus.num_vertices() && s.vertex_cliques; ++v) {
    const auto inc = torus.incident_edges(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        if (adj(inc[i], inc[j]) != 1) s.vertex_cliques = false;
  }

  s.kernel_dim = kernel_dimension(torus);
  s.face_span_rank = face_span_rank(torus);
  s.spectrum = flat_band_spectrum(torus, tol);
  return s;
}

}  // namespace flatband
