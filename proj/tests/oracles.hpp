#pragma once

// Slow, independent reference computations. Nothing here calls into the
// library: lattices are rebuilt from coordinates and every algorithm is the
// most direct one available.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<long>>;

// Sum over all permutations.
inline mpz_class leibniz_permanent(const Mat& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  mpz_class total = 0;
  if (n == 0) return 1;
  do {
    mpz_class prod = 1;
    for (std::size_t i = 0; i < n; ++i) prod *= m[i][p[i]];
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Row-by-row DP over the set of used columns (n <= 24).
inline mpz_class subset_dp_permanent(const Mat& m) {
  const std::size_t n = m.size();
  std::vector<mpz_class> dp(std::size_t{1} << n, 0);
  dp[0] = 1;
  for (std::uint32_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask] == 0) continue;
    const std::size_t row = static_cast<std::size_t>(__builtin_popcount(mask));
    if (row == n) continue;
    for (std::size_t c = 0; c < n; ++c)
      if (!(mask >> c & 1) && m[row][c] != 0) dp[mask | (1u << c)] += dp[mask] * m[row][c];
  }
  return dp.back();
}

inline mpz_class pascal_binomial(unsigned n, unsigned k) {
  std::vector<mpz_class> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<mpz_class> next(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return k <= n ? row[k] : mpz_class(0);
}

// Cubic torus rebuilt from scratch. An edge is (vertex, direction); a face is
// the set of its four edges.
struct Torus {
  int L[3];
  int nv;

  Torus(int a, int b, int c) : L{a, b, c}, nv(a * b * c) {}

  int vid(int x, int y, int z) const {
    x = ((x % L[0]) + L[0]) % L[0];
    y = ((y % L[1]) + L[1]) % L[1];
    z = ((z % L[2]) + L[2]) % L[2];
    return x + L[0] * (y + L[1] * z);
  }
  std::array<int, 3> xyz(int v) const { return {v % L[0], (v / L[0]) % L[1], v / (L[0] * L[1])}; }
  int step(int v, int dir, int d) const {
    auto c = xyz(v);
    c[dir] += d;
    return vid(c[0], c[1], c[2]);
  }
  int edge(int v, int dir) const { return 3 * v + dir; }
  int ne() const { return 3 * nv; }

  // Edges of the unit square at v spanned by directions p < q (or any p != q).
  std::array<int, 4> square(int v, int p, int q) const {
    return {edge(v, p), edge(step(v, p, 1), q), edge(step(v, q, 1), p), edge(v, q)};
  }

  std::vector<std::array<int, 4>> all_squares() const {
    std::vector<std::array<int, 4>> out;
    for (int v = 0; v < nv; ++v)
      for (auto [p, q] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) out.push_back(square(v, p, q));
    return out;
  }
};

// Exact covers of the edges by squares: always branch on the lowest uncovered
// edge and try every square through it.
inline std::uint64_t count_square_covers(const Torus& t) {
  const auto squares = t.all_squares();
  std::vector<std::vector<int>> through(t.ne());
  for (int s = 0; s < static_cast<int>(squares.size()); ++s)
    for (int e : squares[s]) through[e].push_back(s);
  std::vector<char> covered(t.ne(), 0);
  std::uint64_t count = 0;
  std::function<void(int)> go = [&](int from) {
    while (from < t.ne() && covered[from]) ++from;
    if (from == t.ne()) {
      ++count;
      return;
    }
    for (int s : through[from]) {
      const auto& sq = squares[s];
      if (std::any_of(sq.begin(), sq.end(), [&](int e) { return covered[e]; })) continue;
      for (int e : sq) covered[e] = 1;
      go(from + 1);
      for (int e : sq) covered[e] = 0;
    }
  };
  go(0);
  return count;
}

// Perfect 2x2 packings of the La x Lb torus by trying every anchor subset of
// size La*Lb/4. Returns sorted anchor lists.
inline std::set<std::vector<std::pair<int, int>>> brute_force_packings(int La, int Lb) {
  const int cells = La * Lb, k = cells / 4;
  std::set<std::vector<std::pair<int, int>>> out;
  std::vector<int> pick(k);
  std::function<void(int, int)> choose = [&](int start, int depth) {
    if (depth == k) {
      std::vector<int> cover(cells, 0);
      for (int a : pick) {
        const int x = a % La, y = a / La;
        for (int dx = 0; dx < 2; ++dx)
          for (int dy = 0; dy < 2; ++dy) ++cover[(x + dx) % La + La * ((y + dy) % Lb)];
      }
      if (std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; })) {
        std::vector<std::pair<int, int>> anchors;
        for (int a : pick) anchors.emplace_back(a % La, a / La);
        std::sort(anchors.begin(), anchors.end());
        out.insert(anchors);
      }
      return;
    }
    for (int a = start; a < cells; ++a) {
      pick[depth] = a;
      choose(a + 1, depth + 1);
    }
  };
  choose(0, 0);
  return out;
}

// Arithmetic mod a fixed prime.
constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}
inline std::uint64_t reduce(long v) {
  const long p = static_cast<long>(kPrime);
  const long m = v % p;
  return static_cast<std::uint64_t>(m < 0 ? m + p : m);
}

// In-place row reduction; returns the pivot column of each pivot row.
inline std::vector<std::size_t> row_reduce(std::vector<std::vector<std::uint64_t>>& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const std::uint64_t inv = powmod(a[r][c], kPrime - 2);
    for (auto& x : a[r]) x = mulmod(x, inv);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j]) a[i][j] = (a[i][j] + kPrime - mulmod(f, a[r][j])) % kPrime;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank_mod(std::vector<std::vector<std::uint64_t>> a) { return row_reduce(a).size(); }

// Signed kernel vector of a square: edges oriented from even to odd vertex,
// +1 when the walk v0 -> v1 -> v2 -> v3 -> v0 follows that orientation.
inline std::map<int, long> square_state(const Torus& t, int v, int p, int q) {
  const int v1 = t.step(v, p, 1), v2 = t.step(v1, q, 1), v3 = t.step(v, q, 1);
  const int walk[5] = {v, v1, v2, v3, v};
  const int dirs[4] = {p, q, p, q};
  const int bases[4] = {v, v1, v3, v};
  std::map<int, long> s;
  for (int k = 0; k < 4; ++k) {
    auto c = t.xyz(walk[k]);
    const int parity = (c[0] + c[1] + c[2]) & 1;
    s[t.edge(bases[k], dirs[k])] = parity == 0 ? 1 : -1;
  }
  return s;
}

// Rank of the span of all square states, mod p.
inline std::size_t square_span_rank(const Torus& t) {
  std::vector<std::vector<std::uint64_t>> rows;
  for (int v = 0; v < t.nv; ++v)
    for (auto [p, q] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 0}}) {
      std::vector<std::uint64_t> r(t.ne(), 0);
      for (auto [e, s] : square_state(t, v, p, q)) r[e] = reduce(s);
      rows.push_back(std::move(r));
    }
  return rank_mod(rows);
}

// Basis of the kernel of the 0/1 incidence matrix mod p, one vector per free column.
inline std::vector<std::vector<std::uint64_t>> incidence_kernel_mod(const Torus& t) {
  std::vector<std::vector<std::uint64_t>> b(t.nv, std::vector<std::uint64_t>(t.ne(), 0));
  for (int v = 0; v < t.nv; ++v)
    for (int d = 0; d < 3; ++d) {
      b[v][t.edge(v, d)] = 1;
      b[t.step(v, d, 1)][t.edge(v, d)] = 1;
    }
  const auto pivots = row_reduce(b);
  std::vector<bool> is_pivot(t.ne(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (int f = 0; f < t.ne(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint64_t> y(t.ne(), 0);
    y[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) y[pivots[r]] = (kPrime - b[r][f]) % kPrime;
    basis.push_back(std::move(y));
  }
  return basis;
}

// Rank of the no-double-occupancy constraints on Sym^2 of the kernel, mod p.
inline std::size_t two_boson_constraint_rank(const Torus& t) {
  const auto k = incidence_kernel_mod(t);
  const std::size_t d = k.size();
  std::vector<std::vector<std::uint64_t>> rows(t.ne());
  for (int e = 0; e < t.ne(); ++e) {
    rows[e].reserve(d * (d + 1) / 2);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) rows[e].push_back(mulmod(k[i][e], k[j][e]));
  }
  return rank_mod(rows);
}

}  // namespace oracle
