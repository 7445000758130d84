#include "flatband/exactalg.hpp"

#include <bit>
#include <cmath>
#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

namespace flatband {

namespace {

using i128 = __int128;

// Ryser: perm(A) = (-1)^n sum_{S subset cols} (-1)^{|S|} prod_i sum_{j in S} a_ij,
// visiting subsets in Gray-code order so each step adds or removes one column.
template <class Acc, class Mul>
Acc ryser(const IntegerMatrix& m, Mul&& mul_into) {
  const std::size_t n = m.rows();
  std::vector<std::int64_t> row_sum(n, 0);
  Acc total = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const std::uint64_t gray = k ^ (k >> 1);
    const std::uint64_t prev = (k - 1) ^ ((k - 1) >> 1);
    const std::size_t col = static_cast<std::size_t>(std::countr_zero(gray ^ prev));
    const bool added = (gray >> col) & 1;
    for (std::size_t i = 0; i < n; ++i) row_sum[i] += added ? m(i, col) : -m(i, col);
    Acc prod = 1;
    bool zero = false;
    for (std::size_t i = 0; i < n && !zero; ++i) {
      if (row_sum[i] == 0) zero = true;
      else mul_into(prod, row_sum[i]);
    }
    if (zero) continue;
    if (std::popcount(gray) % 2 == 1) total -= prod;
    else total += prod;
  }
  if (n % 2 == 1) total = -total;
  return total;
}

BigInt to_big(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi(static_cast<unsigned long>(u >> 64));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

}  // namespace

BigInt permanent(const IntegerMatrix& m, std::size_t cap) {
  if (!m.square()) throw Error(ErrorKind::InvalidArgument, "permanent requires a square matrix");
  const std::size_t n = m.rows();
  if (n > cap || n > 62)
    throw Error(ErrorKind::CapExceeded,
                "permanent of a " + std::to_string(n) + "x" + std::to_string(n) + " matrix exceeds cap " +
                    std::to_string(cap));
  if (n == 0) return 1;
  if (n == 1) return BigInt(static_cast<long>(m(0, 0)));

  // |row sums| never exceed the absolute row sums, so the terms are bounded by
  // prod_i sum_j |a_ij|; with 2^n terms the 128-bit accumulator is safe below 2^126.
  double log2_bound = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) < 0 ? -m(i, j) : m(i, j);
    if (s == 0) return 0;
    log2_bound += std::log2(static_cast<double>(s));
  }
  if (log2_bound < 124.0) {
    return to_big(ryser<i128>(m, [](i128& acc, std::int64_t v) { acc *= v; }));
  }
  return ryser<BigInt>(m, [](BigInt& acc, std::int64_t v) { acc *= static_cast<long>(v); });
}

namespace {

// Row-by-row expansion where the state is the set of used columns among the
// "open" columns: touched by an already processed row and by a later row.
// A column whose last row has been processed must be used by then.
template <class Acc>
Acc frontier_permanent(const IntegerMatrix& m, const std::vector<std::size_t>& order, std::size_t max_states) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> last_row(n, 0);
  std::vector<std::vector<std::size_t>> row_cols(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != 0) {
        row_cols[k].push_back(j);
        last_row[j] = k;
      }
  }
  std::vector<int> slot(n, -1);  // bit position of an open column
  std::vector<std::size_t> free_slots;
  for (std::size_t b = 64; b-- > 0;) free_slots.push_back(b);

  std::unordered_map<std::uint64_t, Acc> states{{0, Acc(1)}};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    for (std::size_t j : row_cols[k]) {
      if (slot[j] >= 0) continue;
      if (free_slots.empty())
        throw Error(ErrorKind::CapExceeded, "sparse permanent frontier exceeds 64 columns");
      slot[j] = static_cast<int>(free_slots.back());
      free_slots.pop_back();
    }
    std::uint64_t retire = 0;
    for (std::size_t j : row_cols[k])
      if (last_row[j] == k) retire |= std::uint64_t{1} << slot[j];

    std::unordered_map<std::uint64_t, Acc> next;
    next.reserve(states.size() * 2);
    for (const auto& [mask, coeff] : states) {
      for (std::size_t j : row_cols[k]) {
        const std::uint64_t bit = std::uint64_t{1} << slot[j];
        if (mask & bit) continue;
        const std::uint64_t used = mask | bit;
        if ((used & retire) != retire) continue;
        Acc term = coeff;
        term *= m(i, j);
        auto [it, fresh] = next.try_emplace(used & ~retire, std::move(term));
        if (!fresh) it->second += term;
      }
    }
    for (std::size_t j : row_cols[k])
      if (last_row[j] == k) {
        free_slots.push_back(static_cast<std::size_t>(slot[j]));
        slot[j] = -2;
      }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    states = std::move(next);
    if (states.size() > max_states)
      throw Error(ErrorKind::CapExceeded, "sparse permanent state count exceeds " + std::to_string(max_states));
    if (states.empty()) return Acc(0);
  }
  const auto it = states.find(0);
  return it == states.end() ? Acc(0) : it->second;
}

// Greedy ordering: repeatedly take the row that opens the fewest new columns
// net of the columns it closes.
std::vector<std::size_t> frontier_order(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> remaining_rows_of_col(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != 0) ++remaining_rows_of_col[j];
  std::vector<bool> open(n, false), done(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    long best_score = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      long score = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (m(i, j) == 0) continue;
        if (!open[j]) ++score;
        if (remaining_rows_of_col[j] == 1) --score;
      }
      if (best == n || score < best_score) {
        best = i;
        best_score = score;
      }
    }
    done[best] = true;
    order.push_back(best);
    for (std::size_t j = 0; j < n; ++j)
      if (m(best, j) != 0) {
        open[j] = --remaining_rows_of_col[j] > 0;
      }
  }
  return order;
}

}  // namespace

BigInt sparse_permanent(const IntegerMatrix& m, std::size_t max_states) {
  if (!m.square()) throw Error(ErrorKind::InvalidArgument, "permanent requires a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  double log2_bound = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) < 0 ? -m(i, j) : m(i, j);
    if (s == 0) return 0;
    log2_bound += std::log2(static_cast<double>(s));
  }
  const auto order = frontier_order(m);
  if (log2_bound < 124.0) return to_big(frontier_permanent<i128>(m, order, max_states));
  return frontier_permanent<BigInt>(m, order, max_states);
}

namespace {

struct Components {
  std::vector<std::vector<std::size_t>> rows, cols;
};

// Connected components of the bipartite graph rows <-> cols with an edge per
// nonzero entry. Isolated rows or columns form their own (non-square) components.
Components support_components(const IntegerMatrix& m) {
  const std::size_t n = m.rows(), k = m.cols();
  std::vector<std::size_t> parent(n + k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (m(i, j) != 0) {
        const auto a = find(i), b = find(n + j);
        if (a != b) parent[a] = b;
      }
  std::vector<std::size_t> slot(n + k, SIZE_MAX);
  Components c;
  for (std::size_t x = 0; x < n + k; ++x) {
    const auto root = find(x);
    if (slot[root] == SIZE_MAX) {
      slot[root] = c.rows.size();
      c.rows.emplace_back();
      c.cols.emplace_back();
    }
    if (x < n) c.rows[slot[root]].push_back(x);
    else c.cols[slot[root]].push_back(x - n);
  }
  return c;
}

}  // namespace

std::vector<std::size_t> permanent_block_sizes(const IntegerMatrix& m) {
  const auto comps = support_components(m);
  std::vector<std::size_t> sizes;
  for (std::size_t b = 0; b < comps.rows.size(); ++b) {
    if (comps.rows[b].size() != comps.cols[b].size()) return {};
    sizes.push_back(comps.rows[b].size());
  }
  return sizes;
}

BigInt block_permanent(const IntegerMatrix& m, const PermanentOptions& opts) {
  if (!m.square()) throw Error(ErrorKind::InvalidArgument, "permanent requires a square matrix");
  if (m.rows() == 0) return 1;
  const auto comps = support_components(m);
  for (std::size_t b = 0; b < comps.rows.size(); ++b)
    if (comps.rows[b].size() != comps.cols[b].size()) return 0;

  BigInt result = 1;
  for (std::size_t b = 0; b < comps.rows.size(); ++b) {
    const auto& rs = comps.rows[b];
    const auto& cs = comps.cols[b];
    if (rs.size() == 1) {
      result *= static_cast<long>(m(rs[0], cs[0]));
      continue;
    }
    const std::size_t n = rs.size();
    const bool use_sparse = opts.sparse_fallback && n > opts.ryser_max_block;
    if (!use_sparse && n > opts.cap)
      throw Error(ErrorKind::CapExceeded, "permanent block of size " + std::to_string(n) + " exceeds cap " +
                                              std::to_string(opts.cap));
    IntegerMatrix sub(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sub(i, j) = m(rs[i], cs[j]);
    if (use_sparse) {
      try {
        result *= sparse_permanent(sub, opts.max_states);
      } catch (const Error& e) {
        throw Error(ErrorKind::CapExceeded,
                    "permanent block of size " + std::to_string(n) + " is intractable: " + e.what());
      }
    } else {
      result *= permanent(sub, opts.cap);
    }
    if (result == 0) break;
  }
  return result;
}

}  // namespace flatband
