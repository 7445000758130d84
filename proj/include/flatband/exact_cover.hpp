#pragma once

// Exact cover search: pick options (subsets of items) so that every item is
// covered exactly once. Column choice is the uncovered item with the fewest
// remaining options, ties broken by the lowest item id, and options of that
// item are tried in increasing id order. The visiting order is therefore a
// deterministic function of the problem.

#include "flatband/types.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace flatband {

struct SearchBudget {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0.0;     // 0 = unlimited
};

struct SearchStats {
  std::uint64_t nodes = 0;  // options placed
  double seconds = 0.0;
  bool completed = true;
};

class ExactCoverProblem {
 public:
  ExactCoverProblem(std::size_t num_items, std::vector<std::vector<std::uint32_t>> options);

  std::size_t num_items() const noexcept { return num_items_; }
  std::size_t num_options() const noexcept { return options_.size(); }
  std::span<const std::uint32_t> option(std::size_t o) const { return options_[o]; }
  std::span<const std::uint32_t> options_of(std::size_t item) const { return item_options_[item]; }

 private:
  std::size_t num_items_;
  std::vector<std::vector<std::uint32_t>> options_;
  std::vector<std::vector<std::uint32_t>> item_options_;
};

// Number of exact covers. With threads > 1 the tree is split at a shallow
// depth and subtrees are counted independently; the total does not depend
// on the thread count.
struct CoverCount {
  BigInt count;
  SearchStats stats;
};
CoverCount count_exact_covers(const ExactCoverProblem& problem, const SearchBudget& budget = {},
                              unsigned threads = 1);

// Visits covers in search order. The span holds the chosen option ids in
// placement order; returning false from the visitor stops the search
// (stats.completed stays true in that case).
using CoverVisitor = std::function<bool(std::span<const std::uint32_t>)>;
SearchStats enumerate_exact_covers(const ExactCoverProblem& problem, const CoverVisitor& visit,
                                   const SearchBudget& budget = {});

}  // namespace flatband
