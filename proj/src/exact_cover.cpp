#include "flatband/exact_cover.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <thread>

namespace flatband {

ExactCoverProblem::ExactCoverProblem(std::size_t num_items, std::vector<std::vector<std::uint32_t>> options)
    : num_items_(num_items), options_(std::move(options)), item_options_(num_items) {
  for (std::size_t o = 0; o < options_.size(); ++o) {
    for (auto item : options_[o]) {
      if (item >= num_items_) throw Error(ErrorKind::InvalidArgument, "option references unknown item");
      item_options_[item].push_back(static_cast<std::uint32_t>(o));
    }
  }
}

namespace {

using Clock = std::chrono::steady_clock;

class Budget {
 public:
  Budget(const SearchBudget& b, Clock::time_point start, std::atomic<std::uint64_t>* shared_nodes)
      : limits_(b), start_(start), shared_(shared_nodes) {}

  // Counts one node; false once the node or time budget is spent.
  bool charge() {
    ++local_;
    std::uint64_t seen = local_;
    if (shared_) {
      if ((local_ & 0xff) == 0) shared_->fetch_add(0x100, std::memory_order_relaxed);
      seen = shared_->load(std::memory_order_relaxed) + (local_ & 0xff);
    }
    if (limits_.max_nodes && seen > limits_.max_nodes) ok_ = false;
    if (limits_.max_seconds > 0 && (local_ & 0x3ff) == 0 &&
        std::chrono::duration<double>(Clock::now() - start_).count() > limits_.max_seconds)
      ok_ = false;
    return ok_;
  }

  void flush() {
    if (shared_) shared_->fetch_add(local_ & 0xff, std::memory_order_relaxed);
  }
  bool exhausted() const { return !ok_; }
  std::uint64_t local_nodes() const { return local_; }

 private:
  SearchBudget limits_;
  Clock::time_point start_;
  std::atomic<std::uint64_t>* shared_;
  std::uint64_t local_ = 0;
  bool ok_ = true;
};

class Solver {
 public:
  explicit Solver(const ExactCoverProblem& p)
      : p_(p),
        covered_(p.num_items(), 0),
        available_(p.num_options(), 1),
        remaining_(p.num_items()),
        uncovered_(p.num_items()) {
    for (std::size_t i = 0; i < p.num_items(); ++i)
      remaining_[i] = static_cast<std::uint32_t>(p.options_of(i).size());
  }

  bool done() const { return uncovered_ == 0; }

  // Uncovered item with the fewest available options; SIZE_MAX when fully covered.
  std::size_t choose() const {
    std::size_t best = SIZE_MAX;
    std::uint32_t best_count = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t i = 0; i < p_.num_items(); ++i) {
      if (covered_[i] || remaining_[i] >= best_count) continue;
      best = i;
      best_count = remaining_[i];
      if (best_count == 0) break;
    }
    return best;
  }

  std::uint32_t remaining(std::size_t item) const { return remaining_[item]; }
  bool available(std::uint32_t o) const { return available_[o] != 0; }

  void place(std::uint32_t o) {
    marks_.push_back(removed_.size());
    chosen_.push_back(o);
    for (auto item : p_.option(o)) {
      covered_[item] = 1;
      --uncovered_;
      for (auto other : p_.options_of(item)) {
        if (!available_[other]) continue;
        available_[other] = 0;
        removed_.push_back(other);
        for (auto j : p_.option(other)) --remaining_[j];
      }
    }
  }

  void unplace() {
    const std::size_t mark = marks_.back();
    marks_.pop_back();
    const std::uint32_t o = chosen_.back();
    chosen_.pop_back();
    while (removed_.size() > mark) {
      const auto other = removed_.back();
      removed_.pop_back();
      available_[other] = 1;
      for (auto j : p_.option(other)) ++remaining_[j];
    }
    for (auto item : p_.option(o)) {
      covered_[item] = 0;
      ++uncovered_;
    }
  }

  std::span<const std::uint32_t> chosen() const { return chosen_; }
  const ExactCoverProblem& problem() const { return p_; }

 private:
  const ExactCoverProblem& p_;
  std::vector<std::uint8_t> covered_;
  std::vector<std::uint8_t> available_;
  std::vector<std::uint32_t> remaining_;
  std::size_t uncovered_;
  std::vector<std::uint32_t> removed_;
  std::vector<std::size_t> marks_;
  std::vector<std::uint32_t> chosen_;
};

// Counting path: no solution is materialized.
std::uint64_t count_from(Solver& s, Budget& budget) {
  if (s.done()) return 1;
  const std::size_t item = s.choose();
  if (s.remaining(item) == 0) return 0;
  std::uint64_t total = 0;
  for (auto o : s.problem().options_of(item)) {
    if (!s.available(o)) continue;
    if (!budget.charge()) return total;
    s.place(o);
    total += count_from(s, budget);
    s.unplace();
    if (budget.exhausted()) return total;
  }
  return total;
}

// Returns false when the visitor asked to stop or the budget ran out.
bool enumerate_from(Solver& s, Budget& budget, const CoverVisitor& visit) {
  if (s.done()) return visit(s.chosen());
  const std::size_t item = s.choose();
  if (s.remaining(item) == 0) return true;
  for (auto o : s.problem().options_of(item)) {
    if (!s.available(o)) continue;
    if (!budget.charge()) return false;
    s.place(o);
    const bool go_on = enumerate_from(s, budget, visit);
    s.unplace();
    if (!go_on) return false;
  }
  return true;
}

// Collects the search-tree frontier at `depth` (in search order). Covers found
// above that depth are counted directly.
void frontier(Solver& s, std::size_t depth, std::vector<std::vector<std::uint32_t>>& out, std::uint64_t& shallow) {
  if (s.done()) {
    ++shallow;
    return;
  }
  if (s.chosen().size() == depth) {
    out.emplace_back(s.chosen().begin(), s.chosen().end());
    return;
  }
  const std::size_t item = s.choose();
  if (s.remaining(item) == 0) return;
  for (auto o : s.problem().options_of(item)) {
    if (!s.available(o)) continue;
    s.place(o);
    frontier(s, depth, out, shallow);
    s.unplace();
  }
}

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

CoverCount count_exact_covers(const ExactCoverProblem& problem, const SearchBudget& budget, unsigned threads) {
  const auto start = Clock::now();
  CoverCount result;
  if (threads <= 1) {
    Solver s(problem);
    Budget b(budget, start, nullptr);
    result.count = static_cast<unsigned long>(count_from(s, b));
    result.stats = {b.local_nodes(), elapsed(start), !b.exhausted()};
    return result;
  }

  std::vector<std::vector<std::uint32_t>> prefixes;
  std::uint64_t shallow = 0;
  {
    Solver s(problem);
    frontier(s, 3, prefixes, shallow);
  }
  std::atomic<std::uint64_t> shared_nodes{0};
  std::atomic<std::size_t> next{0};
  std::atomic<bool> exhausted{false};
  std::vector<std::uint64_t> per_prefix(prefixes.size(), 0);
  auto worker = [&] {
    Solver s(problem);
    Budget b(budget, start, &shared_nodes);
    for (std::size_t k; !exhausted && (k = next.fetch_add(1)) < prefixes.size();) {
      for (auto o : prefixes[k]) s.place(o);
      per_prefix[k] = count_from(s, b);
      for (std::size_t i = 0; i < prefixes[k].size(); ++i) s.unplace();
      if (b.exhausted()) exhausted = true;
    }
    b.flush();
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  BigInt total = static_cast<unsigned long>(shallow);
  for (auto c : per_prefix) total += static_cast<unsigned long>(c);
  result.count = total;
  result.stats = {shared_nodes.load(), elapsed(start), !exhausted.load()};
  return result;
}

SearchStats enumerate_exact_covers(const ExactCoverProblem& problem, const CoverVisitor& visit,
                                   const SearchBudget& budget) {
  const auto start = Clock::now();
  Solver s(problem);
  Budget b(budget, start, nullptr);
  enumerate_from(s, b, visit);
  return {b.local_nodes(), elapsed(start), !b.exhausted()};
}

}  // namespace flatband
