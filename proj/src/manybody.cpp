#include "flatband/manybody.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

namespace flatband {

FaceProductState::FaceProductState(std::vector<FaceId> faces) : faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end());
}

std::int64_t single_particle_overlap(const CubicTorus& torus, FaceId f, FaceId g) {
  const auto sf = face_state(torus, CubicTorus::face(f));
  const auto sg = face_state(torus, CubicTorus::face(g));
  std::int64_t s = 0;
  for (const auto& x : sf.entries)
    for (const auto& y : sg.entries)
      if (x.edge == y.edge) s += x.sign * y.sign;
  return s;
}

IntegerMatrix overlap_matrix(const CubicTorus& torus, const FaceProductState& a, const FaceProductState& b) {
  const auto& fa = a.faces();
  const auto& fb = b.faces();
  for (FaceId f : fa)
    if (f >= torus.num_faces()) throw Error(ErrorKind::InvalidArgument, "face id out of range");
  for (FaceId f : fb)
    if (f >= torus.num_faces()) throw Error(ErrorKind::InvalidArgument, "face id out of range");

  // Column positions of each face of B (a face may appear more than once).
  std::unordered_map<FaceId, std::vector<std::size_t>> cols;
  for (std::size_t j = 0; j < fb.size(); ++j) cols[fb[j]].push_back(j);

  IntegerMatrix m(fa.size(), fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const auto si = face_state(torus, CubicTorus::face(fa[i]));
    for (const auto& x : si.entries) {
      for (FaceId g : torus.faces_of_edge(x.edge)) {
        const auto it = cols.find(g);
        if (it == cols.end()) continue;
        int sign = 0;
        for (const auto& y : face_state(torus, CubicTorus::face(g)).entries)
          if (y.edge == x.edge) sign = y.sign;
        for (std::size_t j : it->second) m(i, j) += x.sign * sign;
      }
    }
  }
  return m;
}

BigInt state_overlap(const CubicTorus& torus, const FaceProductState& a, const FaceProductState& b,
                     const PermanentOptions& opts) {
  if (a.particles() != b.particles())
    throw Error(ErrorKind::InvalidArgument, "particle numbers differ (" + std::to_string(a.particles()) +
                                                " vs " + std::to_string(b.particles()) + ")");
  return block_permanent(overlap_matrix(torus, a, b), opts);
}

BigMatrix gram_matrix(const CubicTorus& torus, const std::vector<FaceProductState>& states,
                      const PermanentOptions& opts, unsigned threads) {
  const std::size_t n = states.size();
  for (const auto& s : states)
    if (s.particles() != states.front().particles())
      throw Error(ErrorKind::InvalidArgument, "gram matrix needs equal particle numbers");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);

  BigMatrix g(n, n);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = pairs.size();
  std::string failure;
  auto work = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) {
      const auto [i, j] = pairs[k];
      try {
        BigInt v = state_overlap(torus, states[i], states[j], opts);
        g(i, j) = v;
        if (i != j) g(j, i) = std::move(v);
      } catch (const Error& e) {
        std::lock_guard lock(mu);
        if (k < failed_at) {
          failed_at = k;
          failure = "overlap of states " + std::to_string(i) + " and " + std::to_string(j) + ": " + e.what();
        }
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pairs.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failed_at < pairs.size()) throw Error(ErrorKind::CapExceeded, failure);
  return g;
}

std::size_t gram_rank(const BigMatrix& gram, const RankOptions& opts) { return exact_rank(gram, opts).rank; }

std::size_t gram_rank(const CubicTorus& torus, const std::vector<FaceProductState>& states,
                      const PermanentOptions& popts, unsigned threads) {
  if (states.empty()) return 0;
  return gram_rank(gram_matrix(torus, states, popts, threads));
}

std::vector<FaceProductState> rotated_family(const CubicTorus& torus) {
  const auto tower = tower_decomposition(torus);
  const auto columns = rotatable_columns(torus, tower, Axis::X);
  if (columns.size() > kMaxFamilyColumns)
    throw Error(ErrorKind::CapExceeded, std::to_string(columns.size()) + " rotatable columns exceed the family cap of " +
                                            std::to_string(kMaxFamilyColumns));
  const std::size_t count = std::size_t{1} << columns.size();
  std::vector<FaceProductState> out;
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Decomposition d = tower;
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (mask >> c & 1) d = rotate_column(torus, d, columns[c]);
    out.emplace_back(d);
  }
  return out;
}

FamilyRankReport rotated_family_rank(const CubicTorus& torus, unsigned threads) {
  const auto family = rotated_family(torus);
  FamilyRankReport rep;
  rep.states = family.size();
  rep.columns = static_cast<std::size_t>(std::countr_zero(family.size()));
  rep.all_valid = std::all_of(family.begin(), family.end(), [&](const FaceProductState& s) {
    return verify_decomposition(torus, Decomposition(s.faces())).valid;
  });
  const auto g = gram_matrix(torus, family, {}, threads);
  rep.rank = gram_rank(g);
  rep.min_scaled_eigenvalue = min_scaled_eigenvalue(g);
  return rep;
}

ColumnGramReport column_gram_check(int length) {
  const CubicTorus torus{TorusSpec(4, 4, length)};
  const auto tower = tower_decomposition(torus);
  const auto columns = rotatable_columns(torus, tower, Axis::Z);
  if (columns.empty()) throw Error(ErrorKind::Numerical, "tower has no rotatable column along Z");
  const auto patterns = column_patterns(torus, columns.front());
  const FaceProductState up(patterns[0]), down(patterns[1]);

  ColumnGramReport rep;
  rep.length = length;
  rep.self_up = state_overlap(torus, up, up);
  rep.self_down = state_overlap(torus, down, down);
  rep.cross = state_overlap(torus, up, down);
  rep.det = rep.self_up * rep.self_down - rep.cross * rep.cross;
  mpz_ui_pow_ui(rep.expected_self.get_mpz_t(), 4, 2 * static_cast<unsigned long>(length));
  rep.ok = rep.self_up == rep.expected_self && rep.self_down == rep.expected_self &&
           abs(rep.cross) < rep.expected_self && rep.det > 0;
  return rep;
}

SpanRankReport decomposition_span_rank(const CubicTorus& torus, std::size_t limit, unsigned threads,
                                       const PermanentOptions& opts) {
  std::vector<FaceProductState> states;
  for (const auto& d : enumerate_decompositions(torus, limit)) states.emplace_back(d);
  SpanRankReport rep;
  rep.limit = limit;
  rep.states = states.size();
  if (states.empty()) return rep;
  const auto g = gram_matrix(torus, states, opts, threads);
  rep.rank = gram_rank(g);
  rep.min_scaled_eigenvalue = min_scaled_eigenvalue(g);
  return rep;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

EntropyReport dilution_entropy(std::uint64_t critical_particles, std::uint64_t particles) {
  if (particles > critical_particles)
    throw Error(ErrorKind::InvalidArgument, "particle number " + std::to_string(particles) +
                                                " exceeds critical number " + std::to_string(critical_particles));
  EntropyReport rep;
  rep.critical_particles = critical_particles;
  rep.particles = particles;
  rep.count = binomial(critical_particles, particles);
  if (critical_particles > 0) {
    rep.density = static_cast<double>(particles) / (4.0 * static_cast<double>(critical_particles));
    rep.bound = binary_entropy(static_cast<double>(particles) / static_cast<double>(critical_particles)) / 4.0;
  }
  return rep;
}

}  // namespace flatband
