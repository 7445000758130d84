#pragma once

// Closed-form brackets on the number of 4-cycle decompositions and on the
// degeneracy at critical filling, and the report that checks computed values
// against them. All formulas use the sorted extents L1 <= L2 <= L3.

#include "flatband/decomp.hpp"
#include "flatband/lattice.hpp"
#include "flatband/types.hpp"

#include <optional>

namespace flatband {

// 2^(L1 L2/4) + 2^(L1 L3/4) + 2^(L2 L3/4): towers with one family of columns rotated.
BigInt theorem1_lower(const TorusSpec& spec);

// Sum over the three choices of stacking axis k of [4 (2^(Li/2) + 2^(Lj/2))]^Lk.
BigInt theorem1_upper(const TorusSpec& spec);

// 2^(L2 L3 / 4): independently rotated columns along the shortest axis.
BigInt theorem2_lower(const TorusSpec& spec);

struct BoundsReport {
  TorusSpec spec{4, 4, 4};
  BigInt t1_lower;
  BigInt t1_upper;
  BigInt t2_lower;
  std::optional<CountResult> omega4;
  std::optional<std::size_t> span_rank;
  bool span_includes_rotated_family = false;
  std::optional<double> s4;  // ln omega4
  double s4_lower = 0.0;     // ln t1_lower
  double s4_upper = 0.0;     // ln t1_upper
  bool lower_confirmed = false;  // omega4 >= t1_lower (a partial count may fall short)
  bool upper_confirmed = false;  // omega4 <= t1_upper
  bool span_confirmed = false;   // span_rank >= t2_lower
};

// Natural log of a positive big integer.
double log_big(const BigInt& v);

// Fills in the brackets and checks the computed values against them.
// Error(BracketViolation) when a completed count leaves [t1_lower, t1_upper],
// any count exceeds t1_upper, or a span rank that includes the full rotated
// family falls below t2_lower.
BoundsReport assemble_report(const TorusSpec& spec, const std::optional<CountResult>& omega4,
                             const std::optional<std::size_t>& span_rank = std::nullopt,
                             bool span_includes_rotated_family = false);

}  // namespace flatband
