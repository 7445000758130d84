#include "flatband/bounds.hpp"

#include <cmath>
#include <string>

namespace flatband {

namespace {

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

BigInt pow_big(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

unsigned long ul(int v) { return static_cast<unsigned long>(v); }

}  // namespace

BigInt theorem1_lower(const TorusSpec& s) {
  return pow2(ul(s.L1() * s.L2() / 4)) + pow2(ul(s.L1() * s.L3() / 4)) + pow2(ul(s.L2() * s.L3() / 4));
}

BigInt theorem1_upper(const TorusSpec& s) {
  const auto& L = s.extents();
  BigInt total = 0;
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    const BigInt base = 4 * (pow2(ul(L[i] / 2)) + pow2(ul(L[j] / 2)));
    total += pow_big(base, ul(L[k]));
  }
  return total;
}

BigInt theorem2_lower(const TorusSpec& s) { return pow2(ul(s.L2() * s.L3() / 4)); }

double log_big(const BigInt& v) {
  if (v <= 0) throw Error(ErrorKind::InvalidArgument, "log of a non-positive integer");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

BoundsReport assemble_report(const TorusSpec& spec, const std::optional<CountResult>& omega4,
                             const std::optional<std::size_t>& span_rank, bool span_includes_rotated_family) {
  BoundsReport r;
  r.spec = spec;
  r.t1_lower = theorem1_lower(spec);
  r.t1_upper = theorem1_upper(spec);
  r.t2_lower = theorem2_lower(spec);
  r.omega4 = omega4;
  r.span_rank = span_rank;
  r.span_includes_rotated_family = span_includes_rotated_family;
  r.s4_lower = log_big(r.t1_lower);
  r.s4_upper = log_big(r.t1_upper);
  if (r.t1_lower > r.t1_upper)
    throw Error(ErrorKind::BracketViolation, "lower bound exceeds upper bound for " + spec.label());

  if (omega4) {
    const BigInt& n = omega4->count;
    if (n > 0) r.s4 = log_big(n);
    r.lower_confirmed = n >= r.t1_lower;
    r.upper_confirmed = n <= r.t1_upper;
    if (!r.upper_confirmed)
      throw Error(ErrorKind::BracketViolation, "decomposition count " + n.get_str() + " exceeds upper bound " +
                                                   r.t1_upper.get_str() + " for " + spec.label());
    if (omega4->completed && !r.lower_confirmed)
      throw Error(ErrorKind::BracketViolation, "complete decomposition count " + n.get_str() +
                                                   " is below lower bound " + r.t1_lower.get_str() + " for " +
                                                   spec.label());
  }
  if (span_rank) {
    r.span_confirmed = BigInt(static_cast<unsigned long>(*span_rank)) >= r.t2_lower;
    if (span_includes_rotated_family && !r.span_confirmed)
      throw Error(ErrorKind::BracketViolation, "span rank " + std::to_string(*span_rank) +
                                                   " is below degeneracy bound " + r.t2_lower.get_str() + " for " +
                                                   spec.label());
  }
  return r;
}

}  // namespace flatband
