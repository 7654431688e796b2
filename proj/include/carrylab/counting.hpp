#pragma once

// Exact counting of large digits and self-addition carries over power
// sequences, the closed-form bounds they are measured against, and the
// central-binomial divisibility counter built on Kummer's theorem: the
// exact power of p dividing C(2n, n) equals the number of carries when n
// is added to itself in base p, so divisibility questions about
// C(2^(s+1), 2^s) reduce to carry counts of 2^s and never need the
// binomial itself.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carrylab/numctx.hpp"

namespace carrylab {

uint64_t count_large_digits(const DigitVec& v);
uint32_t self_add_carries(const DigitVec& v);

inline constexpr uint64_t kBruteForceCap = 100'000;

// Per-exponent counts for alpha^s, s in [0, count): number of large digits
// and number of self-addition carries, both at full precision.
struct PowerStats {
  std::vector<uint32_t> large;
  std::vector<uint32_t> carries;
};
PowerStats power_stats(uint64_t p, uint64_t alpha, uint64_t count, uint64_t cap = kBruteForceCap);

struct SCount {
  uint64_t count = 0;
  std::vector<uint64_t> members;
};
// #{0 <= s < a : alpha^s has fewer than n large digits in base p}
SCount s_count(const BasePContext& ctx, uint32_t n, uint64_t a, bool want_members = false,
               uint64_t cap = kBruteForceCap);

// closed-form bounds, evaluated in extended precision
long double bound_ssp1(const BasePContext& ctx, uint64_t s, uint32_t t);
long double bound_s31(const BasePContext& ctx, uint64_t a);
long double bound_sp1(const BasePContext& ctx, uint64_t a);
long double bound_spn_inter(const BasePContext& ctx, uint64_t s, uint32_t t, uint32_t n);
long double bound_spn(const BasePContext& ctx, uint64_t a, uint32_t n);

// Comparisons give the bound a 1e-9 relative slack, never the count.
inline constexpr long double kBoundSlack = 1e-9L;

struct CountReport {
  std::string bound_name;  // SsP1 | S31 | SP1 | SpnInter | SPN
  uint64_t p = 0;
  uint64_t alpha = 0;
  uint64_t n = 0;
  uint64_t a = 0;
  uint64_t exact_count = 0;
  long double bound_value = 0.0L;
  bool satisfied = false;
  std::optional<std::vector<uint64_t>> members;
};
CountReport make_report(const std::string& bound_name, const BasePContext& ctx, uint64_t n,
                        uint64_t a, uint64_t exact, long double bound);
std::string report_json_line(const CountReport& r);

// Sweeps every applicable inequality up to a_max from one full-precision
// profile: SsP1 and SpnInter on their grid points, S31 (p = 3,
// alpha = 2 mod 3) and SP1 for every a, SPN for a >= gamma*p, with the
// large-digit thresholds in ns.
struct BoundSweep {
  uint64_t checked = 0;
  std::vector<CountReport> violations;
};
BoundSweep sweep_bounds(const BasePContext& ctx, uint64_t a_max, const std::vector<uint32_t>& ns,
                        uint64_t cap = kBruteForceCap);

std::vector<std::pair<uint64_t, uint32_t>> factor_odd(uint64_t m);

// #{0 <= s < a : m does not divide C(2^(s+1), 2^s)} for odd m > 1
struct ChampCount {
  uint64_t m = 0;
  uint64_t a = 0;
  uint64_t count = 0;
  std::vector<uint64_t> members;
  std::vector<std::pair<uint64_t, uint32_t>> factors;
};
ChampCount champ_count(uint64_t m, uint64_t a, bool want_members = false,
                       uint64_t cap = kBruteForceCap);

}  // namespace carrylab
