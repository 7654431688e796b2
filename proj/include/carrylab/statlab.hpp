#pragma once

// Growth study of eps_p(C(2^(k+1), 2^k)), the exact power of p in the
// central binomial coefficient, which equals the self-addition carry
// count of 2^k in base p. A slope of log(2)/(2 log p) models the growth;
// the series reports the least-squares slope through the origin and the
// largest residual measured in units of sqrt(k).

#include <cstdint>
#include <string>
#include <vector>

namespace carrylab {

struct EpsSeries {
  uint64_t p = 0;
  std::vector<uint64_t> k_values;
  std::vector<uint32_t> eps_values;
  long double predicted_slope = 0.0L;
  long double fitted_slope = 0.0L;
  long double residual_scale = 0.0L;  // max |eps - predicted*k| / sqrt(k), k >= 1
};

inline constexpr uint64_t kStatsCap = 20'000;

EpsSeries eps_series(uint64_t p, uint64_t k_from, uint64_t k_to, uint64_t stride = 1,
                     uint64_t cap = kStatsCap);

// "k,eps,predicted" rows; predicted = predicted_slope * k
std::string eps_csv(const EpsSeries& s);
std::string eps_summary_json(const EpsSeries& s);

}  // namespace carrylab
