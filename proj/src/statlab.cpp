#include "carrylab/statlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "carrylab/counting.hpp"
#include "carrylab/errors.hpp"
#include "carrylab/modmath.hpp"

namespace carrylab {

EpsSeries eps_series(uint64_t p, uint64_t k_from, uint64_t k_to, uint64_t stride, uint64_t cap) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
    raise(Errc::NonPrimeBase, "series base must be an odd prime");
  if (stride < 1) raise(Errc::DomainViolation, "stride must be >= 1");
  if (k_from > k_to) raise(Errc::DomainViolation, "empty exponent range");
  if (k_to > cap)
    raise(Errc::CapExceeded,
          "k_to = " + std::to_string(k_to) + " exceeds cap " + std::to_string(cap));

  PowerStats st = power_stats(p, 2, k_to + 1, cap + 1);

  EpsSeries s;
  s.p = p;
  s.predicted_slope = std::log(2.0L) / (2.0L * std::log(static_cast<long double>(p)));
  for (uint64_t k = k_from; k <= k_to; k += stride) {
    s.k_values.push_back(k);
    s.eps_values.push_back(st.carries[k]);
  }

  long double sum_ke = 0.0L, sum_kk = 0.0L;
  for (size_t i = 0; i < s.k_values.size(); ++i) {
    const long double k = static_cast<long double>(s.k_values[i]);
    sum_ke += k * s.eps_values[i];
    sum_kk += k * k;
  }
  if (sum_kk == 0.0L) raise(Errc::DomainViolation, "slope fit needs a point with k > 0");
  s.fitted_slope = sum_ke / sum_kk;

  for (size_t i = 0; i < s.k_values.size(); ++i) {
    if (s.k_values[i] == 0) continue;
    const long double k = static_cast<long double>(s.k_values[i]);
    const long double resid =
        std::fabs(static_cast<long double>(s.eps_values[i]) - s.predicted_slope * k) /
        std::sqrt(k);
    s.residual_scale = std::max(s.residual_scale, resid);
  }
  return s;
}

std::string eps_csv(const EpsSeries& s) {
  if (s.k_values.empty()) raise(Errc::EmptySeries, "no points to report");
  std::string out = "k,eps,predicted\n";
  char buf[64];
  for (size_t i = 0; i < s.k_values.size(); ++i) {
    snprintf(buf, sizeof buf, "%llu,%u,%.6Lf\n",
             static_cast<unsigned long long>(s.k_values[i]), s.eps_values[i],
             s.predicted_slope * static_cast<long double>(s.k_values[i]));
    out += buf;
  }
  return out;
}

std::string eps_summary_json(const EpsSeries& s) {
  if (s.k_values.empty()) raise(Errc::EmptySeries, "no points to report");
  char buf[256];
  snprintf(buf, sizeof buf,
           "{\"p\":%llu,\"points\":%zu,\"k_from\":%llu,\"k_to\":%llu,"
           "\"predicted_slope\":%.9Lf,\"fitted_slope\":%.9Lf,\"residual_scale\":%.6Lf}",
           static_cast<unsigned long long>(s.p), s.k_values.size(),
           static_cast<unsigned long long>(s.k_values.front()),
           static_cast<unsigned long long>(s.k_values.back()), s.predicted_slope, s.fitted_slope,
           s.residual_scale);
  return buf;
}

}  // namespace carrylab
