#include "carrylab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "carrylab/errors.hpp"
#include "carrylab/kernels.hpp"
#include "carrylab/modmath.hpp"

namespace carrylab {

uint64_t count_large_digits(const DigitVec& v) {
  uint64_t c = 0;
  for (uint64_t d : v.digits) c += 2 * d > v.base;
  return c;
}

uint32_t self_add_carries(const DigitVec& v) {
  uint32_t carries = 0;
  uint64_t carry = 0;
  for (uint64_t d : v.digits) {
    uint64_t t = 2 * d + carry;
    carry = t >= v.base;
    carries += carry;
  }
  return carries;
}

namespace {

// generic digit sweep for bases or multipliers the byte kernels do not take
PowerStats power_stats_generic(uint64_t p, uint64_t alpha, uint64_t count) {
  PowerStats st;
  st.large.resize(count);
  st.carries.resize(count);
  std::vector<uint64_t> d{1};
  for (uint64_t s = 0; s < count; ++s) {
    uint32_t carries = 0;
    uint32_t large = 0;
    uint64_t carry = 0;
    for (uint64_t di : d) {
      large += 2 * di > p;
      uint64_t t = 2 * di + carry;
      carry = t >= p;
      carries += carry;
    }
    st.large[s] = large;
    st.carries[s] = carries;
    // advance to alpha^(s+1)
    __uint128_t mcarry = 0;
    for (auto& di : d) {
      __uint128_t cur = static_cast<__uint128_t>(di) * alpha + mcarry;
      di = static_cast<uint64_t>(cur % p);
      mcarry = cur / p;
    }
    while (mcarry) {
      d.push_back(static_cast<uint64_t>(mcarry % p));
      mcarry /= p;
    }
  }
  return st;
}

PowerStats power_stats_bytes(uint64_t p, uint64_t alpha, uint64_t count) {
  const auto& k = kernels::active_kernels();
  const uint8_t pb = static_cast<uint8_t>(p);
  PowerStats st;
  st.large.resize(count);
  st.carries.resize(count);
  std::vector<uint8_t> d;
  d.reserve(static_cast<size_t>(
                static_cast<double>(count) * std::log2(static_cast<double>(alpha)) /
                std::log2(static_cast<double>(p))) +
            16);
  d.push_back(1);
  if (alpha == 2) {
    for (uint64_t s = 0; s < count; ++s) {
      auto rec = k.double_step(d.data(), d.size(), pb);
      st.large[s] = rec.large;
      st.carries[s] = rec.carries;
      if (rec.carry_out) d.push_back(1);
    }
  } else {
    for (uint64_t s = 0; s < count; ++s) {
      auto rec = k.inspect(d.data(), d.size(), pb);
      st.large[s] = rec.large;
      st.carries[s] = rec.carries;
      uint32_t carry = k.mul_small(d.data(), d.size(), pb, static_cast<uint32_t>(alpha));
      while (carry) {
        d.push_back(static_cast<uint8_t>(carry % p));
        carry /= static_cast<uint32_t>(p);
      }
    }
  }
  return st;
}

}  // namespace

PowerStats power_stats(uint64_t p, uint64_t alpha, uint64_t count, uint64_t cap) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
    raise(Errc::DomainViolation, "base must be an odd prime >= 3");
  if (alpha == 0 || alpha % p == 0) raise(Errc::SharedFactor, "alpha shares a factor with p");
  if (count > cap)
    raise(Errc::BruteForceCapExceeded,
          "range " + std::to_string(count) + " exceeds cap " + std::to_string(cap));
  if (p < 256 && alpha < (uint64_t(1) << 31)) return power_stats_bytes(p, alpha, count);
  return power_stats_generic(p, alpha, count);
}

SCount s_count(const BasePContext& ctx, uint32_t n, uint64_t a, bool want_members, uint64_t cap) {
  if (a < 1) raise(Errc::DomainViolation, "range a must be >= 1");
  PowerStats st = power_stats(ctx.p, ctx.alpha, a, cap);
  SCount out;
  for (uint64_t s = 0; s < a; ++s) {
    if (st.large[s] < n) {
      ++out.count;
      if (want_members) out.members.push_back(s);
    }
  }
  return out;
}

long double bound_ssp1(const BasePContext& ctx, uint64_t s, uint32_t t) {
  const long double half_up = static_cast<long double>((ctx.p + 1) / 2);
  return static_cast<long double>(s) * static_cast<long double>(ctx.theta) *
         std::pow(half_up, static_cast<long double>(t));
}

long double bound_s31(const BasePContext& ctx, uint64_t a) {
  if (ctx.p != 3 || ctx.alpha % 3 != 2)
    raise(Errc::DomainViolation, "bound requires p = 3 and alpha = 2 (mod 3)");
  return 1.3L * std::pow(static_cast<long double>(a), std::log(2.0L) / std::log(3.0L));
}

long double bound_sp1(const BasePContext& ctx, uint64_t a) {
  return 4.0L * std::pow(static_cast<long double>(a), ctx.mu);
}

long double bound_spn_inter(const BasePContext& ctx, uint64_t s, uint32_t t, uint32_t n) {
  if (t < 1) raise(Errc::DomainViolation, "bound requires t >= 1");
  if (n < 1) raise(Errc::DomainViolation, "bound requires n >= 1");
  const long double half_up = static_cast<long double>((ctx.p + 1) / 2);
  return 2.0L * static_cast<long double>(s) * static_cast<long double>(ctx.gamma) *
         std::pow(static_cast<long double>(t), static_cast<long double>(n - 1)) *
         std::pow(half_up, static_cast<long double>(t));
}

long double bound_spn(const BasePContext& ctx, uint64_t a, uint32_t n) {
  if (n < 1) raise(Errc::DomainViolation, "bound requires n >= 1");
  if (ctx.gamma > a / ctx.p) raise(Errc::DomainViolation, "bound requires a >= gamma*p");
  const long double lg =
      std::log(static_cast<long double>(a)) / std::log(static_cast<long double>(ctx.p));
  return 8.0L * std::pow(lg, static_cast<long double>(n - 1)) *
         std::pow(static_cast<long double>(a), ctx.mu);
}

CountReport make_report(const std::string& bound_name, const BasePContext& ctx, uint64_t n,
                        uint64_t a, uint64_t exact, long double bound) {
  CountReport r;
  r.bound_name = bound_name;
  r.p = ctx.p;
  r.alpha = ctx.alpha;
  r.n = n;
  r.a = a;
  r.exact_count = exact;
  r.bound_value = bound;
  const long double slack = kBoundSlack * std::max(1.0L, std::fabs(bound));
  r.satisfied = static_cast<long double>(exact) <= bound + slack;
  return r;
}

std::string report_json_line(const CountReport& r) {
  char buf[64];
  snprintf(buf, sizeof buf, "%.9Lg", r.bound_value);
  std::string s = "{\"bound_name\":\"" + r.bound_name + "\",\"p\":" + std::to_string(r.p) +
                  ",\"alpha\":" + std::to_string(r.alpha) + ",\"n\":" + std::to_string(r.n) +
                  ",\"a\":" + std::to_string(r.a) + ",\"exact\":" + std::to_string(r.exact_count) +
                  ",\"bound\":" + buf + ",\"satisfied\":" + (r.satisfied ? "true" : "false");
  if (r.members) {
    s += ",\"members\":[";
    for (size_t i = 0; i < r.members->size(); ++i) {
      if (i) s += ',';
      s += std::to_string((*r.members)[i]);
    }
    s += ']';
  }
  s += '}';
  return s;
}

BoundSweep sweep_bounds(const BasePContext& ctx, uint64_t a_max, const std::vector<uint32_t>& ns,
                        uint64_t cap) {
  if (a_max < 1) raise(Errc::DomainViolation, "a_max must be >= 1");
  PowerStats st = power_stats(ctx.p, ctx.alpha, a_max, cap);

  // cumulative S_p^n(a) for each threshold
  uint32_t n_hi = 1;
  for (uint32_t n : ns) n_hi = std::max(n_hi, n);
  std::vector<std::vector<uint64_t>> cum(n_hi + 1, std::vector<uint64_t>(a_max + 1, 0));
  for (uint32_t n = 1; n <= n_hi; ++n) {
    uint64_t acc = 0;
    for (uint64_t s = 0; s < a_max; ++s) {
      acc += st.large[s] < n;
      cum[n][s + 1] = acc;
    }
  }
  auto s_of = [&](uint32_t n, uint64_t a) { return cum[n][a]; };

  BoundSweep sweep;
  auto check = [&](const char* name, uint64_t n, uint64_t a, uint64_t exact, long double bound) {
    ++sweep.checked;
    CountReport r = make_report(name, ctx, n, a, exact, bound);
    if (!r.satisfied) sweep.violations.push_back(std::move(r));
  };

  // SsP1 grid: a = s*gamma*p^t
  for (uint32_t t = 0;; ++t) {
    uint64_t block = ctx.gamma;
    bool overflow = false;
    for (uint32_t i = 0; i < t; ++i) {
      if (block > a_max / ctx.p) {
        overflow = true;
        break;
      }
      block *= ctx.p;
    }
    if (overflow || block > a_max) break;
    for (uint64_t s = 1; s * block <= a_max; ++s)
      check("SsP1", 1, s * block, s_of(1, s * block), bound_ssp1(ctx, s, t));
  }

  // SpnInter grid: t >= 1
  for (uint32_t n : ns) {
    for (uint32_t t = 1;; ++t) {
      uint64_t block = ctx.gamma;
      bool overflow = false;
      for (uint32_t i = 0; i < t; ++i) {
        if (block > a_max / ctx.p) {
          overflow = true;
          break;
        }
        block *= ctx.p;
      }
      if (overflow || block > a_max) break;
      for (uint64_t s = 1; s * block <= a_max; ++s)
        check("SpnInter", n, s * block, s_of(n, s * block), bound_spn_inter(ctx, s, t, n));
    }
  }

  const bool s31_applies = (ctx.p == 3 && ctx.alpha % 3 == 2);
  for (uint64_t a = 1; a <= a_max; ++a) {
    if (s31_applies) check("S31", 1, a, s_of(1, a), bound_s31(ctx, a));
    check("SP1", 1, a, s_of(1, a), bound_sp1(ctx, a));
    if (a >= ctx.gamma * ctx.p) {
      for (uint32_t n : ns) check("SPN", n, a, s_of(n, a), bound_spn(ctx, a, n));
    }
  }
  return sweep;
}

std::vector<std::pair<uint64_t, uint32_t>> factor_odd(uint64_t m) {
  if (m % 2 == 0) raise(Errc::EvenModulus, "modulus must be odd");
  if (m <= 1) raise(Errc::DomainViolation, "modulus must exceed 1");
  if (m >> 63) raise(Errc::DomainViolation, "modulus must be below 2^63");
  return factor_u64(m);
}

ChampCount champ_count(uint64_t m, uint64_t a, bool want_members, uint64_t cap) {
  ChampCount out;
  out.m = m;
  out.a = a;
  out.factors = factor_odd(m);
  if (a == 0) return out;
  if (a > cap)
    raise(Errc::BruteForceCapExceeded,
          "range " + std::to_string(a) + " exceeds cap " + std::to_string(cap));

  // m | C(2^(s+1), 2^s) iff every p_i^beta_i does, i.e. the doubling of 2^s
  // in base p_i carries at least beta_i times (Kummer)
  std::vector<PowerStats> per_prime;
  per_prime.reserve(out.factors.size());
  for (auto [p, beta] : out.factors) {
    (void)beta;
    per_prime.push_back(power_stats(p, 2, a, cap));
  }
  for (uint64_t s = 0; s < a; ++s) {
    bool divides = true;
    for (size_t i = 0; i < out.factors.size(); ++i) {
      if (per_prime[i].carries[s] < out.factors[i].second) {
        divides = false;
        break;
      }
    }
    if (!divides) {
      ++out.count;
      if (want_members) out.members.push_back(s);
    }
  }
  return out;
}

}  // namespace carrylab
