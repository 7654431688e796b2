#include "carrylab/digitseq.hpp"

#include <algorithm>

#include "carrylab/errors.hpp"
#include "carrylab/modmath.hpp"

namespace carrylab {

namespace {

uint64_t checked_pattern_count(const BasePContext& ctx, uint32_t k, uint64_t cap) {
  uint64_t total = ctx.gamma;
  for (uint32_t i = 0; i < k; ++i) {
    if (total > cap / ctx.p)
      raise(Errc::EnumerationCapExceeded,
            "gamma*p^k exceeds cap of " + std::to_string(cap) + " patterns");
    total *= ctx.p;
  }
  if (total > cap)
    raise(Errc::EnumerationCapExceeded,
          "gamma*p^k exceeds cap of " + std::to_string(cap) + " patterns");
  return total;
}

// index of d in sorted delta, or -1
int64_t delta_index(const BasePContext& ctx, uint64_t d) {
  auto it = std::lower_bound(ctx.delta.begin(), ctx.delta.end(), d);
  if (it == ctx.delta.end() || *it != d) return -1;
  return it - ctx.delta.begin();
}

// one in-place multiply of a width-W digit window by alpha
void window_mul(std::vector<uint64_t>& w, uint64_t alpha, uint64_t p) {
  __uint128_t carry = 0;
  for (auto& d : w) {
    __uint128_t cur = static_cast<__uint128_t>(d) * alpha + carry;
    d = static_cast<uint64_t>(cur % p);
    carry = cur / p;
  }
}

// Shared exhaustive cover check. The extracted pattern is encoded as
//   delta_index(digits[0]) + gamma * sum_j digits[positions[j]] * p^j,
// a bijection between candidate patterns and [0, gamma*p^k).
VerificationReport cover_check(const BasePContext& ctx, uint32_t k, uint64_t cap,
                               uint64_t period_offset, const std::vector<uint32_t>& positions,
                               uint32_t window_width) {
  const uint64_t total = checked_pattern_count(ctx, k, cap);
  VerificationReport rep;
  rep.checked = total;

  std::vector<uint64_t> w;
  if (period_offset == 0) {
    w = ppow::from_u64(1, ctx.p, window_width);
  } else {
    // alpha^(r * total) mod p^W
    BigUnsigned e(period_offset);
    e.mul_u64(total);
    w = ppow::pow(ctx.alpha, e, ctx.p, window_width);
  }

  std::vector<uint32_t> seen(total, 0);
  for (uint64_t b = 0; b < total; ++b) {
    int64_t di = delta_index(ctx, w[0]);
    if (di < 0) {
      rep.pass = false;
      rep.detail = "last digit " + std::to_string(w[0]) + " of alpha^" + std::to_string(b) +
                   " not generated by alpha mod p";
      return rep;
    }
    uint64_t code = static_cast<uint64_t>(di);
    uint64_t scale = ctx.gamma;
    for (uint32_t pos : positions) {
      code += scale * w[pos];
      scale *= ctx.p;
    }
    if (seen[code]) {
      rep.pass = false;
      rep.collision = {static_cast<uint64_t>(seen[code] - 1), b};
      rep.detail = "pattern repeats within one period";
      return rep;
    }
    seen[code] = static_cast<uint32_t>(b + 1);
    window_mul(w, ctx.alpha, ctx.p);
  }
  // total distinct codes in a space of size total: the cover is exact
  rep.pass = true;
  return rep;
}

}  // namespace

uint64_t lambda_count(const BasePContext& ctx, uint32_t n) {
  return checked_pattern_count(ctx, n, ~uint64_t(0));
}

std::vector<LambdaSeq> lambda_enumerate(const BasePContext& ctx, uint32_t n, uint64_t cap) {
  const uint64_t total = checked_pattern_count(ctx, n, cap);
  std::vector<LambdaSeq> out;
  out.reserve(total);
  for (uint64_t idx = 0; idx < total; ++idx) {
    LambdaSeq seq;
    seq.sigma.assign(n + 1, 0);
    seq.sigma[n] = ctx.delta[idx % ctx.gamma];  // sigma_0, stored last (high-first layout)
    uint64_t rest = idx / ctx.gamma;
    for (uint32_t i = 1; i <= n; ++i) {
      seq.sigma[n - i] = rest % ctx.p;  // sigma_i
      rest /= ctx.p;
    }
    out.push_back(std::move(seq));
  }
  return out;
}

CPattern c_pattern(const BasePContext& ctx, const DigitVec& v, uint32_t k) {
  CPattern pat;
  pat.digits.reserve(k + 1);
  for (uint32_t j = 0; j < k; ++j) pat.digits.push_back(digit_at(v, ctx.tau + k - 1 - j));
  pat.digits.push_back(digit_at(v, 0));
  return pat;
}

VerificationReport verify_pattern_cover(const BasePContext& ctx, uint32_t k, uint64_t cap,
                                        uint64_t period_offset) {
  // positions tau .. tau+k-1, low to high; window covers all of them
  std::vector<uint32_t> positions(k);
  for (uint32_t j = 0; j < k; ++j) positions[j] = ctx.tau + j;
  return cover_check(ctx, k, cap, period_offset, positions, ctx.tau + k);
}

VerificationReport verify_wieferich_cover(const BasePContext& ctx, uint32_t k, uint64_t cap,
                                          uint64_t period_offset) {
  if (ctx.wieferich)
    raise(Errc::NotApplicable,
          std::to_string(ctx.p) + " is a Wieferich prime base " + std::to_string(ctx.alpha));
  std::vector<uint32_t> positions(k);
  for (uint32_t j = 0; j < k; ++j) positions[j] = 1 + j;
  return cover_check(ctx, k, cap, period_offset, positions, k + 1);
}

}  // namespace carrylab
