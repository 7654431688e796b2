#include "carrylab/numctx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "carrylab/errors.hpp"
#include "carrylab/modmath.hpp"

namespace carrylab {

namespace {

// largest t with p^t <= 2^63, and the power itself
std::pair<uint32_t, uint64_t> max_u64_power(uint64_t p) {
  uint64_t v = 1;
  uint32_t t = 0;
  const uint64_t lim = uint64_t(1) << 63;
  while (v <= lim / p) {
    v *= p;
    ++t;
  }
  return {t, v};
}

uint64_t order_mod_prime(uint64_t p, uint64_t alpha) {
  uint64_t e = p - 1;
  for (auto [q, mult] : factor_u64(p - 1)) {
    (void)mult;
    while (e % q == 0 && pow_mod(alpha, e / q, p) == 1) e /= q;
  }
  return e;
}

}  // namespace

BasePContext make_context(uint64_t p, uint64_t alpha, const ContextOptions& opts) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
    raise(Errc::NonPrimeBase, "p must be an odd prime, got " + std::to_string(p));
  if (alpha % p == 0)
    raise(Errc::SharedFactor, "alpha = " + std::to_string(alpha) + " is divisible by p");
  if (alpha == 1)
    raise(Errc::AlphaUnitDegenerate, "alpha = 1 has alpha^gamma - 1 = 0, tau undefined");

  BasePContext ctx;
  ctx.p = p;
  ctx.alpha = alpha;
  const uint64_t a = alpha % p;
  ctx.gamma = order_mod_prime(p, a);

  if (ctx.gamma > opts.delta_cap)
    raise(Errc::ContextTooLarge, "gamma = " + std::to_string(ctx.gamma) + " exceeds delta cap");
  ctx.delta.reserve(ctx.gamma);
  uint64_t r = 1;
  for (uint64_t i = 0; i < ctx.gamma; ++i) {
    ctx.delta.push_back(r);
    r = mul_mod(r, a, p);
  }
  std::sort(ctx.delta.begin(), ctx.delta.end());
  ctx.theta = static_cast<uint64_t>(
      std::count_if(ctx.delta.begin(), ctx.delta.end(), [p](uint64_t d) { return 2 * d < p; }));

  // tau by exact valuation of alpha^gamma - 1; this is the big-integer
  // route on purpose so it can serve as an oracle for the modular one
  const uint64_t alpha_bits = 64 - static_cast<uint64_t>(std::countl_zero(alpha));
  if (ctx.gamma > opts.tau_bits_cap / alpha_bits)
    raise(Errc::ContextTooLarge, "alpha^gamma too large for exact tau");
  BigUnsigned big = BigUnsigned::pow_u64(alpha, ctx.gamma);
  big.sub_u64(1);
  ctx.tau = valuation(std::move(big), p);

  ctx.mu = std::log(static_cast<long double>((p + 1) / 2)) / std::log(static_cast<long double>(p));
  ctx.wieferich = ctx.tau >= 2;
  return ctx;
}

DigitVec to_digits(uint64_t n, uint64_t base) {
  if (base < 2) raise(Errc::DomainViolation, "base must be >= 2");
  DigitVec v;
  v.base = base;
  while (n) {
    v.digits.push_back(n % base);
    n /= base;
  }
  return v;
}

DigitVec to_digits(const BigUnsigned& n, uint64_t base) {
  if (base < 2) raise(Errc::DomainViolation, "base must be >= 2");
  DigitVec v;
  v.base = base;
  BigUnsigned tmp = n;
  while (!tmp.is_zero()) v.digits.push_back(tmp.divmod_u64(base));
  return v;
}

BigUnsigned value_of(const DigitVec& v) {
  BigUnsigned acc;
  for (size_t i = v.digits.size(); i-- > 0;) {
    if (v.digits[i] >= v.base) raise(Errc::DomainViolation, "digit out of range for base");
    acc.mul_u64(v.base);
    acc.add_u64(v.digits[i]);
  }
  return acc;
}

std::vector<uint64_t> digit_slice(const DigitVec& v, uint64_t k, uint64_t l) {
  if (k < l) raise(Errc::IndexOrder, "slice needs k >= l");
  std::vector<uint64_t> out;
  out.reserve(k - l + 1);
  for (uint64_t i = k + 1; i-- > l;) out.push_back(digit_at(v, i));
  return out;
}

uint32_t valuation(uint64_t n, uint64_t p) {
  if (n == 0) raise(Errc::ZeroInput, "valuation of 0 is undefined");
  if (p < 2) raise(Errc::DomainViolation, "valuation base must be >= 2");
  uint32_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

uint32_t valuation(BigUnsigned n, uint64_t p) {
  if (n.is_zero()) raise(Errc::ZeroInput, "valuation of 0 is undefined");
  if (p < 2) raise(Errc::DomainViolation, "valuation base must be >= 2");
  uint32_t v = 0;
  for (;;) {
    BigUnsigned q = n;
    if (q.divmod_u64(p) != 0) return v;
    n = std::move(q);
    ++v;
  }
}

uint64_t order_mod_power(const BasePContext& ctx, uint32_t k) {
  const uint32_t t = ctx.tau + k;
  const uint32_t tmax = max_u64_power(ctx.p).first;
  if (t <= tmax) {
    uint64_t m = 1;
    for (uint32_t i = 0; i < t; ++i) m *= ctx.p;
    uint64_t e = (m / ctx.p) * (ctx.p - 1);  // phi(p^t)
    std::vector<uint64_t> qs{ctx.p};
    for (auto [q, mult] : factor_u64(ctx.p - 1)) {
      (void)mult;
      qs.push_back(q);
    }
    for (uint64_t q : qs) {
      while (e % q == 0 && pow_mod(ctx.alpha % m, e / q, m) == 1) e /= q;
    }
    return e;
  }

  // modulus beyond 64 bits: same descent in the digit domain
  BigUnsigned e = BigUnsigned::pow_u64(ctx.p, t - 1);
  e.mul_u64(ctx.p - 1);
  std::vector<uint64_t> qs{ctx.p};
  for (auto [q, mult] : factor_u64(ctx.p - 1)) {
    (void)mult;
    qs.push_back(q);
  }
  for (uint64_t q : qs) {
    for (;;) {
      BigUnsigned cand = e;
      if (cand.divmod_u64(q) != 0) break;
      if (!ppow::is_one(ppow::pow(ctx.alpha, cand, ctx.p, t))) break;
      e = std::move(cand);
    }
  }
  if (!e.fits_u64()) raise(Errc::ContextTooLarge, "order does not fit in 64 bits");
  return e.low_u64();
}

uint64_t reduce_exponent(const BasePContext& ctx, uint64_t k, uint32_t t) {
  if (t < ctx.tau)
    raise(Errc::WindowTooSmall, "window of " + std::to_string(t) + " digits is below tau");
  // period of alpha mod p^t is gamma * p^(t - tau)
  uint64_t m = ctx.gamma;
  const uint64_t lim = ~uint64_t(0);
  for (uint32_t i = ctx.tau; i < t; ++i) {
    if (m > lim / ctx.p) return k;  // period exceeds any 64-bit exponent
    m *= ctx.p;
  }
  return k % m;
}

namespace ppow {

std::vector<uint64_t> from_u64(uint64_t x, uint64_t p, uint32_t t) {
  std::vector<uint64_t> d(t, 0);
  for (uint32_t i = 0; i < t && x; ++i) {
    d[i] = x % p;
    x /= p;
  }
  return d;
}

void mul(std::vector<uint64_t>& a, const std::vector<uint64_t>& b, uint64_t p, uint32_t t) {
  std::vector<uint64_t> res(t, 0);
  for (uint32_t i = 0; i < t; ++i) {
    if (a[i] == 0) continue;
    __uint128_t carry = 0;
    const uint64_t ai = a[i];
    for (uint32_t j = 0; j < t - i; ++j) {
      __uint128_t cur = res[i + j] + static_cast<__uint128_t>(ai) * b[j] + carry;
      res[i + j] = static_cast<uint64_t>(cur % p);
      carry = cur / p;
    }
  }
  a = std::move(res);
}

std::vector<uint64_t> pow(uint64_t base, uint64_t exp, uint64_t p, uint32_t t) {
  std::vector<uint64_t> r = from_u64(1, p, t);
  std::vector<uint64_t> sq = from_u64(base, p, t);
  while (exp) {
    if (exp & 1) mul(r, sq, p, t);
    exp >>= 1;
    if (exp) mul(sq, sq, p, t);
  }
  return r;
}

std::vector<uint64_t> pow(uint64_t base, const BigUnsigned& exp, uint64_t p, uint32_t t) {
  std::vector<uint64_t> r = from_u64(1, p, t);
  std::vector<uint64_t> sq = from_u64(base, p, t);
  const auto& limbs = exp.limbs();
  const size_t nbits = exp.bit_length();
  for (size_t b = 0; b < nbits; ++b) {
    if ((limbs[b / 64] >> (b % 64)) & 1) mul(r, sq, p, t);
    if (b + 1 < nbits) mul(sq, sq, p, t);
  }
  return r;
}

bool is_one(const std::vector<uint64_t>& a) {
  if (a.empty() || a[0] != 1) return false;
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i]) return false;
  return true;
}

}  // namespace ppow

bool pow_valuation_is(uint64_t alpha, uint64_t exp, uint64_t p, uint32_t v) {
  // alpha^exp mod p^(v+1): digits below v must vanish in alpha^exp - 1,
  // digit v must not
  std::vector<uint64_t> r = ppow::pow(alpha, exp, p, v + 1);
  if (r.empty() || r[0] != 1) return false;
  for (uint32_t i = 1; i < v; ++i)
    if (r[i] != 0) return false;
  return r[v] != 0;
}

}  // namespace carrylab
