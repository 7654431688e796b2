#include "carrylab/kernels.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)

#include <arm_neon.h>

#include <bit>

namespace carrylab::kernels {

namespace {

// Same block scheme as the AVX2 variant, 16 digits per block: classify
// lanes into generate/propagate bitmasks, resolve the carry chain with
// the (X + P) ^ P identity, expand the carry-in bits back to byte lanes.

inline uint8x16_t bit_weights() {
  static const uint8_t w[16] = {1, 2, 4, 8, 16, 32, 64, 128, 1, 2, 4, 8, 16, 32, 64, 128};
  return vld1q_u8(w);
}

inline uint16_t to_mask16(uint8x16_t ff) {
  uint8x16_t w = vandq_u8(ff, bit_weights());
  return static_cast<uint16_t>(vaddv_u8(vget_low_u8(w)) |
                               (static_cast<uint16_t>(vaddv_u8(vget_high_u8(w))) << 8));
}

inline uint8x16_t mask_to_bytes(uint16_t m) {
  uint8x16_t bytes =
      vcombine_u8(vdup_n_u8(static_cast<uint8_t>(m)), vdup_n_u8(static_cast<uint8_t>(m >> 8)));
  uint8x16_t sel = vandq_u8(bytes, bit_weights());
  return vceqq_u8(sel, bit_weights());
}

template <bool Write>
StepCounts double_step_impl(uint8_t* digits, size_t n, uint8_t p) {
  const uint8_t large_min = static_cast<uint8_t>((p + 1) / 2);
  const uint8_t prop = static_cast<uint8_t>((p - 1) / 2);
  const uint8x16_t large_vec = vdupq_n_u8(large_min);
  const uint8x16_t prop_vec = vdupq_n_u8(prop);
  const uint8x16_t p_vec = vdupq_n_u8(p);

  StepCounts out;
  uint32_t cin = 0;
  size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    uint8x16_t v = vld1q_u8(digits + i);
    uint8x16_t g_ff = vcgeq_u8(v, large_vec);
    uint8x16_t p_ff = vceqq_u8(v, prop_vec);
    uint32_t g = to_mask16(g_ff);
    uint32_t pm = to_mask16(p_ff);
    uint64_t x = (static_cast<uint64_t>(g) << 1) | cin;
    uint64_t s = x + pm;
    uint64_t cin_bits = s ^ pm;
    out.carries += static_cast<uint32_t>(std::popcount(cin_bits & ~1ull));
    out.large += static_cast<uint32_t>(std::popcount(g));
    if constexpr (Write) {
      uint8x16_t cin_ff = mask_to_bytes(static_cast<uint16_t>(cin_bits));
      uint8x16_t cout_ff = vorrq_u8(g_ff, vandq_u8(p_ff, cin_ff));
      uint8x16_t d2 = vaddq_u8(v, v);
      d2 = vsubq_u8(d2, cin_ff);
      d2 = vsubq_u8(d2, vandq_u8(cout_ff, p_vec));
      vst1q_u8(digits + i, d2);
    }
    cin = static_cast<uint32_t>(s >> 16) & 1;
  }
  uint32_t carry = cin;
  for (; i < n; ++i) {
    uint32_t d = digits[i];
    out.large += d >= large_min;
    uint32_t t = 2 * d + carry;
    carry = t >= p;
    if constexpr (Write) digits[i] = static_cast<uint8_t>(t - (carry ? p : 0));
    out.carries += carry;
  }
  out.carry_out = static_cast<uint8_t>(carry);
  return out;
}

StepCounts double_step_neon(uint8_t* digits, size_t n, uint8_t p) {
  return double_step_impl<true>(digits, n, p);
}

StepCounts inspect_neon(const uint8_t* digits, size_t n, uint8_t p) {
  return double_step_impl<false>(const_cast<uint8_t*>(digits), n, p);
}

size_t count_large_neon(const uint8_t* digits, size_t n, uint8_t p) {
  const uint8_t large_min = static_cast<uint8_t>((p + 1) / 2);
  const uint8x16_t large_vec = vdupq_n_u8(large_min);
  size_t c = 0;
  size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    uint8x16_t ge = vcgeq_u8(vld1q_u8(digits + i), large_vec);
    // lanes are 0xFF or 0x00; horizontal add of (ge & 1) counts them
    c += vaddvq_u8(vandq_u8(ge, vdupq_n_u8(1)));
  }
  for (; i < n; ++i) c += digits[i] >= large_min;
  return c;
}

}  // namespace

const KernelSet* neon_kernels() {
  static const KernelSet set{"neon", double_step_neon, inspect_neon, scalar_kernels().mul_small,
                             count_large_neon};
  return &set;
}

}  // namespace carrylab::kernels

#else

namespace carrylab::kernels {
const KernelSet* neon_kernels() { return nullptr; }
}  // namespace carrylab::kernels

#endif
