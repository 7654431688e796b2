#include "carrylab/kernels.hpp"

namespace carrylab::kernels {

namespace {

// Doubling a digit d with carry-in c: carry-out iff 2d + c >= p, which for
// odd p means d >= (p+1)/2 (a large digit, always carries) or d == (p-1)/2
// with c == 1 (the propagate case). Large digits and propagate digits are
// disjoint, an invariant the SIMD variants rely on.

StepCounts double_step_scalar(uint8_t* digits, size_t n, uint8_t p) {
  const uint8_t large_min = static_cast<uint8_t>((p + 1) / 2);
  StepCounts out;
  uint32_t carry = 0;
  for (size_t i = 0; i < n; ++i) {
    uint32_t d = digits[i];
    out.large += d >= large_min;
    uint32_t t = 2 * d + carry;
    carry = t >= p;
    digits[i] = static_cast<uint8_t>(t - (carry ? p : 0));
    out.carries += carry;
  }
  out.carry_out = static_cast<uint8_t>(carry);
  return out;
}

StepCounts inspect_scalar(const uint8_t* digits, size_t n, uint8_t p) {
  const uint8_t large_min = static_cast<uint8_t>((p + 1) / 2);
  StepCounts out;
  uint32_t carry = 0;
  for (size_t i = 0; i < n; ++i) {
    uint32_t d = digits[i];
    out.large += d >= large_min;
    uint32_t t = 2 * d + carry;
    carry = t >= p;
    out.carries += carry;
  }
  out.carry_out = static_cast<uint8_t>(carry);
  return out;
}

uint32_t mul_small_scalar(uint8_t* digits, size_t n, uint8_t p, uint32_t multiplier) {
  uint64_t carry = 0;
  for (size_t i = 0; i < n; ++i) {
    uint64_t t = static_cast<uint64_t>(digits[i]) * multiplier + carry;
    carry = t / p;
    digits[i] = static_cast<uint8_t>(t % p);
  }
  return static_cast<uint32_t>(carry);
}

size_t count_large_scalar(const uint8_t* digits, size_t n, uint8_t p) {
  const uint8_t large_min = static_cast<uint8_t>((p + 1) / 2);
  size_t c = 0;
  for (size_t i = 0; i < n; ++i) c += digits[i] >= large_min;
  return c;
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", double_step_scalar, inspect_scalar, mul_small_scalar,
                             count_large_scalar};
  return set;
}

}  // namespace carrylab::kernels
