#pragma once

// Digit-array kernels for odd bases p < 256, one byte per digit,
// little-endian. Scalar reference implementations plus SIMD variants
// (AVX2, NEON) selected at runtime; all variants are equivalence-tested
// against the scalar reference.
//
// double_step doubles the array value in base p and reports, for the
// value it consumed:
//   carries — number of positions whose doubling produced a carry-out
//             (the count at positions [0, n) is exact; the carry out of
//             position n-1 is included),
//   large   — number of digits > p/2,
//   carry_out — the carry leaving position n-1 (0 or 1).
// inspect computes the same counts without modifying the array.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace carrylab::kernels {

struct StepCounts {
  uint32_t carries = 0;
  uint32_t large = 0;
  uint8_t carry_out = 0;
};

using DoubleStepFn = StepCounts (*)(uint8_t* digits, size_t n, uint8_t p);
using InspectFn = StepCounts (*)(const uint8_t* digits, size_t n, uint8_t p);
using MulSmallFn = uint32_t (*)(uint8_t* digits, size_t n, uint8_t p, uint32_t multiplier);
using CountLargeFn = size_t (*)(const uint8_t* digits, size_t n, uint8_t p);

struct KernelSet {
  const char* name;
  DoubleStepFn double_step;
  InspectFn inspect;
  MulSmallFn mul_small;  // digits *= multiplier, returns the overflow value (< multiplier)
  CountLargeFn count_large;
};

const KernelSet& scalar_kernels();
const KernelSet* avx2_kernels();  // nullptr when unsupported by build or CPU
const KernelSet* neon_kernels();  // nullptr when unsupported by build

// Every variant usable on this host, scalar first.
const std::vector<const KernelSet*>& available_kernels();

// Best variant for this host; override with CARRYLAB_KERNEL=scalar|avx2|neon.
const KernelSet& active_kernels();

}  // namespace carrylab::kernels
