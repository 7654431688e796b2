#include "carrylab/kernels.hpp"

#if defined(__AVX2__) && (defined(__x86_64__) || defined(_M_X64))

#include <immintrin.h>

#include <bit>

namespace carrylab::kernels {

namespace {

// Byte lanes are classified per 32-digit block into G (carry generated,
// i.e. large digit) and P (carry propagated, digit == (p-1)/2) bitmasks.
// With X = (G << 1) | cin, the carry-in bits over the block are
// (X + P) ^ P: an injected carry ripples through a run of propagate bits
// exactly like binary addition. G and P are disjoint, so at most one
// injected bit can land inside any propagate run and the addition never
// double-counts.

inline __m256i mask_to_bytes(uint32_t m) {
  const __m256i idx = _mm256_setr_epi8(0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2,
                                       2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3);
  const __m256i bits =
      _mm256_setr_epi8(1, 2, 4, 8, 16, 32, 64, (char)128, 1, 2, 4, 8, 16, 32, 64, (char)128, 1, 2,
                       4, 8, 16, 32, 64, (char)128, 1, 2, 4, 8, 16, 32, 64, (char)128);
  __m256i v = _mm256_set1_epi32(static_cast<int>(m));
  v = _mm256_shuffle_epi8(v, idx);
  v = _mm256_and_si256(v, bits);
  return _mm256_cmpeq_epi8(v, bits);
}

template <bool Write>
StepCounts double_step_impl(uint8_t* digits, size_t n, uint8_t p) {
  const uint8_t large_min = static_cast<uint8_t>((p + 1) / 2);
  const uint8_t prop = static_cast<uint8_t>((p - 1) / 2);
  const __m256i bias = _mm256_set1_epi8((char)0x80);
  const __m256i large_thr = _mm256_set1_epi8((char)((large_min - 1) ^ 0x80));
  const __m256i prop_vec = _mm256_set1_epi8((char)prop);
  const __m256i p_vec = _mm256_set1_epi8((char)p);

  StepCounts out;
  uint32_t cin = 0;
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(digits + i));
    __m256i g_ff = _mm256_cmpgt_epi8(_mm256_xor_si256(v, bias), large_thr);
    __m256i p_ff = _mm256_cmpeq_epi8(v, prop_vec);
    uint32_t g = static_cast<uint32_t>(_mm256_movemask_epi8(g_ff));
    uint32_t pm = static_cast<uint32_t>(_mm256_movemask_epi8(p_ff));
    uint64_t x = (static_cast<uint64_t>(g) << 1) | cin;
    uint64_t s = x + pm;
    uint64_t cin_bits = s ^ pm;
    out.carries += static_cast<uint32_t>(std::popcount(cin_bits & ~1ull));
    out.large += static_cast<uint32_t>(std::popcount(g));
    if constexpr (Write) {
      __m256i cin_ff = mask_to_bytes(static_cast<uint32_t>(cin_bits));
      __m256i cout_ff = _mm256_or_si256(g_ff, _mm256_and_si256(p_ff, cin_ff));
      __m256i d2 = _mm256_add_epi8(v, v);
      d2 = _mm256_sub_epi8(d2, cin_ff);  // +1 where a carry came in
      d2 = _mm256_sub_epi8(d2, _mm256_and_si256(cout_ff, p_vec));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(digits + i), d2);
    }
    cin = static_cast<uint32_t>(s >> 32) & 1;
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

StepCounts double_step_avx2(uint8_t* digits, size_t n, uint8_t p) {
  return double_step_impl<true>(digits, n, p);
}

StepCounts inspect_avx2(const uint8_t* digits, size_t n, uint8_t p) {
  return double_step_impl<false>(const_cast<uint8_t*>(digits), n, p);
}

size_t count_large_avx2(const uint8_t* digits, size_t n, uint8_t p) {
  const uint8_t large_min = static_cast<uint8_t>((p + 1) / 2);
  const __m256i bias = _mm256_set1_epi8((char)0x80);
  const __m256i thr = _mm256_set1_epi8((char)((large_min - 1) ^ 0x80));
  size_t c = 0;
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(digits + i));
    __m256i ge = _mm256_cmpgt_epi8(_mm256_xor_si256(v, bias), thr);
    c += std::popcount(static_cast<uint32_t>(_mm256_movemask_epi8(ge)));
  }
  for (; i < n; ++i) c += digits[i] >= large_min;
  return c;
}

}  // namespace

const KernelSet* avx2_kernels() {
#if defined(__GNUC__) || defined(__clang__)
  if (!__builtin_cpu_supports("avx2")) return nullptr;
#endif
  static const KernelSet set{"avx2", double_step_avx2, inspect_avx2,
                             scalar_kernels().mul_small, count_large_avx2};
  return &set;
}

}  // namespace carrylab::kernels

#else

namespace carrylab::kernels {
const KernelSet* avx2_kernels() { return nullptr; }
}  // namespace carrylab::kernels

#endif
