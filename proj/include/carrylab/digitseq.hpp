#pragma once

// Digit-sequence families and occurrence checks.
//
// For a context (p, alpha), Lambda_n is the family of digit sequences
// <sigma_n, ..., sigma_1, sigma_0> with sigma_0 restricted to the residues
// alpha generates mod p and every other entry free in [0, p). The pattern
// extractor picks the digits of a number at positions tau..tau+k-1 plus
// position 0; over one full period b < gamma*p^k those patterns hit every
// member of Lambda_k exactly once, which verify_pattern_cover checks by
// exhaustion. When p is not Wieferich base alpha (tau == 1) the same holds
// for the plain low window [k:0], checked by verify_wieferich_cover.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carrylab/numctx.hpp"

namespace carrylab {

struct LambdaSeq {
  std::vector<uint64_t> sigma;  // high-first: <sigma_n, ..., sigma_0>
};

struct CPattern {
  std::vector<uint64_t> digits;  // <a_{tau+k-1}, ..., a_tau, a_0>, length k+1
};

struct VerificationReport {
  bool pass = false;
  uint64_t checked = 0;
  std::optional<std::pair<uint64_t, uint64_t>> collision;  // exponents (b, c) with equal patterns
  std::string detail;
};

inline constexpr uint64_t kEnumerationCap = 10'000'000;

// gamma * p^n, the size of Lambda_n (errors if it cannot be represented)
uint64_t lambda_count(const BasePContext& ctx, uint32_t n);

// all of Lambda_n in lexicographic order, sigma_0 running over sorted delta
std::vector<LambdaSeq> lambda_enumerate(const BasePContext& ctx, uint32_t n,
                                        uint64_t cap = kEnumerationCap);

CPattern c_pattern(const BasePContext& ctx, const DigitVec& v, uint32_t k);

// Exhausts b in [r*gamma*p^k, (r+1)*gamma*p^k) and checks the extracted
// patterns cover Lambda_k bijectively. period_offset r = 0 is the base
// period; r > 0 exercises the shifted ones.
VerificationReport verify_pattern_cover(const BasePContext& ctx, uint32_t k,
                                        uint64_t cap = kEnumerationCap, uint64_t period_offset = 0);

// Same exhaustion over the plain digit window [k:0]; requires a
// non-Wieferich context.
VerificationReport verify_wieferich_cover(const BasePContext& ctx, uint32_t k,
                                          uint64_t cap = kEnumerationCap,
                                          uint64_t period_offset = 0);

}  // namespace carrylab
