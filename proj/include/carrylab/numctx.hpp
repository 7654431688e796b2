#pragma once

// Per-(p, alpha) context and base-p digit machinery.
//
// A context fixes an odd prime p and a multiplier alpha coprime to p and
// carries the derived quantities the digit analysis runs on:
//   gamma — multiplicative order of alpha mod p
//   delta — the residues generated by alpha mod p, sorted
//   theta — how many of those residues are small (below p/2)
//   tau   — exact power of p dividing alpha^gamma - 1
//   mu    — log_p((p+1)/2)
// tau >= 2 makes p a Wieferich prime base alpha.

#include <cstdint>
#include <vector>

#include "carrylab/bigint.hpp"

namespace carrylab {

struct BasePContext {
  uint64_t p = 0;
  uint64_t alpha = 0;
  uint64_t gamma = 0;
  std::vector<uint64_t> delta;
  uint64_t theta = 0;
  uint32_t tau = 0;
  long double mu = 0.0L;
  bool wieferich = false;
};

struct ContextOptions {
  uint64_t delta_cap = uint64_t(1) << 22;     // max gamma we materialize
  uint64_t tau_bits_cap = uint64_t(1) << 20;  // max bit size of alpha^gamma
};

BasePContext make_context(uint64_t p, uint64_t alpha, const ContextOptions& opts = {});

// --- digit vectors -------------------------------------------------------

struct DigitVec {
  uint64_t base = 0;
  std::vector<uint64_t> digits;  // little-endian, highest digit nonzero; empty == 0
};

DigitVec to_digits(uint64_t n, uint64_t base);
DigitVec to_digits(const BigUnsigned& n, uint64_t base);
BigUnsigned value_of(const DigitVec& v);

inline uint64_t digit_at(const DigitVec& v, size_t i) {
  return i < v.digits.size() ? v.digits[i] : 0;
}

// <a_k, ..., a_l>, highest index first; positions past the stored length read 0
std::vector<uint64_t> digit_slice(const DigitVec& v, uint64_t k, uint64_t l);

// --- p-adic valuations ---------------------------------------------------

uint32_t valuation(uint64_t n, uint64_t p);
uint32_t valuation(BigUnsigned n, uint64_t p);

// --- orders and exponent reduction ---------------------------------------

// ord of alpha modulo p^(tau+k), computed by group-order descent (factor
// phi(p^t) and strip prime factors), not by any closed form.
uint64_t order_mod_power(const BasePContext& ctx, uint32_t k);

// Smallest exponent r with alpha^r = alpha^k (mod p^t); requires t >= tau.
uint64_t reduce_exponent(const BasePContext& ctx, uint64_t k, uint32_t t);

// --- residues mod p^t as digit arrays -------------------------------------

// Exactly t base-p digits, little-endian. Keeps every computation in the
// digit domain so no general big-integer division is ever needed.
namespace ppow {

std::vector<uint64_t> from_u64(uint64_t x, uint64_t p, uint32_t t);
void mul(std::vector<uint64_t>& a, const std::vector<uint64_t>& b, uint64_t p, uint32_t t);
std::vector<uint64_t> pow(uint64_t base, uint64_t exp, uint64_t p, uint32_t t);
std::vector<uint64_t> pow(uint64_t base, const BigUnsigned& exp, uint64_t p, uint32_t t);
bool is_one(const std::vector<uint64_t>& a);

}  // namespace ppow

// True iff p^v exactly divides alpha^exp - 1, decided from
// alpha^exp mod p^(v+1); exact for any magnitude of alpha^exp.
bool pow_valuation_is(uint64_t alpha, uint64_t exp, uint64_t p, uint32_t v);

}  // namespace carrylab
