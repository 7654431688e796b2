#include "carrylab/bigint.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace carrylab {

void BigUnsigned::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

size_t BigUnsigned::bit_length() const {
  if (limbs_.empty()) return 0;
  return 64 * (limbs_.size() - 1) + (64 - std::countl_zero(limbs_.back()));
}

void BigUnsigned::add_u64(uint64_t v) {
  uint64_t carry = v;
  for (size_t i = 0; carry && i < limbs_.size(); ++i) {
    uint64_t s = limbs_[i] + carry;
    carry = (s < carry) ? 1 : 0;
    limbs_[i] = s;
  }
  if (carry) limbs_.push_back(carry);
}

void BigUnsigned::sub_u64(uint64_t v) {
  if (limbs_.empty()) {
    if (v) throw std::logic_error("BigUnsigned underflow");
    return;
  }
  uint64_t borrow = v;
  for (size_t i = 0; borrow && i < limbs_.size(); ++i) {
    uint64_t cur = limbs_[i];
    limbs_[i] = cur - borrow;
    borrow = (cur < borrow) ? 1 : 0;
  }
  if (borrow) throw std::logic_error("BigUnsigned underflow");
  trim();
}

void BigUnsigned::mul_u64(uint64_t v) {
  if (v == 0 || limbs_.empty()) {
    limbs_.clear();
    return;
  }
  uint64_t carry = 0;
  for (auto& limb : limbs_) {
    __uint128_t cur = static_cast<__uint128_t>(limb) * v + carry;
    limb = static_cast<uint64_t>(cur);
    carry = static_cast<uint64_t>(cur >> 64);
  }
  if (carry) limbs_.push_back(carry);
}

void BigUnsigned::mul_big(const BigUnsigned& o) {
  if (limbs_.empty() || o.limbs_.empty()) {
    limbs_.clear();
    return;
  }
  std::vector<uint64_t> res(limbs_.size() + o.limbs_.size(), 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t carry = 0;
    uint64_t a = limbs_[i];
    for (size_t j = 0; j < o.limbs_.size(); ++j) {
      __uint128_t cur = static_cast<__uint128_t>(a) * o.limbs_[j] + res[i + j] + carry;
      res[i + j] = static_cast<uint64_t>(cur);
      carry = static_cast<uint64_t>(cur >> 64);
    }
    size_t k = i + o.limbs_.size();
    while (carry) {
      __uint128_t cur = static_cast<__uint128_t>(res[k]) + carry;
      res[k] = static_cast<uint64_t>(cur);
      carry = static_cast<uint64_t>(cur >> 64);
      ++k;
    }
  }
  limbs_ = std::move(res);
  trim();
}

uint64_t BigUnsigned::divmod_u64(uint64_t v) {
  if (v == 0) throw std::logic_error("BigUnsigned division by zero");
  uint64_t rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    __uint128_t cur = (static_cast<__uint128_t>(rem) << 64) | limbs_[i];
    limbs_[i] = static_cast<uint64_t>(cur / v);
    rem = static_cast<uint64_t>(cur % v);
  }
  trim();
  return rem;
}

int BigUnsigned::compare(const BigUnsigned& o) const {
  if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
  for (size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
  }
  return 0;
}

std::string BigUnsigned::to_decimal() const {
  if (limbs_.empty()) return "0";
  BigUnsigned tmp = *this;
  constexpr uint64_t chunk = 10000000000000000000ull;  // 10^19
  std::string out;
  while (!tmp.is_zero()) {
    uint64_t r = tmp.divmod_u64(chunk);
    std::string part = std::to_string(r);
    if (!tmp.is_zero()) part.insert(0, 19 - part.size(), '0');
    out.insert(0, part);
  }
  return out;
}

BigUnsigned BigUnsigned::pow_u64(uint64_t base, uint64_t exp) {
  BigUnsigned r(1);
  BigUnsigned sq(base);
  while (exp) {
    if (exp & 1) r.mul_big(sq);
    exp >>= 1;
    if (exp) sq.mul_big(sq);
  }
  return r;
}

BigUnsigned BigUnsigned::binomial(uint64_t n, uint64_t k) {
  if (k > n) return BigUnsigned(0);
  k = std::min(k, n - k);
  BigUnsigned res(1);
  for (uint64_t i = 1; i <= k; ++i) {
    res.mul_u64(n + 1 - i);
    uint64_t rem = res.divmod_u64(i);
    if (rem != 0) throw std::logic_error("binomial: inexact division");
  }
  return res;
}

}  // namespace carrylab
