#pragma once

// Minimal arbitrary-precision unsigned integer: just the operations the
// digit analysis needs (small-word multiply/divide, exact binomials).

#include <cstdint>
#include <string>
#include <vector>

namespace carrylab {

class BigUnsigned {
public:
  BigUnsigned() = default;
  explicit BigUnsigned(uint64_t v) {
    if (v) limbs_.push_back(v);
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }

  // little-endian 64-bit limbs, no trailing zero limb
  const std::vector<uint64_t>& limbs() const { return limbs_; }

  size_t bit_length() const;

  void add_u64(uint64_t v);
  void sub_u64(uint64_t v);  // requires *this >= v
  void mul_u64(uint64_t v);
  void mul_big(const BigUnsigned& o);
  // divides in place, returns the remainder; v must be nonzero
  uint64_t divmod_u64(uint64_t v);

  int compare(const BigUnsigned& o) const;
  bool operator==(const BigUnsigned& o) const { return limbs_ == o.limbs_; }

  uint64_t low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }
  bool fits_u64() const { return limbs_.size() <= 1; }

  std::string to_decimal() const;

  static BigUnsigned pow_u64(uint64_t base, uint64_t exp);
  // C(n, k) by the usual running product, exact division at every step
  static BigUnsigned binomial(uint64_t n, uint64_t k);

private:
  void trim();
  std::vector<uint64_t> limbs_;
};

}  // namespace carrylab
