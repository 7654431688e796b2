#pragma once

// 64-bit modular arithmetic, deterministic primality and factorization.

#include <cstdint>
#include <vector>

namespace carrylab {

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Miller-Rabin with a base set that is exact for all 64-bit inputs.
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Trial division, stopping early once the cofactor is prime.
inline std::vector<std::pair<uint64_t, uint32_t>> factor_u64(uint64_t n) {
  std::vector<std::pair<uint64_t, uint32_t>> out;
  auto push = [&](uint64_t p, uint32_t e) { out.emplace_back(p, e); };
  for (uint64_t q : {2ull, 3ull, 5ull}) {
    if (n % q == 0) {
      uint32_t e = 0;
      while (n % q == 0) {
        n /= q;
        ++e;
      }
      push(q, e);
    }
  }
  // 2/3/5 wheel
  static constexpr uint64_t wheel[] = {4, 2, 4, 2, 4, 6, 2, 6};
  uint64_t q = 7;
  size_t wi = 0;
  while (n > 1) {
    if (q > n / q) {
      push(n, 1);
      break;
    }
    if (is_prime_u64(n)) {
      push(n, 1);
      break;
    }
    if (n % q == 0) {
      uint32_t e = 0;
      while (n % q == 0) {
        n /= q;
        ++e;
      }
      push(q, e);
    }
    q += wheel[wi];
    wi = (wi + 1) & 7;
  }
  return out;
}

}  // namespace carrylab
