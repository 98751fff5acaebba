#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "fqcount/errors.hpp"

namespace fqcount {

// All bound formulas are evaluated in exact arbitrary-precision integer
// arithmetic; no floating point is used anywhere in this library.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(BigInt base, uint64_t e) {
  BigInt r = 1;
  while (e != 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// q^e with negative exponents flooring to 0 (integer part of q^e for e < 0).
inline BigInt floor_pow(uint64_t q, int64_t e) {
  if (e < 0) return 0;
  return ipow(BigInt(q), static_cast<uint64_t>(e));
}

inline BigInt binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact at every step: r is C(n-k+i, i)
  }
  return r;
}

inline bool fits_u64(const BigInt& v) {
  return v >= 0 && v <= BigInt(UINT64_MAX);
}

inline uint64_t to_u64(const BigInt& v, const char* what) {
  if (!fits_u64(v)) fail(Errc::too_large, std::string(what) + " does not fit in 64 bits");
  return static_cast<uint64_t>(v);
}

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Decomposes q = p^k with p prime; empty if q is not a prime power.
inline std::optional<std::pair<uint64_t, uint32_t>> prime_power_decompose(uint64_t q) {
  if (q < 2) return std::nullopt;
  uint64_t p = q;
  for (uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  uint32_t k = 0;
  uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) return std::nullopt;
  return std::make_pair(p, k);
}

}  // namespace fqcount
