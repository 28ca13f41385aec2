#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gmprime {

using BigInt = boost::multiprecision::cpp_int;
using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b);

/// floor(sqrt(n)), exact for the full 64-bit range.
u64 isqrt(u64 n);

/// floor(n^(1/k)) for k >= 1, exact.
u64 iroot(u64 n, unsigned k);

/// Returns (base, exponent) with exponent >= 2 when n = base^exponent,
/// otherwise nullopt.
std::optional<std::pair<u64, unsigned>> perfect_power(u64 n);

/// The first `count` primes, ascending.
std::vector<u64> first_primes(std::size_t count);

/// True iff every prime factor of `value` is <= `bound` (value >= 1).
bool is_smooth(u64 value, u64 bound);

/// Narrowing helper for the arbitrary-precision path.
std::optional<u64> to_u64(const BigInt& value);

}  // namespace gmprime
