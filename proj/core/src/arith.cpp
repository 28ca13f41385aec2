#include "gmprime/arith.hpp"

#include <cmath>
#include <limits>

namespace gmprime {

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 isqrt(u64 n) {
  if (n < 2) return n;
  auto r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && (r > n / r)) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

namespace {

// base^k <= n, without overflow.
bool pow_le(u64 base, unsigned k, u64 n) {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= base;
    if (acc > n) return false;
  }
  return true;
}

}  // namespace

u64 iroot(u64 n, unsigned k) {
  if (k == 0) return 0;
  if (k == 1 || n < 2) return n;
  auto r = static_cast<u64>(std::pow(static_cast<long double>(n), 1.0L / k));
  while (r > 0 && !pow_le(r, k, n)) --r;
  while (pow_le(r + 1, k, n)) ++r;
  return r;
}

std::optional<std::pair<u64, unsigned>> perfect_power(u64 n) {
  if (n < 4) return std::nullopt;
  for (unsigned k = 2; k < 64 && (u64{1} << k) <= n; ++k) {
    u64 r = iroot(n, k);
    if (r >= 2 && pow_le(r, k, n) && !pow_le(r, k, n - 1)) return std::pair{r, k};
  }
  return std::nullopt;
}

std::vector<u64> first_primes(std::size_t count) {
  std::vector<u64> primes;
  primes.reserve(count);
  for (u64 c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (u64 p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

bool is_smooth(u64 value, u64 bound) {
  if (value <= 1) return true;
  for (u64 p = 2; p <= bound && p <= value; ++p) {
    while (value % p == 0) value /= p;
    if (value == 1) return true;
  }
  return value == 1;
}

std::optional<u64> to_u64(const BigInt& value) {
  if (value < 0 || value > std::numeric_limits<u64>::max()) return std::nullopt;
  return value.convert_to<u64>();
}

}  // namespace gmprime
