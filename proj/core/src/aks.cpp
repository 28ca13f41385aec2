#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "gmprime/errors.hpp"
#include "gmprime/primality.hpp"

namespace gmprime {

namespace {

// Coefficients of a polynomial modulo (X^r - 1, n); index i holds X^i.
using Poly = std::vector<u64>;

u64 euler_phi(u64 r) {
  u64 result = r;
  for (u64 p = 2; p * p <= r; ++p) {
    if (r % p != 0) continue;
    while (r % p == 0) r /= p;
    result -= result / p;
  }
  if (r > 1) result -= result / r;
  return result;
}

// Smallest r with ord_r(n) > floor(log2(n)^2).
u64 find_order_modulus(u64 n, u64 max_k) {
  for (u64 r = 2;; ++r) {
    if (gcd(r, n) != 1) continue;
    bool small_order = false;
    u64 x = 1;
    for (u64 k = 1; k <= max_k; ++k) {
      x = mul_mod(x, n % r, r);
      if (x == 1) {
        small_order = true;
        break;
      }
    }
    if (!small_order) return r;
  }
}

class PolyRing {
 public:
  PolyRing(u64 r, u64 n) : r_(r), n_(n), acc_(r), small_(n <= 0xffffffffULL) {}

  Poly square(const Poly& a) {
    std::fill(acc_.begin(), acc_.end(), u128{0});
    if (small_) {
      // Products fit in 64 bits and r of them fit in 128, so reduce once.
      for (u64 i = 0; i < r_; ++i) {
        if (a[i] == 0) continue;
        const u128 ai = a[i];
        u64 j = 0;
        for (u64 k = i; j < r_ - i; ++j, ++k) acc_[k] += ai * a[j];
        for (u64 k = 0; j < r_; ++j, ++k) acc_[k] += ai * a[j];
      }
      Poly out(r_);
      for (u64 k = 0; k < r_; ++k) out[k] = static_cast<u64>(acc_[k] % n_);
      return out;
    }
    Poly out(r_, 0);
    for (u64 i = 0; i < r_; ++i) {
      if (a[i] == 0) continue;
      for (u64 j = 0; j < r_; ++j) {
        const u64 k = (i + j) % r_;
        out[k] = static_cast<u64>((static_cast<u128>(out[k]) + mul_mod(a[i], a[j], n_)) % n_);
      }
    }
    return out;
  }

  // a * (X + c)
  Poly times_linear(const Poly& a, u64 c) const {
    Poly out(r_);
    for (u64 i = 0; i < r_; ++i) {
      const u64 shifted = a[(i + r_ - 1) % r_];
      out[i] = static_cast<u64>((static_cast<u128>(shifted) + mul_mod(a[i], c, n_)) % n_);
    }
    return out;
  }

  // (X + c)^n
  Poly power_of_linear(u64 c) {
    Poly result(r_, 0);
    result[0] = 1 % n_;
    for (int bit = 63 - std::countl_zero(n_); bit >= 0; --bit) {
      result = square(result);
      if ((n_ >> bit) & 1U) result = times_linear(result, c);
    }
    return result;
  }

 private:
  u64 r_;
  u64 n_;
  std::vector<u128> acc_;
  bool small_;
};

}  // namespace

PrimalityVerdict aks_is_prime(u64 n) {
  if (n < 2) throw DomainError("AKS requires n >= 2, got " + std::to_string(n));
  PrimalityVerdict v;
  v.method = Method::AKS;

  if (auto pp = perfect_power(n)) {
    v.evidence = evidence::PerfectPower{pp->first, pp->second};
    return v;
  }

  const double log2n = std::log2(static_cast<double>(n));
  const auto max_k = static_cast<u64>(std::floor(log2n * log2n));
  const u64 r = find_order_modulus(n, max_k);

  for (u64 a = 2; a <= r && a < n; ++a) {
    const u64 g = gcd(a, n);
    if (g > 1 && g < n) {
      v.evidence = evidence::Divisor{g};
      return v;
    }
  }
  if (n <= r) {
    v.classification = Classification::Prime;
    return v;
  }

  const auto limit =
      static_cast<u64>(std::floor(std::sqrt(static_cast<double>(euler_phi(r))) * log2n));
  PolyRing ring(r, n);
  for (u64 a = 1; a <= limit; ++a) {
    Poly lhs = ring.power_of_linear(a % n);
    Poly rhs(r, 0);
    rhs[n % r] = 1;
    rhs[0] = static_cast<u64>((static_cast<u128>(rhs[0]) + a) % n);
    if (lhs != rhs) {
      v.evidence = evidence::CongruenceFailure{a};
      return v;
    }
  }
  v.classification = Classification::Prime;
  return v;
}

}  // namespace gmprime
