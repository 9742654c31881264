#include "sumpaths/arith.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sumpaths::arith {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp,
                      std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven deterministic witness set below 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t mod_inverse(std::uint64_t x, std::uint64_t p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("mod_inverse: modulus " + std::to_string(p) +
                                " is not prime");
  }
  x %= p;
  if (x == 0) {
    throw std::invalid_argument("mod_inverse: 0 has no inverse mod " +
                                std::to_string(p));
  }
  // Fermat: x^(p-2) = x^{-1} for prime p.
  return pow_mod(x, p - 2, p);
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("primitive_root: " + std::to_string(p) +
                                " is not prime");
  }
  if (p == 2) return 1;
  // Distinct prime factors of p-1 by trial division.
  std::vector<std::uint64_t> factors;
  std::uint64_t m = p - 1;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::uint64_t q : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: no generator found");
}

FieldContext::FieldContext(std::uint64_t p) : p_(p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw std::invalid_argument(
        "FieldContext: p must be an odd prime >= 3, got " + std::to_string(p));
  }
  if (p > (1ull << 31)) {
    throw std::invalid_argument(
        "FieldContext: p too large for table-based context");
  }
  inv_.resize(p);
  inv_[1] = 1;
  // inv[x] = -(p/x) * inv[p mod x] mod p, an O(p) pass.
  for (std::uint64_t x = 2; x < p; ++x) {
    inv_[x] = static_cast<std::uint32_t>(
        (p - (p / x) * inv_[p % x] % p) % p);
  }
  chi_.resize(p);
  chi_[0] = cplx(1.0, 0.0);
  for (std::uint64_t k = 1; k < p; ++k) {
    const double ang = two_pi * (static_cast<double>(k) / static_cast<double>(p));
    chi_[k] = cplx(std::cos(ang), std::sin(ang));
  }
}

}  // namespace sumpaths::arith
