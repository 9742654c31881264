#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sumpaths/numeric.hpp"

namespace sumpaths::arith {

/// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// Inverse of x modulo an odd prime p, in 1..p-1.
/// Throws std::invalid_argument if x == 0 mod p or p is not prime.
std::uint64_t mod_inverse(std::uint64_t x, std::uint64_t p);

/// Smallest generator of F_p^* (order exactly p-1).
std::uint64_t primitive_root(std::uint64_t p);

/// An odd prime p together with the tables every sweep needs: inverses
/// mod p and the additive character psi_p(k) = e^{2 pi i k / p}.
/// Immutable after construction; safe to share across threads.
class FieldContext {
 public:
  explicit FieldContext(std::uint64_t p);

  std::uint64_t p() const { return p_; }

  /// Inverse of x mod p for x in 1..p-1.
  std::uint32_t inv(std::uint64_t x) const { return inv_[x]; }

  /// psi_p(z) = e^{2 pi i z / p}; z is reduced mod p, any sign accepted.
  cplx psi(std::int64_t z) const {
    std::int64_t r = z % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return chi_[static_cast<std::uint64_t>(r)];
  }

  /// Raw character table, chi[k] = psi_p(k) for 0 <= k < p. Hot loops
  /// index it directly with pre-reduced exponents.
  std::span<const cplx> chi() const { return chi_; }
  std::span<const std::uint32_t> inv_table() const { return inv_; }

 private:
  std::uint64_t p_;
  std::vector<std::uint32_t> inv_;
  std::vector<cplx> chi_;
};

}  // namespace sumpaths::arith
