#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>

#include <cmath>

#include "sumpaths/rng.hpp"

namespace sumpaths::sato_tate {

/// Seeded sampler of the semicircle measure (1/pi) sqrt(1-(x/2)^2) dx on
/// [-2,2]. A draw is 2 cos(theta) with theta inverted from the CDF
/// F(theta) = (theta - sin(theta)cos(theta))/pi by safeguarded Newton
/// iteration to 1e-12. One uniform variate per draw, so streams advance
/// deterministically.
class SatoTateSampler {
 public:
  explicit SatoTateSampler(std::uint64_t seed) : rng_(seed) {}
  SatoTateSampler(std::uint64_t master, std::uint64_t stream)
      : rng_(stream_key(master, stream)) {}

  double sample() { return 2.0 * std::cos(theta_from_unit(rng_.next_unit())); }

  /// CDF inversion: the theta in [0,pi] with (theta - sin cos)/pi = u.
  static double theta_from_unit(double u);

 private:
  CounterRng rng_;
};

/// mu-th moment of the semicircle measure: 0 for odd mu, the Catalan
/// number C_{mu/2} for even mu.
std::uint64_t st_moment(std::uint32_t mu);

/// Multiset of shifts with multiplicities; total() is the degree of the
/// moment it came from.
struct MultiplicityProfile {
  std::map<std::int64_t, std::uint32_t> mu;

  void add(std::int64_t shift, std::uint32_t count = 1) {
    if (count) mu[shift] += count;
  }
  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto& [k, v] : mu) s += v;
    return s;
  }
};

/// E(prod_h ST_h^{mu(h)}) for independent Sato-Tate variables: the product
/// of st_moment over the profile's entries.
std::uint64_t joint_moment(const MultiplicityProfile& profile);

}  // namespace sumpaths::sato_tate
