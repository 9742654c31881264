#include "sumpaths/sato_tate.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "sumpaths/numeric.hpp"

namespace sumpaths::sato_tate {

namespace {

double cdf(double theta) {
  return (theta - std::sin(theta) * std::cos(theta)) / pi;
}

// theta(w) sampled at uniform knots in w = cbrt(u), u in [0, 1/2]; the
// cube-root substitution absorbs the u^{1/3} behavior at the left edge so
// linear interpolation gives a Newton starting point good to ~1e-7.
constexpr int kKnots = 2048;

std::array<double, kKnots + 1> build_theta_knots() {
  std::array<double, kKnots + 1> knots{};
  const double wmax = std::cbrt(0.5);
  for (int i = 0; i <= kKnots; ++i) {
    const double w = wmax * static_cast<double>(i) / kKnots;
    const double u = w * w * w;
    double lo = 0.0, hi = pi / 2;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cdf(mid) < u ? lo : hi) = mid;
    }
    knots[i] = 0.5 * (lo + hi);
  }
  return knots;
}

const std::array<double, kKnots + 1>& theta_knots() {
  static const std::array<double, kKnots + 1> table = build_theta_knots();
  return table;
}

}  // namespace

double SatoTateSampler::theta_from_unit(double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::invalid_argument("theta_from_unit: u must lie in [0,1)");
  }
  const bool mirror = u > 0.5;
  const double v = mirror ? 1.0 - u : u;

  const auto& knots = theta_knots();
  const double wmax = std::cbrt(0.5);
  const double w = std::cbrt(v);
  const double s = w / wmax * kKnots;
  const int i = std::min(static_cast<int>(s), kKnots - 1);
  double theta = knots[i] + (s - i) * (knots[i + 1] - knots[i]);

  // Safeguarded Newton on F(theta) - v; F' = (2/pi) sin^2(theta).
  double lo = 0.0, hi = pi / 2;
  for (int it = 0; it < 100; ++it) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double f = (theta - st * ct) / pi - v;
    (f < 0.0 ? lo : hi) = theta;
    const double fp = (2.0 / pi) * st * st;
    const double step = fp > 0.0 ? f / fp : 0.0;
    if (std::abs(step) <= 1e-12) {
      theta -= step;
      break;
    }
    const double next = theta - step;
    theta = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
  }
  return mirror ? pi - theta : theta;
}

std::uint64_t st_moment(std::uint32_t mu) {
  if (mu % 2 == 1) return 0;
  const std::uint32_t k = mu / 2;
  // Catalan numbers by the exact recurrence C_{j+1} = C_j * 2(2j+1)/(j+2).
  unsigned __int128 c = 1;
  for (std::uint32_t j = 0; j < k; ++j) {
    c = c * 2 * (2 * j + 1) / (j + 2);
    if (c > static_cast<unsigned __int128>(UINT64_MAX)) {
      throw std::overflow_error("st_moment: result exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t joint_moment(const MultiplicityProfile& profile) {
  unsigned __int128 prod = 1;
  for (const auto& [shift, mult] : profile.mu) {
    const std::uint64_t a = st_moment(mult);
    if (a == 0) return 0;
    prod *= a;
    if (prod > static_cast<unsigned __int128>(UINT64_MAX)) {
      throw std::overflow_error("joint_moment: result exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(prod);
}

}  // namespace sumpaths::sato_tate
