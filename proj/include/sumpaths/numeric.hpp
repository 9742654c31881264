#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace sumpaths {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi_v<double>;
inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

/// Kahan-compensated accumulator. Long sums of unit-modulus character
/// values must stay accurate to ~1e-8 absolute for p up to 1e5, which a
/// plain double accumulator does not guarantee.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  // Merging preserves determinism as long as merge order is fixed.
  void merge(const KahanSum& o) {
    add(o.s_);
    add(-o.c_);
  }
  double value() const { return s_ - c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

class KahanCSum {
 public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void merge(const KahanCSum& o) {
    re_.merge(o.re_);
    im_.merge(o.im_);
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

}  // namespace sumpaths
