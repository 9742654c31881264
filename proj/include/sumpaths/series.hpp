#pragma once

#include <cstdint>
#include <vector>

#include "sumpaths/arith.hpp"
#include "sumpaths/numeric.hpp"
#include "sumpaths/sato_tate.hpp"

namespace sumpaths::series {

enum class Variant : std::uint8_t {
  standard,         // coefficients beta(h;t) for all h
  shift_minus_one,  // the modified limit with the h = -1 term removed
};

/// beta(h;t) = (e^{2 pi i h t} - 1) / (2 pi i h), with beta(0;t) = t.
cplx beta(std::int64_t h, double t);

/// Coefficient of ST_h in the simulated series; equals beta except that
/// the shift_minus_one variant zeroes h = -1 (its displayed correction
/// term cancels beta(-1;t) identically).
cplx coefficient(std::int64_t h, double t, Variant variant);

/// Truncation, evaluation grid and variant for one simulation.
/// Realizations draw the 2m-1 variables ST_h, h = -(m-1)..(m-1), in
/// ascending h order from the sampler.
struct SeriesConfig {
  std::uint32_t m = 1;
  std::vector<double> grid;  // sorted t-values in [0,1]
  Variant variant = Variant::standard;

  void validate() const;
};

/// One realization of the truncated series on the configured grid.
struct SeriesPathSample {
  std::vector<cplx> values;  // one value per grid point
};

SeriesPathSample simulate_series(const SeriesConfig& cfg,
                                 sato_tate::SatoTateSampler& sampler);

/// Fast path for the uniform grid t = j/n, j = 0..n-1: one power-of-two
/// transform per realization when n is a power of two (coefficients fold
/// exactly at grid points), otherwise direct evaluation. With
/// include_endpoint the value at t = 1 is appended (n+1 values).
std::vector<cplx> simulate_series_uniform(std::uint32_t m, std::uint32_t n,
                                          Variant variant,
                                          sato_tate::SatoTateSampler& sampler,
                                          bool include_endpoint = false);

/// Coefficient of ST_h in the finite-p comparison variable X_p(t):
/// alpha_p(h;t)/sqrt(p).
cplx xp_coefficient(const arith::FieldContext& ctx, std::int64_t h, double t);

/// sigma_m^2 = sum_{|h| >= m} |beta(h;t)|^2, via the closed form
/// |beta(h;t)|^2 = sin^2(pi h t)/(pi h)^2 summed to H = 1e6 with the
/// analytic tail (bounded by 2/(pi^2 (H-1))) added at its midpoint;
/// certified accuracy ~1e-8.
double truncation_tail_variance(std::uint32_t m, double t);

}  // namespace sumpaths::series
