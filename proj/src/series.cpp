#include "sumpaths/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sumpaths/families.hpp"
#include "sumpaths/fft.hpp"

namespace sumpaths::series {

cplx beta(std::int64_t h, double t) {
  if (h == 0) return cplx(t, 0.0);
  const double ang = two_pi * static_cast<double>(h) * t;
  const cplx num(std::cos(ang) - 1.0, std::sin(ang));
  return num / cplx(0.0, two_pi * static_cast<double>(h));
}

cplx coefficient(std::int64_t h, double t, Variant variant) {
  if (variant == Variant::shift_minus_one && h == -1) return cplx(0.0, 0.0);
  return beta(h, t);
}

void SeriesConfig::validate() const {
  if (m < 1) throw std::invalid_argument("SeriesConfig: m must be >= 1");
  double prev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("SeriesConfig: grid values must lie in [0,1]");
    }
    if (i > 0 && t < prev) {
      throw std::invalid_argument("SeriesConfig: grid must be sorted");
    }
    prev = t;
  }
}

namespace {

std::vector<double> draw_block(std::uint32_t m,
                               sato_tate::SatoTateSampler& sampler) {
  // st[h + (m-1)] = ST_h, drawn in ascending h order.
  std::vector<double> st(2 * m - 1);
  for (auto& v : st) v = sampler.sample();
  return st;
}

}  // namespace

SeriesPathSample simulate_series(const SeriesConfig& cfg,
                                 sato_tate::SatoTateSampler& sampler) {
  cfg.validate();
  const std::uint32_t m = cfg.m;
  const std::vector<double> st = draw_block(m, sampler);
  const double st0 = st[m - 1];

  SeriesPathSample out;
  out.values.reserve(cfg.grid.size());
  for (const double t : cfg.grid) {
    // The t*ST_0 drift dominates; keep it out of the small-coefficient
    // accumulation.
    KahanCSum acc;
    const cplx rot = cplx(std::cos(two_pi * t), std::sin(two_pi * t));
    cplx rot_h(1.0, 0.0);
    for (std::uint32_t h = 1; h < m; ++h) {
      rot_h *= rot;  // e^{2 pi i h t}
      const cplx bh = (rot_h - 1.0) / cplx(0.0, two_pi * h);
      acc.add(bh * st[m - 1 + h]);
      const cplx bmh = std::conj(bh);  // beta(-h;t)
      if (!(cfg.variant == Variant::shift_minus_one && h == 1)) {
        acc.add(bmh * st[m - 1 - h]);
      }
    }
    out.values.push_back(acc.value() + t * st0);
  }
  return out;
}

std::vector<cplx> simulate_series_uniform(std::uint32_t m, std::uint32_t n,
                                          Variant variant,
                                          sato_tate::SatoTateSampler& sampler,
                                          bool include_endpoint) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("simulate_series_uniform: m, n must be >= 1");
  }
  const bool pow2 = (n & (n - 1)) == 0;
  if (!pow2) {
    SeriesConfig cfg;
    cfg.m = m;
    cfg.variant = variant;
    cfg.grid.resize(n);
    for (std::uint32_t j = 0; j < n; ++j) {
      cfg.grid[j] = static_cast<double>(j) / n;
    }
    if (include_endpoint) cfg.grid.push_back(1.0);
    return simulate_series(cfg, sampler).values;
  }

  const std::vector<double> st = draw_block(m, sampler);
  const double st0 = st[m - 1];

  // K_m(j/n) = sum_{h!=0} c_h e^{2 pi i h j/n} - sum_{h!=0} c_h + (j/n) ST_0
  // with c_h = ST_h/(2 pi i h); e^{2 pi i h j/n} folds exactly mod n.
  std::vector<cplx> folded(n, cplx(0.0, 0.0));
  KahanCSum offset;
  for (std::uint32_t h = 1; h < m; ++h) {
    const cplx cp = st[m - 1 + h] / cplx(0.0, two_pi * h);
    folded[h % n] += cp;
    offset.add(cp);
    if (!(variant == Variant::shift_minus_one && h == 1)) {
      const cplx cm = st[m - 1 - h] / cplx(0.0, -two_pi * h);
      folded[(n - h % n) % n] += cm;
      offset.add(cm);
    }
  }
  fft::transform_pow2(folded, +1);
  const cplx off = offset.value();
  for (std::uint32_t j = 0; j < n; ++j) {
    folded[j] += -off + cplx(static_cast<double>(j) / n * st0, 0.0);
  }
  if (include_endpoint) {
    // Every nonzero-h coefficient vanishes at t = 1.
    folded.push_back(cplx(st0, 0.0));
  }
  return folded;
}

cplx xp_coefficient(const arith::FieldContext& ctx, std::int64_t h, double t) {
  const std::uint64_t p = ctx.p();
  if (h % static_cast<std::int64_t>(p) == 0) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("xp_coefficient: t must lie in [0,1]");
    }
    // alpha_p(0;t)/sqrt(p) = floor((p-1)t)/p.
    const double J = std::floor(static_cast<double>(p - 1) * t);
    return cplx(J / static_cast<double>(p), 0.0);
  }
  return families::window_fourier_coeff(ctx, h, t) /
         std::sqrt(static_cast<double>(p));
}

double truncation_tail_variance(std::uint32_t m, double t) {
  if (m < 1) {
    throw std::invalid_argument("truncation_tail_variance: m must be >= 1");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("truncation_tail_variance: t must lie in [0,1]");
  }
  if (t == 0.0 || t == 1.0) return 0.0;  // every coefficient vanishes
  constexpr std::uint64_t H = 1000000;
  KahanSum acc;
  for (std::uint64_t h = m; h <= H; ++h) {
    const double s = std::sin(pi * static_cast<double>(h) * t);
    acc.add(2.0 * s * s / (pi * pi * static_cast<double>(h) * static_cast<double>(h)));
  }
  // Remaining tail lies in [0, 2/(pi^2 H)]; add the midpoint.
  return acc.value() + 1.0 / (pi * pi * static_cast<double>(H));
}

}  // namespace sumpaths::series
