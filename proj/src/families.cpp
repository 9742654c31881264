#include "sumpaths/families.hpp"

#include <cmath>
#include <stdexcept>

#include "sumpaths/fft.hpp"

namespace sumpaths::families {

namespace detail {

void validate(const SumFamily& fam, const FieldContext& ctx) {
  const std::uint64_t p = ctx.p();
  if (fam.kind != Kind::birch && fam.a % p == 0) {
    throw std::invalid_argument(fam.name() +
                                ": parameter a must be nonzero mod p");
  }
  if (fam.kind == Kind::kloosterman2 && fam.alpha % p == 0) {
    throw std::invalid_argument(
        "kloosterman2: parameter alpha must be nonzero mod p");
  }
}

}  // namespace detail

std::string SumFamily::name() const {
  std::string base;
  switch (kind) {
    case Kind::kloosterman: base = "kloosterman"; break;
    case Kind::kloosterman2: base = "kloosterman2"; break;
    case Kind::birch: base = "birch"; break;
    case Kind::kloosterman_shift: base = "kloosterman-shift"; break;
  }
  if (ordering == Ordering::geometric) base += "-geometric";
  return base;
}

cplx complete_sum(const SumFamily& fam, const FieldContext& ctx) {
  const auto chi = ctx.chi();
  // Same accumulation and normalization as partial_sum_vector, so the
  // path endpoint reproduces this value exactly.
  const double norm = 1.0 / std::sqrt(static_cast<double>(ctx.p()));
  KahanCSum acc;
  for_each_exponent(fam, ctx, [&](std::uint64_t k) { acc.add(chi[k]); });
  return acc.value() * norm;
}

PathSample partial_sum_vector(const SumFamily& fam, const FieldContext& ctx) {
  const auto chi = ctx.chi();
  const double norm = 1.0 / std::sqrt(static_cast<double>(ctx.p()));
  PathSample path;
  path.vertices.reserve(fam.segments(ctx) + 1);
  path.vertices.emplace_back(0.0, 0.0);
  KahanCSum acc;
  for_each_exponent(fam, ctx, [&](std::uint64_t k) {
    acc.add(chi[k]);
    path.vertices.push_back(acc.value() * norm);
  });
  return path;
}

cplx path_eval(const PathSample& path, double t) {
  if (path.vertices.empty()) {
    throw std::invalid_argument("path_eval: empty path");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("path_eval: t must lie in [0,1]");
  }
  if (t == 0.0) return path.vertices.front();
  if (t == 1.0) return path.vertices.back();
  const std::size_t n = path.vertices.size() - 1;
  const double s = t * static_cast<double>(n);
  std::size_t j = static_cast<std::size_t>(s);
  if (j >= n) j = n - 1;
  const double frac = s - static_cast<double>(j);
  if (frac == 0.0) return path.vertices[j];
  return path.vertices[j] + frac * (path.vertices[j + 1] - path.vertices[j]);
}

double sup_norm(const PathSample& path) {
  if (path.vertices.empty()) {
    throw std::invalid_argument("sup_norm: empty path");
  }
  double m = 0.0;
  for (const cplx& z : path.vertices) m = std::max(m, std::abs(z));
  return m;
}

namespace {

// Last summation index of the truncated sum at parameter t.
// Multiplicative domain: x runs 1..J with J = floor((p-1)t).
// Full domain: x runs 0..J with J = min(floor(pt), p-1).
std::uint64_t window_end(std::uint64_t p, double t, Domain domain) {
  if (domain == Domain::multiplicative) {
    return static_cast<std::uint64_t>(std::floor((double)(p - 1) * t));
  }
  const std::uint64_t j = static_cast<std::uint64_t>(std::floor((double)p * t));
  return std::min<std::uint64_t>(j, p - 1);
}

}  // namespace

cplx window_fourier_coeff(const FieldContext& ctx, std::int64_t h, double t,
                          Domain domain) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("window_fourier_coeff: t must lie in [0,1]");
  }
  const std::uint64_t p = ctx.p();
  const double sqrt_p = std::sqrt(static_cast<double>(p));
  std::int64_t hr = h % static_cast<std::int64_t>(p);
  if (hr < 0) hr += static_cast<std::int64_t>(p);
  const std::uint64_t hm = static_cast<std::uint64_t>(hr);
  const std::uint64_t J = window_end(p, t, domain);

  if (domain == Domain::multiplicative) {
    // sum_{x=1}^{J} psi(hx)
    if (hm == 0) return cplx(static_cast<double>(J) / sqrt_p, 0.0);
    const cplx w = ctx.chi()[hm];
    const cplx num = 1.0 - ctx.chi()[hm * J % p];
    return w * num / (1.0 - w) / sqrt_p;
  }
  // sum_{x=0}^{J} psi(hx)
  if (hm == 0) return cplx(static_cast<double>(J + 1) / sqrt_p, 0.0);
  const cplx num = 1.0 - ctx.chi()[hm * (J + 1) % p];
  return num / (1.0 - ctx.chi()[hm]) / sqrt_p;
}

cplx window_fourier_coeff(const FieldContext& ctx, std::int64_t h, double t) {
  return window_fourier_coeff(ctx, h, t, Domain::multiplicative);
}

std::vector<cplx> complete_sum_table_direct(Kind base,
                                            const FieldContext& ctx) {
  const std::uint64_t p = ctx.p();
  const auto chi = ctx.chi();
  const auto inv = ctx.inv_table();
  std::vector<cplx> f(p);
  if (base == Kind::birch) {
    for (std::uint64_t x = 0; x < p; ++x) f[x] = chi[x * x % p * x % p];
  } else {
    f[0] = cplx(0.0, 0.0);
    for (std::uint64_t x = 1; x < p; ++x) f[x] = chi[inv[x]];
  }
  auto out = fft::prime_dft_direct(f, ctx);
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));
  for (auto& z : out) z *= norm;
  return out;
}

std::vector<cplx> complete_sum_table(Kind base, const FieldContext& ctx) {
  const std::uint64_t p = ctx.p();
  if (base == Kind::kloosterman2 || base == Kind::kloosterman_shift) {
    base = Kind::kloosterman;
  }
  if (p < 512) return complete_sum_table_direct(base, ctx);
  const auto chi = ctx.chi();
  const auto inv = ctx.inv_table();
  std::vector<cplx> f(p);
  if (base == Kind::birch) {
    for (std::uint64_t x = 0; x < p; ++x) f[x] = chi[x * x % p * x % p];
  } else {
    f[0] = cplx(0.0, 0.0);
    for (std::uint64_t x = 1; x < p; ++x) f[x] = chi[inv[x]];
  }
  auto out = fft::prime_dft(f, ctx);
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));
  for (auto& z : out) z *= norm;
  return out;
}

std::vector<cplx> shifted_sum_table(const SumFamily& fam,
                                    const FieldContext& ctx) {
  detail::validate(fam, ctx);
  if (fam.ordering != Ordering::natural) {
    throw std::invalid_argument(
        "shifted_sum_table: completion applies to natural ordering only");
  }
  const std::uint64_t p = ctx.p();
  const std::uint64_t a = fam.a % p;
  const Kind base = fam.kind == Kind::birch ? Kind::birch : Kind::kloosterman;
  const auto tbl = complete_sum_table(base, ctx);
  std::vector<cplx> shifted(p);
  switch (fam.kind) {
    case Kind::kloosterman:
    case Kind::birch:
      for (std::uint64_t h = 0; h < p; ++h) {
        shifted[h] = tbl[(a + p - h) % p];
      }
      break;
    case Kind::kloosterman2: {
      // sum_x psi((alpha a - h)x + alpha xbar) = Kl(alpha(alpha a - h)).
      const std::uint64_t al = fam.alpha % p;
      const std::uint64_t aa = al * a % p;
      for (std::uint64_t h = 0; h < p; ++h) {
        shifted[h] = tbl[al * ((aa + p - h) % p) % p];
      }
      break;
    }
    case Kind::kloosterman_shift:
      // sum_x psi((1 - h)x + a xbar) = Kl(a(1 - h)).
      for (std::uint64_t h = 0; h < p; ++h) {
        shifted[h] = tbl[a * ((1 + p - h) % p) % p];
      }
      break;
  }
  return shifted;
}

cplx completed_interpolant(const SumFamily& fam, const FieldContext& ctx,
                           double t, std::span<const cplx> shifted) {
  const std::uint64_t p = ctx.p();
  if (shifted.size() != p) {
    throw std::invalid_argument("completed_interpolant: bad table size");
  }
  const Domain dom = fam.domain();
  const std::int64_t half = static_cast<std::int64_t>((p - 1) / 2);
  KahanCSum acc;
  for (std::int64_t h = -half; h <= half; ++h) {
    const std::uint64_t hm =
        static_cast<std::uint64_t>(h < 0 ? h + (std::int64_t)p : h);
    acc.add(window_fourier_coeff(ctx, h, t, dom) * shifted[hm]);
  }
  return acc.value() / std::sqrt(static_cast<double>(p));
}

cplx completed_interpolant(const SumFamily& fam, const FieldContext& ctx,
                           double t) {
  const auto shifted = shifted_sum_table(fam, ctx);
  return completed_interpolant(fam, ctx, t, shifted);
}

}  // namespace sumpaths::families
