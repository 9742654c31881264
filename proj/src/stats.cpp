#include "sumpaths/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "sumpaths/parallel.hpp"

namespace sumpaths::stats {

namespace {

using families::Domain;
using families::Kind;

cplx pow_small(cplx z, std::uint32_t e) {
  cplx r(1.0, 0.0);
  for (std::uint32_t i = 0; i < e; ++i) r *= z;
  return r;
}

double pow_small(double z, std::uint32_t e) {
  double r = 1.0;
  for (std::uint32_t i = 0; i < e; ++i) r *= z;
  return r;
}

/// Number of parameters omega and the family instance for each.
struct ParameterSpace {
  const SumFamily* base;
  std::uint64_t p;

  std::uint64_t size() const {
    const std::uint64_t n = p - 1;
    return base->kind == Kind::kloosterman2 ? n * n : n;
  }
  SumFamily at(std::uint64_t w) const {
    SumFamily f = *base;
    const std::uint64_t n = p - 1;
    if (base->kind == Kind::kloosterman2) {
      f.alpha = 1 + w / n;
      f.a = 1 + w % n;
    } else {
      f.a = 1 + w;
    }
    return f;
  }
};

// Vertex marks needed to evaluate the interpolated path at each t.
struct Mark {
  std::uint64_t lo = 0;     // vertex index
  std::uint64_t hi = 0;     // lo or lo+1
  double frac = 0.0;        // 0 => value is exactly vertex lo
};

Mark mark_for(double t, std::uint64_t segments) {
  Mark mk;
  if (t == 0.0) return mk;
  if (t == 1.0) {
    mk.lo = mk.hi = segments;
    return mk;
  }
  const double s = t * static_cast<double>(segments);
  std::uint64_t j = static_cast<std::uint64_t>(s);
  if (j >= segments) j = segments - 1;
  const double frac = s - static_cast<double>(j);
  mk.lo = j;
  mk.hi = frac == 0.0 ? j : j + 1;
  mk.frac = frac;
  return mk;
}

}  // namespace

void MomentSpec::validate() const {
  double prev = -1.0;
  for (const auto& pt : points) {
    if (!(pt.t >= 0.0 && pt.t <= 1.0)) {
      throw std::invalid_argument("MomentSpec: t must lie in [0,1]");
    }
    if (pt.t <= prev) {
      throw std::invalid_argument("MomentSpec: t values must be strictly increasing");
    }
    prev = pt.t;
  }
}

std::uint32_t MomentSpec::degree() const {
  std::uint32_t q = 0;
  for (const auto& pt : points) q += pt.n + pt.m;
  return q;
}

cplx empirical_mixed_moment(const SumFamily& fam, const FieldContext& ctx,
                            const MomentSpec& spec, unsigned workers) {
  spec.validate();
  if (spec.degree() == 0) return cplx(1.0, 0.0);  // empty product

  const std::uint64_t p = ctx.p();
  const auto chi = ctx.chi();
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));
  const std::uint64_t segments = fam.segments(ctx);

  std::vector<Mark> marks(spec.points.size());
  std::uint64_t max_vertex = 0;
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    marks[i] = mark_for(spec.points[i].t, segments);
    max_vertex = std::max(max_vertex, marks[i].hi);
  }

  // Vertex capture events, sorted by vertex index; shared by every omega.
  struct Event {
    std::uint64_t vtx;
    std::uint32_t slot;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    events.push_back({marks[i].lo, static_cast<std::uint32_t>(2 * i)});
    events.push_back({marks[i].hi, static_cast<std::uint32_t>(2 * i + 1)});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.vtx < b.vtx; });

  const ParameterSpace space{&fam, p};
  const std::uint64_t n_omega = space.size();
  constexpr std::uint64_t kChunk = 256;
  std::vector<KahanCSum> partial(chunk_count(n_omega, kChunk));

  for_chunks(n_omega, workers, kChunk,
             [&](std::uint64_t c, std::uint64_t b, std::uint64_t e) {
    KahanCSum acc;
    std::vector<cplx> vertex(marks.size() * 2);
    for (std::uint64_t w = b; w < e; ++w) {
      const SumFamily f = space.at(w);
      // One prefix walk collecting the marked vertices.
      KahanCSum run;
      std::uint64_t j = 0;
      std::size_t ei = 0;
      while (ei < events.size() && events[ei].vtx == 0) {
        vertex[events[ei].slot] = cplx(0.0, 0.0);
        ++ei;
      }
      if (max_vertex > 0) {
        families::for_each_exponent_prefix(f, ctx, max_vertex,
                                           [&](std::uint64_t k) {
          run.add(chi[k]);
          ++j;
          if (ei < events.size() && events[ei].vtx == j) {
            const cplx val = run.value() * norm;
            do {
              vertex[events[ei].slot] = val;
              ++ei;
            } while (ei < events.size() && events[ei].vtx == j);
          }
        });
      }
      cplx prod(1.0, 0.0);
      for (std::size_t i = 0; i < marks.size(); ++i) {
        const auto& mk = marks[i];
        cplx val = vertex[2 * i];
        if (mk.frac != 0.0) {
          val = vertex[2 * i] + mk.frac * (vertex[2 * i + 1] - vertex[2 * i]);
        }
        prod *= pow_small(val, spec.points[i].n);
        prod *= pow_small(std::conj(val), spec.points[i].m);
      }
      acc.add(prod);
    }
    partial[c] = acc;
  });

  KahanCSum total;
  for (const auto& part : partial) total.merge(part);
  return total.value() / static_cast<double>(n_omega);
}

TheoreticalMoment theoretical_mixed_moment(const MomentSpec& spec,
                                           const ExpansionMethod& method) {
  spec.validate();
  const std::uint32_t q = spec.degree();
  if (q == 0) return {cplx(1.0, 0.0), 0.0};
  if (q > 4) {
    throw std::invalid_argument(
        "theoretical_mixed_moment: expansion supports degree <= 4");
  }
  if (q % 2 == 1) return {cplx(0.0, 0.0), 0.0};  // odd moments vanish

  // Positions: one coefficient sequence c(h) = beta(h;t) (or its
  // conjugate) per factor.
  struct Position {
    double t;
    bool conj;
  };
  std::vector<Position> pos;
  for (const auto& pt : spec.points) {
    for (std::uint32_t i = 0; i < pt.n; ++i) pos.push_back({pt.t, false});
    for (std::uint32_t i = 0; i < pt.m; ++i) pos.push_back({pt.t, true});
  }

  const std::int64_t H = method.H;
  if (H < 2) throw std::invalid_argument("ExpansionMethod: H must be >= 2");
  auto coeff = [&](std::size_t i, std::int64_t h) {
    const cplx b = series::beta(h, pos[i].t);
    return pos[i].conj ? std::conj(b) : b;
  };
  auto pair_sum = [&](std::size_t i, std::size_t j) {
    KahanCSum acc;
    for (std::int64_t h = -(H - 1); h < H; ++h) {
      acc.add(coeff(i, h) * coeff(j, h));
    }
    return acc.value();
  };
  // |beta(h;t)| <= 1/(pi |h|): pairwise tails are summable explicitly.
  const double tau2 = 2.0 / (pi * pi * static_cast<double>(H - 1));
  const double tau4 =
      2.0 / (3.0 * pi * pi * pi * pi * std::pow(static_cast<double>(H - 1), 3));

  if (q == 2) {
    return {pair_sum(0, 1), tau2};
  }

  // Degree 4: sum over shift assignments with even multiplicities:
  //   E = sum_{pairings} P_ab P_cd - Q,
  // the all-equal block "A(4)=2" minus the three same-h collisions of the
  // pairings (each A(2)^2=1) leaving the -Q term.
  KahanCSum q4;
  for (std::int64_t h = -(H - 1); h < H; ++h) {
    q4.add(coeff(0, h) * coeff(1, h) * coeff(2, h) * coeff(3, h));
  }
  const cplx Q = q4.value();
  static constexpr int pairings[3][4] = {
      {0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  cplx value = -Q;
  double err = tau4;
  for (const auto& pr : pairings) {
    const cplx pa = pair_sum(pr[0], pr[1]);
    const cplx pb = pair_sum(pr[2], pr[3]);
    value += pa * pb;
    err += std::abs(pa) * tau2 + std::abs(pb) * tau2 + tau2 * tau2;
  }
  return {value, err};
}

TheoreticalMoment theoretical_mixed_moment(const MomentSpec& spec,
                                           const MonteCarloMethod& method) {
  spec.validate();
  if (spec.degree() == 0) return {cplx(1.0, 0.0), 0.0};
  if (method.samples == 0) {
    throw std::invalid_argument("MonteCarloMethod: samples must be > 0");
  }
  series::SeriesConfig cfg;
  cfg.m = method.m;
  for (const auto& pt : spec.points) cfg.grid.push_back(pt.t);
  cfg.validate();

  constexpr std::uint64_t kChunk = 64;
  struct Acc {
    KahanCSum sum;
    KahanSum sq_re, sq_im;
  };
  std::vector<Acc> partial(chunk_count(method.samples, kChunk));
  for_chunks(method.samples, method.workers, kChunk,
             [&](std::uint64_t c, std::uint64_t b, std::uint64_t e) {
    Acc acc;
    for (std::uint64_t r = b; r < e; ++r) {
      sato_tate::SatoTateSampler sampler(method.seed, r);
      const auto sample = series::simulate_series(cfg, sampler);
      cplx prod(1.0, 0.0);
      for (std::size_t i = 0; i < spec.points.size(); ++i) {
        prod *= pow_small(sample.values[i], spec.points[i].n);
        prod *= pow_small(std::conj(sample.values[i]), spec.points[i].m);
      }
      acc.sum.add(prod);
      acc.sq_re.add(prod.real() * prod.real());
      acc.sq_im.add(prod.imag() * prod.imag());
    }
    partial[c] = acc;
  });

  KahanCSum sum;
  KahanSum sq_re, sq_im;
  for (const auto& part : partial) {
    sum.merge(part.sum);
    sq_re.merge(part.sq_re);
    sq_im.merge(part.sq_im);
  }
  const double n = static_cast<double>(method.samples);
  const cplx mean = sum.value() / n;
  const double var_re =
      std::max(0.0, sq_re.value() / n - mean.real() * mean.real());
  const double var_im =
      std::max(0.0, sq_im.value() / n - mean.imag() * mean.imag());
  return {mean, std::sqrt((var_re + var_im) / n)};
}

cplx sums_of_products(families::Kind base, const FieldContext& ctx,
                      const sato_tate::MultiplicityProfile& profile) {
  const std::uint64_t p = ctx.p();
  const auto tbl = families::complete_sum_table(base, ctx);
  // Reduce shifts once.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> shifts;
  for (const auto& [h, mult] : profile.mu) {
    std::int64_t r = h % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    shifts.emplace_back(static_cast<std::uint64_t>(r), mult);
  }
  KahanCSum acc;
  for (std::uint64_t a = 1; a < p; ++a) {
    cplx prod(1.0, 0.0);
    for (const auto& [h, mult] : shifts) {
      prod *= pow_small(tbl[(a + p - h) % p], mult);
    }
    acc.add(prod);
  }
  return acc.value() / static_cast<double>(p - 1);
}

double ks_distance(std::span<const double> sample_a,
                   std::span<const double> sample_b) {
  if (sample_a.empty() || sample_b.empty()) {
    throw std::invalid_argument("ks_distance: samples must be nonempty");
  }
  std::vector<double> a(sample_a.begin(), sample_a.end());
  std::vector<double> b(sample_b.begin(), sample_b.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() || j < b.size()) {
    double v;
    if (i < a.size() && (j == b.size() || a[i] <= b[j])) {
      v = a[i];
    } else {
      v = b[j];
    }
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<cplx> empirical_point_samples(const SumFamily& fam,
                                          const FieldContext& ctx, double t,
                                          unsigned workers) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("empirical_point_samples: t must lie in [0,1]");
  }
  const std::uint64_t p = ctx.p();
  const auto chi = ctx.chi();
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));
  const Mark mk = mark_for(t, fam.segments(ctx));

  const ParameterSpace space{&fam, p};
  const std::uint64_t n_omega = space.size();
  std::vector<cplx> out(n_omega);
  constexpr std::uint64_t kChunk = 256;
  for_chunks(n_omega, workers, kChunk,
             [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t w = b; w < e; ++w) {
      const SumFamily f = space.at(w);
      KahanCSum run;
      std::uint64_t j = 0;
      cplx lo(0.0, 0.0), hi(0.0, 0.0);
      families::for_each_exponent_prefix(f, ctx, mk.hi, [&](std::uint64_t k) {
        run.add(chi[k]);
        ++j;
        if (j == mk.lo) lo = run.value() * norm;
        if (j == mk.hi) hi = run.value() * norm;
      });
      out[w] = mk.frac == 0.0 ? (mk.lo == 0 ? cplx(0.0, 0.0) : lo)
                              : lo + mk.frac * (hi - lo);
    }
  });
  return out;
}

std::vector<cplx> simulated_point_samples(double t, std::uint32_t m,
                                          std::uint64_t samples,
                                          std::uint64_t seed, unsigned workers,
                                          series::Variant variant) {
  series::SeriesConfig cfg;
  cfg.m = m;
  cfg.grid = {t};
  cfg.variant = variant;
  cfg.validate();
  std::vector<cplx> out(samples);
  constexpr std::uint64_t kChunk = 64;
  for_chunks(samples, workers, kChunk,
             [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t r = b; r < e; ++r) {
      sato_tate::SatoTateSampler sampler(seed, r);
      out[r] = series::simulate_series(cfg, sampler).values[0];
    }
  });
  return out;
}

namespace {

void validate_thresholds(std::span<const double> thresholds) {
  double prev = -1.0;
  for (double a : thresholds) {
    if (!(a >= 0.0)) {
      throw std::invalid_argument("thresholds must be non-negative");
    }
    if (a <= prev) {
      throw std::invalid_argument("thresholds must be increasing");
    }
    prev = a;
  }
}

TailEstimate assemble_tail(std::span<const double> thresholds,
                           std::vector<std::uint64_t> counts,
                           std::uint64_t samples) {
  TailEstimate est;
  est.thresholds.assign(thresholds.begin(), thresholds.end());
  est.exceedances = std::move(counts);
  est.samples = samples;
  est.probabilities.resize(est.exceedances.size());
  for (std::size_t i = 0; i < est.exceedances.size(); ++i) {
    est.probabilities[i] =
        static_cast<double>(est.exceedances[i]) / static_cast<double>(samples);
  }
  return est;
}

}  // namespace

std::vector<double> empirical_sup_norms(const SumFamily& fam,
                                        const FieldContext& ctx,
                                        unsigned workers) {
  const std::uint64_t p = ctx.p();
  const auto chi = ctx.chi();
  const double norm2 = 1.0 / static_cast<double>(p);  // |.|^2 scale
  const ParameterSpace space{&fam, p};
  const std::uint64_t n_omega = space.size();
  std::vector<double> sups(n_omega);
  constexpr std::uint64_t kChunk = 64;
  for_chunks(n_omega, workers, kChunk,
             [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t w = b; w < e; ++w) {
      const SumFamily f = space.at(w);
      KahanCSum run;
      double max2 = 0.0;
      families::for_each_exponent(f, ctx, [&](std::uint64_t k) {
        run.add(chi[k]);
        const cplx z = run.value();
        const double m2 = z.real() * z.real() + z.imag() * z.imag();
        if (m2 > max2) max2 = m2;
      });
      sups[w] = std::sqrt(max2 * norm2);
    }
  });
  return sups;
}

std::vector<double> simulated_sup_norms(std::uint32_t m, std::uint32_t grid_n,
                                        std::uint64_t samples,
                                        std::uint64_t seed, unsigned workers,
                                        series::Variant variant) {
  if (samples == 0) {
    throw std::invalid_argument("simulated_sup_norms: samples must be > 0");
  }
  std::vector<double> sups(samples);
  constexpr std::uint64_t kChunk = 64;
  for_chunks(samples, workers, kChunk,
             [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t r = b; r < e; ++r) {
      sato_tate::SatoTateSampler sampler(seed, r);
      const auto values = series::simulate_series_uniform(
          m, grid_n, variant, sampler, /*include_endpoint=*/true);
      double sup = 0.0;
      for (const cplx& z : values) sup = std::max(sup, std::abs(z));
      sups[r] = sup;
    }
  });
  return sups;
}

TailEstimate tail_from_samples(std::span<const double> sup_norms,
                               std::span<const double> thresholds) {
  validate_thresholds(thresholds);
  if (sup_norms.empty()) {
    throw std::invalid_argument("tail_from_samples: empty sample");
  }
  std::vector<std::uint64_t> counts(thresholds.size(), 0);
  for (const double s : sup_norms) {
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      if (s >= thresholds[i]) counts[i] += 1;
    }
  }
  return assemble_tail(thresholds, std::move(counts), sup_norms.size());
}

TailEstimate sup_norm_tail_empirical(const SumFamily& fam,
                                     const FieldContext& ctx,
                                     std::span<const double> thresholds,
                                     unsigned workers) {
  validate_thresholds(thresholds);
  const auto sups = empirical_sup_norms(fam, ctx, workers);
  return tail_from_samples(sups, thresholds);
}

TailEstimate sup_norm_tail_simulated(std::uint32_t m, std::uint32_t grid_n,
                                     std::uint64_t samples, std::uint64_t seed,
                                     std::span<const double> thresholds,
                                     unsigned workers,
                                     series::Variant variant) {
  validate_thresholds(thresholds);
  const auto sups =
      simulated_sup_norms(m, grid_n, samples, seed, workers, variant);
  return tail_from_samples(sups, thresholds);
}

namespace {

void validate_interval(const FieldContext& ctx, const IntervalSpec& interval,
                       Domain domain, bool needs_inverse) {
  const std::uint64_t p = ctx.p();
  const std::uint64_t lo_min = (domain == Domain::full && !needs_inverse) ? 0 : 1;
  if (interval.length == 0) return;
  if (interval.start < lo_min) {
    throw std::invalid_argument("interval may not contain 0");
  }
  if (interval.start + interval.length - 1 > p - 1) {
    throw std::invalid_argument("interval exceeds the field (no wrap allowed)");
  }
}

}  // namespace

double short_sum_moment(const SumFamily& fam, const FieldContext& ctx,
                        const IntervalSpec& interval, std::uint32_t alpha,
                        unsigned workers) {
  if (alpha == 0 || alpha % 2 != 0) {
    throw std::invalid_argument("short_sum_moment: alpha must be even and > 0");
  }
  const bool needs_inverse = fam.kind != Kind::birch;
  validate_interval(ctx, interval, fam.domain(), needs_inverse);
  if (interval.length == 0) return 0.0;

  const std::uint64_t p = ctx.p();
  const auto chi = ctx.chi();
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));
  const std::uint32_t half_alpha = alpha / 2;

  const ParameterSpace space{&fam, p};
  const std::uint64_t n_omega = space.size();
  constexpr std::uint64_t kChunk = 256;
  std::vector<KahanSum> partial(chunk_count(n_omega, kChunk));

  for_chunks(n_omega, workers, kChunk,
             [&](std::uint64_t c, std::uint64_t b, std::uint64_t e) {
    KahanSum acc;
    for (std::uint64_t w = b; w < e; ++w) {
      const SumFamily f = space.at(w);
      KahanCSum s;
      for (std::uint64_t x = interval.start;
           x < interval.start + interval.length; ++x) {
        s.add(chi[families::summand_exponent(f, ctx, x)]);
      }
      const cplx z = s.value() * norm;
      const double z2 = z.real() * z.real() + z.imag() * z.imag();
      acc.add(pow_small(z2, half_alpha));
    }
    partial[c] = acc;
  });

  KahanSum total;
  for (const auto& part : partial) total.merge(part);
  return total.value() / static_cast<double>(n_omega);
}

namespace {

std::uint64_t pair_energy(const FieldContext& ctx, const IntervalSpec& interval,
                          EnergyVariant variant, bool additive_only) {
  const std::uint64_t p = ctx.p();
  std::unordered_map<std::uint64_t, std::uint64_t> classes;
  classes.reserve(interval.length * interval.length);
  for (std::uint64_t x1 = interval.start;
       x1 < interval.start + interval.length; ++x1) {
    for (std::uint64_t x2 = interval.start;
         x2 < interval.start + interval.length; ++x2) {
      const std::uint64_t s = (x1 + x2) % p;
      const std::uint64_t t = (ctx.inv(x1) + ctx.inv(x2)) % p;
      std::uint64_t key;
      if (additive_only) {
        key = s;
      } else if (variant == EnergyVariant::inverse_pair) {
        key = s * p + t;
      } else {
        key = t;
      }
      classes[key] += 1;
    }
  }
  std::uint64_t total = 0;
  for (const auto& [key, cnt] : classes) total += cnt * cnt;
  return total;
}

}  // namespace

std::uint64_t fourth_moment_count(const FieldContext& ctx,
                                  const IntervalSpec& interval,
                                  EnergyVariant variant,
                                  CountAlgorithm algo) {
  if (interval.length == 0) {
    throw std::invalid_argument("fourth_moment_count: interval is empty");
  }
  validate_interval(ctx, interval, Domain::multiplicative, true);
  const std::uint64_t p = ctx.p();
  if (algo == CountAlgorithm::hashed) {
    return pair_energy(ctx, interval, variant, false);
  }
  // Exhaustive O(|I|^4) enumeration.
  const std::uint64_t lo = interval.start;
  const std::uint64_t hi = interval.start + interval.length;
  std::uint64_t count = 0;
  for (std::uint64_t x1 = lo; x1 < hi; ++x1)
    for (std::uint64_t x2 = lo; x2 < hi; ++x2)
      for (std::uint64_t x3 = lo; x3 < hi; ++x3)
        for (std::uint64_t x4 = lo; x4 < hi; ++x4) {
          const bool add_eq = (x1 + x2) % p == (x3 + x4) % p;
          const bool inv_eq =
              (ctx.inv(x1) + ctx.inv(x2)) % p == (ctx.inv(x3) + ctx.inv(x4)) % p;
          if (variant == EnergyVariant::inverse_pair ? (add_eq && inv_eq)
                                                     : inv_eq) {
            ++count;
          }
        }
  return count;
}

std::uint64_t additive_energy(const FieldContext& ctx,
                              const IntervalSpec& interval) {
  if (interval.length == 0) return 0;
  validate_interval(ctx, interval, Domain::multiplicative, true);
  return pair_energy(ctx, interval, EnergyVariant::inverse_pair, true);
}

double kloosterman2_fourth_moment_via_counts(const FieldContext& ctx,
                                             const IntervalSpec& interval) {
  if (interval.length == 0) return 0.0;
  const double p = static_cast<double>(ctx.p());
  const double pm1 = p - 1.0;
  const double n_both = static_cast<double>(fourth_moment_count(
      ctx, interval, EnergyVariant::inverse_pair, CountAlgorithm::hashed));
  const double n_inv = static_cast<double>(fourth_moment_count(
      ctx, interval, EnergyVariant::additive_pair, CountAlgorithm::hashed));
  const double n_add = static_cast<double>(additive_energy(ctx, interval));
  const double len = static_cast<double>(interval.length);
  const double n4 = len * len * len * len;
  // Character orthogonality over (alpha, a) weighs quadruples by whether
  // the additive (S) and inverse (T) constraints hold:
  //   S=0,T=0: 1;  exactly one: -1/(p-1);  neither: 1/(p-1)^2.
  const double value =
      n_both - (n_add - n_both) / pm1 - (n_inv - n_both) / pm1 +
      (n4 - n_add - n_inv + n_both) / (pm1 * pm1);
  return value / (p * p);
}

}  // namespace sumpaths::stats
