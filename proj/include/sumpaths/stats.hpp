#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sumpaths/arith.hpp"
#include "sumpaths/families.hpp"
#include "sumpaths/numeric.hpp"
#include "sumpaths/sato_tate.hpp"
#include "sumpaths/series.hpp"

namespace sumpaths::stats {

using arith::FieldContext;
using families::SumFamily;

/// One factor K_p(t)^n conj(K_p(t))^m of a mixed moment.
struct PointMoment {
  double t = 0.0;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
};

struct MomentSpec {
  std::vector<PointMoment> points;

  void validate() const;           // t strictly increasing, in [0,1]
  std::uint32_t degree() const;    // sum of n_i + m_i
};

/// (1/|Omega_p|) sum over omega of prod_i K_p(t_i,omega)^{n_i}
/// conj(...)^{m_i}, streaming over omega with O(p) memory. Deterministic
/// for any worker count.
cplx empirical_mixed_moment(const SumFamily& fam, const FieldContext& ctx,
                            const MomentSpec& spec, unsigned workers = 1);

struct TheoreticalMoment {
  cplx value;
  double error;  // certified truncation bound (expansion) or standard error
};

/// Moment of the limit process by expansion over shift tuples, truncated
/// at |h| < H with a certified tail bound. Degree <= 4 only.
struct ExpansionMethod {
  std::uint32_t H = 1000;
};

/// Monte-Carlo estimate from truncated-series realizations.
struct MonteCarloMethod {
  std::uint64_t samples = 10000;
  std::uint32_t m = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

TheoreticalMoment theoretical_mixed_moment(const MomentSpec& spec,
                                           const ExpansionMethod& method);
TheoreticalMoment theoretical_mixed_moment(const MomentSpec& spec,
                                           const MonteCarloMethod& method);

/// S(shifts; p) = (1/(p-1)) sum_{a in F_p^*} prod_h W_p(a - h)^{mu(h)}
/// where W_p is the complete Kloosterman (or Birch) sum. The main-term
/// prediction is joint_moment of the same profile.
cplx sums_of_products(families::Kind base, const FieldContext& ctx,
                      const sato_tate::MultiplicityProfile& profile);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_distance(std::span<const double> sample_a,
                   std::span<const double> sample_b);

/// K_p(t, omega) for every omega in the family's parameter space, in
/// parameter order; the empirical marginal of the path process at t.
std::vector<cplx> empirical_point_samples(const SumFamily& fam,
                                          const FieldContext& ctx, double t,
                                          unsigned workers = 1);

/// Independent draws of the truncated series K_m(t); realization r uses
/// the (seed, r) stream.
std::vector<cplx> simulated_point_samples(double t, std::uint32_t m,
                                          std::uint64_t samples,
                                          std::uint64_t seed,
                                          unsigned workers = 1,
                                          series::Variant variant =
                                              series::Variant::standard);

/// Consecutive integer representatives [start, start+length), no wrap.
struct IntervalSpec {
  std::uint64_t start = 1;
  std::uint64_t length = 0;
};

struct TailEstimate {
  std::vector<double> thresholds;
  std::vector<double> probabilities;      // P(sup >= A), non-increasing
  std::vector<std::uint64_t> exceedances;  // sample counts per threshold
  std::uint64_t samples = 0;
};

/// Path sup-norm for every omega, in parameter order.
std::vector<double> empirical_sup_norms(const SumFamily& fam,
                                        const FieldContext& ctx,
                                        unsigned workers = 1);

/// Sup-norms of simulated truncated-series paths on the uniform n-point
/// grid plus the t=1 endpoint; realization r uses the (seed, r) stream.
std::vector<double> simulated_sup_norms(std::uint32_t m, std::uint32_t grid_n,
                                        std::uint64_t samples,
                                        std::uint64_t seed,
                                        unsigned workers = 1,
                                        series::Variant variant =
                                            series::Variant::standard);

/// Exceedance fractions of a sup-norm sample at each threshold.
TailEstimate tail_from_samples(std::span<const double> sup_norms,
                               std::span<const double> thresholds);

/// Tail of sup-norms over the family's parameter space.
TailEstimate sup_norm_tail_empirical(const SumFamily& fam,
                                     const FieldContext& ctx,
                                     std::span<const double> thresholds,
                                     unsigned workers = 1);

/// Tail of sup-norms of simulated truncated-series paths.
TailEstimate sup_norm_tail_simulated(std::uint32_t m, std::uint32_t grid_n,
                                     std::uint64_t samples, std::uint64_t seed,
                                     std::span<const double> thresholds,
                                     unsigned workers = 1,
                                     series::Variant variant =
                                         series::Variant::standard);

/// (1/|Omega_p|) sum_omega |(1/sqrt p) sum_{x in I} xi_p(x,omega)|^alpha,
/// alpha even.
double short_sum_moment(const SumFamily& fam, const FieldContext& ctx,
                        const IntervalSpec& interval, std::uint32_t alpha,
                        unsigned workers = 1);

enum class EnergyVariant : std::uint8_t {
  inverse_pair,   // x1+x2 = x3+x4 and 1/x1+1/x2 = 1/x3+1/x4 (mod p)
  additive_pair,  // 1/x1+1/x2 = 1/x3+1/x4 only (mod p)
};

enum class CountAlgorithm : std::uint8_t { hashed, exhaustive };

/// Number of ordered quadruples of I^4 satisfying the variant's
/// constraints. The hashed algorithm groups pairs by their constraint
/// key in O(|I|^2); the exhaustive one enumerates I^4.
std::uint64_t fourth_moment_count(const FieldContext& ctx,
                                  const IntervalSpec& interval,
                                  EnergyVariant variant,
                                  CountAlgorithm algo = CountAlgorithm::hashed);

/// Additive energy #{x1+x2 = x3+x4 mod p} of the interval; a helper for
/// the exact fourth-moment identity below.
std::uint64_t additive_energy(const FieldContext& ctx,
                              const IntervalSpec& interval);

/// Exact orthogonality identity for the two-parameter family's fourth
/// short-sum moment, assembled from the three quadruple counts.
double kloosterman2_fourth_moment_via_counts(const FieldContext& ctx,
                                             const IntervalSpec& interval);

}  // namespace sumpaths::stats
