#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sumpaths/arith.hpp"
#include "sumpaths/numeric.hpp"

namespace sumpaths::families {

using arith::FieldContext;

enum class Kind : std::uint8_t {
  kloosterman,        // psi_p(a x + xbar),        x in F_p^*
  kloosterman2,       // psi_p(alpha(a x + xbar)), x in F_p^*
  birch,              // psi_p(a x + x^3),         x in F_p
  kloosterman_shift,  // psi_p(x + a xbar),        x in F_p^*
};

enum class Ordering : std::uint8_t {
  natural,    // x = 1,2,...   (resp. 0,1,... for full-domain families)
  geometric,  // x = g^0, g^1, ..., g^{p-2} for a primitive root g
};

enum class Domain : std::uint8_t { multiplicative, full };

/// One summand family xi_p(x, omega) with its parameters. Parameters are
/// stored unreduced and validated against a FieldContext at use time.
struct SumFamily {
  Kind kind = Kind::kloosterman;
  Ordering ordering = Ordering::natural;
  std::uint64_t a = 1;
  std::uint64_t alpha = 1;  // kloosterman2 only

  static SumFamily kloosterman(std::uint64_t a) {
    return {Kind::kloosterman, Ordering::natural, a, 1};
  }
  static SumFamily kloosterman2(std::uint64_t alpha, std::uint64_t a) {
    return {Kind::kloosterman2, Ordering::natural, a, alpha};
  }
  static SumFamily birch(std::uint64_t a) {
    return {Kind::birch, Ordering::natural, a, 1};
  }
  static SumFamily kloosterman_shift(std::uint64_t a) {
    return {Kind::kloosterman_shift, Ordering::natural, a, 1};
  }
  SumFamily geometric() const {
    SumFamily f = *this;
    f.ordering = Ordering::geometric;
    return f;
  }

  Domain domain() const {
    return kind == Kind::birch ? Domain::full : Domain::multiplicative;
  }
  /// Number of path segments: p-1 over F_p^*, p over F_p.
  std::uint64_t segments(const FieldContext& ctx) const {
    return domain() == Domain::full ? ctx.p() : ctx.p() - 1;
  }
  std::string name() const;
};

/// Polygonal partial-sum path: vertices z_0 = 0, ..., z_N with the 1/sqrt(p)
/// normalization applied, parameterized uniformly over [0,1].
struct PathSample {
  std::vector<cplx> vertices;
};

/// Calls fn(k) with the character-table index of each summand, in the
/// family's summation order. The exponent arithmetic is exact integer
/// arithmetic mod p.
template <class Fn>
void for_each_exponent(const SumFamily& fam, const FieldContext& ctx, Fn&& fn);

/// Same, but only the first `terms` summands; sweeps that need a few
/// partial sums per parameter stop early instead of walking all of F_p.
template <class Fn>
void for_each_exponent_prefix(const SumFamily& fam, const FieldContext& ctx,
                              std::uint64_t terms, Fn&& fn);

/// (1/sqrt p) * sum over the family's domain of xi_p(x, omega).
cplx complete_sum(const SumFamily& fam, const FieldContext& ctx);

/// All partial sums of the family, in order; the last vertex equals
/// complete_sum (bit-for-bit: same accumulation).
PathSample partial_sum_vector(const SumFamily& fam, const FieldContext& ctx);

/// Piecewise-linear evaluation of the path at t in [0,1].
cplx path_eval(const PathSample& path, double t);

/// max_j |z_j|; for a polygonal path this is the sup over all of [0,1].
double sup_norm(const PathSample& path);

/// Discrete Fourier coefficient of the window 1 <= x <= floor((p-1)t):
/// alpha_p(h;t) = (1/sqrt p) sum psi_p(h x), by the closed geometric form.
cplx window_fourier_coeff(const FieldContext& ctx, std::int64_t h, double t);

/// Same for the full-domain window 0 <= x <= min(floor(p t), p-1).
cplx window_fourier_coeff(const FieldContext& ctx, std::int64_t h, double t,
                          Domain domain);

/// Complete sums at every shift of the linear coefficient:
/// table[b] = (1/sqrt p) sum_x psi_p(b x + xbar)   (kloosterman base)
/// table[b] = (1/sqrt p) sum_x psi_p(b x + x^3)    (birch base)
/// Computed with one prime-length transform.
std::vector<cplx> complete_sum_table(Kind base, const FieldContext& ctx);

/// Direct O(p^2) version of complete_sum_table (reference path).
std::vector<cplx> complete_sum_table_direct(Kind base,
                                            const FieldContext& ctx);

/// table[h mod p] = the family's complete sum with its linear coefficient
/// shifted by -h, i.e. the weight multiplying alpha_p(h;t) in the
/// completion identity.
std::vector<cplx> shifted_sum_table(const SumFamily& fam,
                                    const FieldContext& ctx);

/// Completion-method interpolant
///   (1/sqrt p) sum_{|h|<p/2} alpha_p(h;t) * shifted_sum(h),
/// equal to the truncated partial sum at floor((p-1)t) (resp. floor(pt)).
/// Natural ordering only.
cplx completed_interpolant(const SumFamily& fam, const FieldContext& ctx,
                           double t, std::span<const cplx> shifted);
cplx completed_interpolant(const SumFamily& fam, const FieldContext& ctx,
                           double t);

// --- implementation of the exponent walk (hot path) ---

namespace detail {

void validate(const SumFamily& fam, const FieldContext& ctx);

}  // namespace detail

template <class Fn>
void for_each_exponent_prefix(const SumFamily& fam, const FieldContext& ctx,
                              std::uint64_t terms, Fn&& fn) {
  detail::validate(fam, ctx);
  const std::uint64_t p = ctx.p();
  const auto inv = ctx.inv_table();
  const std::uint64_t a = fam.a % p;
  const std::uint64_t total = fam.segments(ctx);
  const std::uint64_t count = terms < total ? terms : total;
  if (count == 0) return;

  auto reduced_add = [p](std::uint64_t u, std::uint64_t v) {
    std::uint64_t s = u + v;
    return s >= p ? s - p : s;
  };

  if (fam.ordering == Ordering::geometric) {
    const std::uint64_t g = arith::primitive_root(p);
    std::uint64_t left = count;
    if (fam.domain() == Domain::full) {
      fn(0);  // x = 0
      if (--left == 0) return;
    }
    std::uint64_t x = 1;
    for (std::uint64_t j = 0; j < left; ++j) {
      std::uint64_t e = 0;
      switch (fam.kind) {
        case Kind::kloosterman:
          e = reduced_add(a * x % p, inv[x]);
          break;
        case Kind::kloosterman2:
          e = fam.alpha % p * reduced_add(a * x % p, inv[x]) % p;
          break;
        case Kind::birch:
          e = reduced_add(a * x % p, x * x % p * x % p);
          break;
        case Kind::kloosterman_shift:
          e = reduced_add(x, a * inv[x] % p);
          break;
      }
      fn(e);
      x = x * g % p;
    }
    return;
  }

  switch (fam.kind) {
    case Kind::kloosterman: {
      std::uint64_t ax = 0;
      for (std::uint64_t x = 1; x <= count; ++x) {
        ax = reduced_add(ax, a);
        fn(reduced_add(ax, inv[x]));
      }
      break;
    }
    case Kind::kloosterman2: {
      const std::uint64_t al = fam.alpha % p;
      std::uint64_t ax = 0;
      for (std::uint64_t x = 1; x <= count; ++x) {
        ax = reduced_add(ax, a);
        fn(al * reduced_add(ax, inv[x]) % p);
      }
      break;
    }
    case Kind::birch: {
      // x^3 stepped by finite differences; all registers kept reduced.
      const std::uint64_t six = 6 % p;
      std::uint64_t cube = 0, d1 = 1 % p, d2 = six, ax = 0;
      fn(0);  // x = 0
      for (std::uint64_t x = 1; x < count; ++x) {
        cube = reduced_add(cube, d1);  // now x^3
        d1 = reduced_add(d1, d2);      // next first difference
        d2 = reduced_add(d2, six);
        ax = reduced_add(ax, a);
        fn(reduced_add(ax, cube));
      }
      break;
    }
    case Kind::kloosterman_shift: {
      const std::uint64_t aa = a;
      for (std::uint64_t x = 1; x <= count; ++x) {
        fn(reduced_add(x, aa * inv[x] % p));
      }
      break;
    }
  }
}

template <class Fn>
void for_each_exponent(const SumFamily& fam, const FieldContext& ctx,
                       Fn&& fn) {
  for_each_exponent_prefix(fam, ctx, fam.segments(ctx),
                           std::forward<Fn>(fn));
}

/// Character-table index of the summand at a given x in the family's
/// domain (independent of ordering).
inline std::uint64_t summand_exponent(const SumFamily& fam,
                                      const FieldContext& ctx,
                                      std::uint64_t x) {
  const std::uint64_t p = ctx.p();
  const std::uint64_t a = fam.a % p;
  x %= p;
  switch (fam.kind) {
    case Kind::kloosterman:
      return (a * x % p + ctx.inv(x)) % p;
    case Kind::kloosterman2:
      return fam.alpha % p * ((a * x % p + ctx.inv(x)) % p) % p;
    case Kind::birch:
      return (a * x % p + x * x % p * x % p) % p;
    case Kind::kloosterman_shift:
      return (x + a * ctx.inv(x) % p) % p;
  }
  return 0;
}

}  // namespace sumpaths::families
