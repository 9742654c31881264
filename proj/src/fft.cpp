#include "sumpaths/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace sumpaths::fft {

void transform_pow2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  if (n == 0) return;
  if ((n & (n - 1)) != 0) {
    throw std::invalid_argument("transform_pow2: size must be a power of two");
  }
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * two_pi / static_cast<double>(len);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

std::vector<cplx> circular_convolve(std::span<const cplx> a,
                                    std::span<const cplx> b) {
  const std::size_t L = a.size();
  if (b.size() != L) {
    throw std::invalid_argument("circular_convolve: length mismatch");
  }
  if (L == 0) return {};
  std::size_t M = 1;
  while (M < 2 * L - 1) M <<= 1;
  std::vector<cplx> fa(M), fb(M);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  transform_pow2(fa, -1);
  transform_pow2(fb, -1);
  for (std::size_t i = 0; i < M; ++i) fa[i] *= fb[i];
  transform_pow2(fa, +1);
  const double inv_m = 1.0 / static_cast<double>(M);
  // Linear convolution has length 2L-1; wrap the overhang.
  std::vector<cplx> out(L);
  for (std::size_t r = 0; r < L; ++r) out[r] = fa[r] * inv_m;
  for (std::size_t r = L; r < 2 * L - 1; ++r) out[r - L] += fa[r] * inv_m;
  return out;
}

std::vector<cplx> prime_dft_direct(std::span<const cplx> f,
                                   const arith::FieldContext& ctx) {
  const std::uint64_t p = ctx.p();
  if (f.size() != p) {
    throw std::invalid_argument("prime_dft: input length must equal p");
  }
  const auto chi = ctx.chi();
  std::vector<cplx> out(p);
  for (std::uint64_t b = 0; b < p; ++b) {
    KahanCSum acc;
    std::uint64_t k = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
      acc.add(f[x] * chi[k]);
      k += b;
      if (k >= p) k -= p;
    }
    out[b] = acc.value();
  }
  return out;
}

std::vector<cplx> prime_dft(std::span<const cplx> f,
                            const arith::FieldContext& ctx) {
  const std::uint64_t p = ctx.p();
  if (f.size() != p) {
    throw std::invalid_argument("prime_dft: input length must equal p");
  }
  if (p < 64) return prime_dft_direct(f, ctx);

  const auto chi = ctx.chi();
  const std::uint64_t g = arith::primitive_root(p);
  const std::uint64_t L = p - 1;

  // g_pow[k] = g^k mod p for k in 0..L-1.
  std::vector<std::uint32_t> g_pow(L);
  std::uint64_t acc = 1;
  for (std::uint64_t k = 0; k < L; ++k) {
    g_pow[k] = static_cast<std::uint32_t>(acc);
    acc = (acc * g) % p;
  }

  // F[g^r] - f[0] = sum_m f[g^m] chi[g^{r+m}] = (rev(a) * c)[r], a cyclic
  // convolution in the exponent index.
  std::vector<cplx> a(L), c(L);
  for (std::uint64_t k = 0; k < L; ++k) {
    c[k] = chi[g_pow[k]];
    a[k == 0 ? 0 : L - k] = f[g_pow[k]];
  }
  std::vector<cplx> conv = circular_convolve(a, c);

  KahanCSum total;
  for (std::uint64_t x = 0; x < p; ++x) total.add(f[x]);

  std::vector<cplx> out(p);
  out[0] = total.value();
  for (std::uint64_t r = 0; r < L; ++r) out[g_pow[r]] = f[0] + conv[r];
  return out;
}

}  // namespace sumpaths::fft
