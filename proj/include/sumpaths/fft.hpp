#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sumpaths/arith.hpp"
#include "sumpaths/numeric.hpp"

namespace sumpaths::fft {

/// In-place iterative radix-2 transform, unnormalized.
/// sign = -1: X_k = sum_j a_j e^{-2 pi i jk/n}   (forward)
/// sign = +1: X_k = sum_j a_j e^{+2 pi i jk/n}
/// n must be a power of two.
void transform_pow2(std::vector<cplx>& a, int sign);

/// Circular convolution (a * b)[r] = sum_m a[m] b[(r-m) mod L] of two
/// equal-length sequences, computed through a zero-padded power-of-two
/// transform.
std::vector<cplx> circular_convolve(std::span<const cplx> a,
                                    std::span<const cplx> b);

/// Prime-length transform F[b] = sum_{x=0}^{p-1} f[x] psi_p(b x), via
/// Rader's reindexing by a primitive root (one cyclic convolution of
/// length p-1). O(p log p); this is what makes all-shift sweeps of
/// complete sums cheap.
std::vector<cplx> prime_dft(std::span<const cplx> f,
                            const arith::FieldContext& ctx);

/// Same transform by direct O(p^2) summation; reference path for tests
/// and for very small p.
std::vector<cplx> prime_dft_direct(std::span<const cplx> f,
                                   const arith::FieldContext& ctx);

}  // namespace sumpaths::fft
