#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace charshift::fft {

using Complex = std::complex<double>;

/// Lengths up to this use the direct O(N^2) sum; longer ones go through
/// radix-2 (power-of-two N) or Bluestein's chirp-z convolution.
inline constexpr std::size_t kDirectLimit = 4096;

// All transforms are unnormalized: out[k] = sum_n in[n] exp(sign * 2 pi i n k / N).

void dft_direct(std::span<Complex> data, int sign);
void fft_radix2(std::span<Complex> data, int sign);
void fft_bluestein(std::span<Complex> data, int sign);

/// Dispatches on length.
void transform(std::span<Complex> data, int sign);

}  // namespace charshift::fft
