#include "charshift/fft.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "charshift/error.hpp"

namespace charshift::fft {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1U;
  return m;
}

// exp(sign * 2 pi i k / n) with k already reduced mod n.
Complex twiddle(std::size_t k, std::size_t n, int sign) {
  const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

void dft_direct(std::span<Complex> data, int sign) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  std::vector<Complex> roots(n);
  for (std::size_t k = 0; k < n; ++k) roots[k] = twiddle(k, n, sign);
  std::vector<Complex> out(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    std::size_t idx = 0;  // (j * k) mod n, advanced incrementally
    for (std::size_t j = 0; j < n; ++j) {
      acc += data[j] * roots[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = acc;
  }
  std::copy(out.begin(), out.end(), data.begin());
}

void fft_radix2(std::span<Complex> data, int sign) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) {
    throw Error(ErrorCode::DimensionMismatch, "radix-2 FFT needs a power-of-two length");
  }
  if (n <= 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1U;
    for (; j & bit; bit >>= 1U) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  // Twiddles for the largest stage; smaller stages stride through them.
  std::vector<Complex> roots(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) roots[k] = twiddle(k, n, sign);

  for (std::size_t len = 2; len <= n; len <<= 1U) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = data[start + k];
        const Complex v = data[start + k + half] * roots[k * step];
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

void fft_bluestein(std::span<Complex> data, int sign) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  const std::size_t m = next_power_of_two(2 * n - 1);

  // chirp[k] = exp(sign * pi i k^2 / n); k^2 is reduced mod 2n to keep the
  // angle small.
  std::vector<Complex> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = static_cast<std::size_t>((static_cast<unsigned __int128>(k) * k) % (2 * n));
    chirp[k] = twiddle(k2, 2 * n, sign);
  }

  std::vector<Complex> a(m, Complex{0.0, 0.0});
  std::vector<Complex> b(m, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) a[k] = data[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    b[k] = std::conj(chirp[k]);
    b[m - k] = std::conj(chirp[k]);
  }

  fft_radix2(a, +1);
  fft_radix2(b, +1);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  fft_radix2(a, -1);

  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) data[k] = a[k] * scale * chirp[k];
}

void transform(std::span<Complex> data, int sign) {
  const std::size_t n = data.size();
  if (n <= kDirectLimit) {
    dft_direct(data, sign);
  } else if (is_power_of_two(n)) {
    fft_radix2(data, sign);
  } else {
    fft_bluestein(data, sign);
  }
}

}  // namespace charshift::fft
