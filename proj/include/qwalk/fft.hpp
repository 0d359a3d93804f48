// Discrete Fourier transforms with the walk's sign convention.
// forward:  f~(r) = sum_n f(n) e^{+i 2 pi r n / N}
// inverse:  f(n)  = (1/N) sum_r f~(r) e^{-i 2 pi r n / N}
// Power-of-two sizes go through an iterative radix-2 transform with a
// bit-reversal permutation; any size can use the direct O(N^2) sum.
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "qwalk/parallel.hpp"

namespace qwalk::fft {

enum class Direction { forward, inverse };

inline constexpr bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

/// Smallest power of two strictly greater than t.
inline constexpr std::size_t power_of_two_above(std::size_t t) noexcept {
  return std::bit_ceil(t + 1);
}

namespace detail {

template <typename T>
constexpr T sign_of(Direction d) noexcept {
  return d == Direction::forward ? T(1) : T(-1);
}

/// e^{sign i 2 pi k / n} for k = 0..n-1, each evaluated directly.
template <typename T>
std::vector<std::complex<T>> twiddles(std::size_t n, Direction d) {
  std::vector<std::complex<T>> w(n);
  const T sgn = sign_of<T>(d);
  for (std::size_t k = 0; k < n; ++k) {
    const T angle = T(2) * std::numbers::pi_v<T> * static_cast<T>(k) / static_cast<T>(n);
    w[k] = {std::cos(angle), sgn * std::sin(angle)};
  }
  return w;
}

/// Plain product; skips the NaN/Inf recovery branch of operator* for complex.
template <typename T>
constexpr std::complex<T> mul(const std::complex<T>& a, const std::complex<T>& b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace detail

/**
 * In-place radix-2 transform.  The inverse includes the 1/N factor.
 * Throws std::invalid_argument unless data.size() is a power of two.
 */
template <typename T>
void radix2_inplace(std::span<std::complex<T>> data, Direction d) {
  const std::size_t n = data.size();
  if (n == 0 || !is_power_of_two(n)) {
    throw std::invalid_argument("radix-2 transform needs a power-of-two length");
  }
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  const auto w = detail::twiddles<T>(n, d);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<T> u = data[start + k];
        const std::complex<T> v = detail::mul(data[start + k + half], w[k * stride]);
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
  if (d == Direction::inverse) {
    const T scale = T(1) / static_cast<T>(n);
    for (auto& x : data) x *= scale;
  }
}

/**
 * Direct sum for any N, evaluating only outputs [0, count).  Exponents are
 * reduced modulo N so the twiddle table is exact per entry.
 */
template <typename T>
std::vector<std::complex<T>> direct(std::span<const std::complex<T>> in, Direction d,
                                    std::size_t count) {
  const std::size_t n = in.size();
  if (count > n) throw std::invalid_argument("requested more outputs than the transform size");
  std::vector<std::complex<T>> out(count);
  if (n == 0) return out;
  const auto w = detail::twiddles<T>(n, d);
  const T scale = d == Direction::inverse ? T(1) / static_cast<T>(n) : T(1);
  parallel::for_each_index(0, count, [&](std::size_t k) {
    std::complex<T> acc{};
    std::size_t idx = 0;  // (r * k) mod n, advanced incrementally
    for (std::size_t r = 0; r < n; ++r) {
      acc += detail::mul(in[r], w[idx]);
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = acc * scale;
  }, 16);
  return out;
}

template <typename T>
std::vector<std::complex<T>> direct(std::span<const std::complex<T>> in, Direction d) {
  return direct(in, d, in.size());
}

}  // namespace qwalk::fft
