#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace echolab {

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// In-place iterative radix-2 DIT FFT. x.size() must be a power of two.
/// Forward transform: X[k] = sum_n x[n] exp(-2*pi*i*n*k/N).
inline void fft_inplace(std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if (n < 2) return;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = x[i + k];
                std::complex<double> v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

/// Forward FFT of a real signal, zero-padded to the next power of two times
/// `pad_factor`. Returns the full complex spectrum (length = padded size).
inline std::vector<std::complex<double>> fft_real(const std::vector<double>& x,
                                                  std::size_t pad_factor = 1) {
    std::size_t n = next_pow2(x.size() * (pad_factor ? pad_factor : 1));
    std::vector<std::complex<double>> buf(n, {0.0, 0.0});
    for (std::size_t i = 0; i < x.size(); ++i) buf[i] = {x[i], 0.0};
    fft_inplace(buf);
    return buf;
}

inline std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n);
    if (n == 1) {
        w[0] = 1.0;
        return w;
    }
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                    static_cast<double>(n - 1));
    return w;
}

}  // namespace echolab
