#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace ainfell {

// Iterative radix-2 complex FFT. The grids in this project are small
// (N <= 1024) and fixed per run, so a plain Cooley-Tukey kernel keeps the
// evaluation deterministic and dependency-free.

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft: length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / double(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> x = a[i + j];
                std::complex<double> y = a[i + j + len / 2] * w;
                a[i + j] = x + y;
                a[i + j + len / 2] = x - y;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double s = 1.0 / double(n);
        for (auto& z : a) z *= s;
    }
}

// 2D transform of row-major N x N data: rows first, then columns.
inline void fft2_inplace(std::vector<std::complex<double>>& a, std::size_t n, bool inverse) {
    if (a.size() != n * n) throw std::invalid_argument("fft2: size mismatch");
    std::vector<std::complex<double>> buf(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) buf[c] = a[r * n + c];
        fft_inplace(buf, inverse);
        for (std::size_t c = 0; c < n; ++c) a[r * n + c] = buf[c];
    }
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) buf[r] = a[r * n + c];
        fft_inplace(buf, inverse);
        for (std::size_t r = 0; r < n; ++r) a[r * n + c] = buf[r];
    }
}

} // namespace ainfell
