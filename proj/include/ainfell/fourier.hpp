#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "ainfell/lattice.hpp"
#include "ainfell/theta.hpp"

namespace ainfell {

// ||theta_{a/k}(kx+u, k tau)||^2 = exp(2 pi t u2^2 / k) / sqrt(2tk),
// independent of the characteristic index.
inline double h0_basis_norm_sq(long long k, double u2, const Modulus& tau) {
    if (k <= 0) throw std::invalid_argument("h0_basis_norm_sq: k must be positive");
    const double t = tau.t;
    return std::exp(2.0 * std::numbers::pi * t * u2 * u2 / double(k)) / std::sqrt(2.0 * t * double(k));
}

// Fourier coefficients of theta_{b/k}(kx+u, k tau) conj(theta_{a/k}(kx+v, k tau))
//   * exp(-2 pi t (k x2^2 + 2 x2 v2))
// as a section of L(0, u - conj(v)line):  c_{m,n} = 0 unless m = b - a (mod k),
// otherwise, with gamma = m tau - n,
//   c_{m,n} = exp(-(pi/2tk)(|gamma|^2 + 2 conj(gamma) u - 2 gamma conj(v)
//                            + (u - conj(v))^2) + (pi i n / k)(m + 2a)) / sqrt(2tk).
inline std::complex<double> fourier_c(long long m, long long n, long long k, long long a,
                                      long long b, std::complex<double> u,
                                      std::complex<double> v, const Modulus& tau) {
    if (k <= 0) throw std::invalid_argument("fourier_c: k must be positive");
    const long long diff = ((b - a) % k + k) % k;
    if (((m % k) + k) % k != diff) return {0.0, 0.0};
    const double t = tau.t;
    const double pi = std::numbers::pi;
    const std::complex<double> gamma = double(m) * tau.tau - double(n);
    const std::complex<double> vbar = std::conj(v);
    const std::complex<double> quad =
        std::norm(gamma) + 2.0 * std::conj(gamma) * u - 2.0 * gamma * vbar + (u - vbar) * (u - vbar);
    const std::complex<double> expo =
        -(pi / (2.0 * t * double(k))) * quad +
        std::complex<double>(0.0, pi * double(n) / double(k)) * double(m + 2 * a);
    return std::exp(expo) / std::sqrt(2.0 * t * double(k));
}

} // namespace ainfell
