#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ainfell/fft.hpp"
#include "ainfell/fourier.hpp"
#include "ainfell/lattice.hpp"
#include "ainfell/theta.hpp"

namespace ainfell {

struct grid_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A section of L(k,u)-valued (p,q)-forms, trivialized over the fundamental
// domain and sampled on the uniform N x N grid in lattice coordinates
// (x1, x2) in [0,1)^2; coefficient of dx^p dxbar^q, stored row-major with
// index i1 + N*i2.  Products multiply pointwise because the trivializations
// are multiplicative.
struct GridSection {
    int N = 0;
    long long k = 0;
    LatticeCoord u;
    Modulus tau{std::complex<double>(0, 1)};
    int p = 0, q = 0;
    std::vector<std::complex<double>> samples;

    std::complex<double>& at(int i1, int i2) { return samples[std::size_t(i1) + std::size_t(N) * std::size_t(i2)]; }
    const std::complex<double>& at(int i1, int i2) const {
        return samples[std::size_t(i1) + std::size_t(N) * std::size_t(i2)];
    }
};

inline GridSection make_section(int N, long long k, const LatticeCoord& u, const Modulus& tau,
                                int p, int q) {
    if (!is_power_of_two(std::size_t(N))) throw grid_error("grid: N must be a power of two");
    GridSection s;
    s.N = N;
    s.k = k;
    s.u = u;
    s.tau = tau;
    s.p = p;
    s.q = q;
    s.samples.assign(std::size_t(N) * std::size_t(N), {0.0, 0.0});
    return s;
}

// theta_{a/k}(kx + u, k tau), a holomorphic section of L(k,u) for k > 0.
inline GridSection sample_h0_theta(long long k, long long a, const LatticeCoord& u,
                                   const Modulus& tau, int N, const TruncationPolicy& pol = {}) {
    if (k <= 0) throw grid_error("sample_h0_theta: k must be positive");
    GridSection s = make_section(N, k, u, tau, 0, 0);
    const Modulus ktau(double(k) * tau.tau);
    const Characteristic r(a, k);
    for (int i2 = 0; i2 < N; ++i2) {
        const double x2 = double(i2) / N;
        for (int i1 = 0; i1 < N; ++i1) {
            const double x1 = double(i1) / N;
            const std::complex<double> x = std::complex<double>(x1, 0.0) + tau.tau * x2;
            s.at(i1, i2) = theta_char(r, double(k) * x + u.value, ktau, pol);
        }
    }
    return s;
}

// Harmonic (0,1)-form with values in L(-k,-u):
//   conj(theta_{a/k}(kx+u, k tau)) exp(-2 pi t (k x2^2 + 2 x2 u2)) dxbar,
// optionally carrying the normalization pi sqrt(2k)/sqrt(t).
inline GridSection sample_h1_form(long long k, long long a, const LatticeCoord& u,
                                  const Modulus& tau, int N, bool normalized,
                                  const TruncationPolicy& pol = {}) {
    if (k <= 0) throw grid_error("sample_h1_form: k must be positive");
    GridSection s = make_section(N, -k, -u, tau, 0, 1);
    const Modulus ktau(double(k) * tau.tau);
    const Characteristic r(a, k);
    const double t = tau.t;
    const double pi = std::numbers::pi;
    const double norm = normalized ? pi * std::sqrt(2.0 * double(k)) / std::sqrt(t) : 1.0;
    for (int i2 = 0; i2 < N; ++i2) {
        const double x2 = double(i2) / N;
        const double weight = std::exp(-2.0 * pi * t * (double(k) * x2 * x2 + 2.0 * x2 * u.c2));
        for (int i1 = 0; i1 < N; ++i1) {
            const double x1 = double(i1) / N;
            const std::complex<double> x = std::complex<double>(x1, 0.0) + tau.tau * x2;
            s.at(i1, i2) = norm * std::conj(theta_char(r, double(k) * x + u.value, ktau, pol)) * weight;
        }
    }
    return s;
}

// phi_{u,m,n}(x) = exp(2 pi i (m x1 + (n - u) x2)), a section of L(0,u).
inline GridSection sample_mode(const LatticeCoord& u, long long m, long long n, const Modulus& tau,
                               int N) {
    GridSection s = make_section(N, 0, u, tau, 0, 0);
    const std::complex<double> tpi(0.0, 2.0 * std::numbers::pi);
    for (int i2 = 0; i2 < N; ++i2) {
        const double x2 = double(i2) / N;
        for (int i1 = 0; i1 < N; ++i1) {
            const double x1 = double(i1) / N;
            s.at(i1, i2) = std::exp(tpi * (double(m) * x1 + (double(n) - u.value) * x2));
        }
    }
    return s;
}

// tensor with the covariantly constant dx factor (p -> p+1)
inline GridSection with_dx(GridSection s) {
    if (s.p != 0) throw grid_error("with_dx: already carries dx");
    s.p = 1;
    return s;
}

// Pointwise wedge product; reordering dxbar past dx contributes (-1)^(q1 p2).
inline GridSection wedge(const GridSection& f, const GridSection& g) {
    if (f.N != g.N) throw grid_error("wedge: grid size mismatch");
    if (f.p + g.p > 1 || f.q + g.q > 1) throw grid_error("wedge: form degree overflow");
    GridSection out = make_section(f.N, f.k + g.k, f.u + g.u, f.tau, f.p + g.p, f.q + g.q);
    const double sg = ((f.q * g.p) % 2) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] = sg * f.samples[i] * g.samples[i];
    return out;
}

// Hermitian inner product of two sections of the same slot and type:
//   <f, g> = int f conj(g) exp(-2 pi t (k x2^2 + 2 x2 u2)) dx1 dx2.
inline std::complex<double> quad_inner_product(const GridSection& f, const GridSection& g) {
    if (f.N != g.N || f.k != g.k || f.p != g.p || f.q != g.q ||
        std::abs(f.u.value - g.u.value) > 1e-9)
        throw grid_error("quad_inner_product: bundle slot or form type mismatch");
    const double t = f.tau.t;
    const double pi = std::numbers::pi;
    const int N = f.N;
    std::complex<double> acc(0, 0);
    for (int i2 = 0; i2 < N; ++i2) {
        const double x2 = double(i2) / N;
        const double weight = std::exp(-2.0 * pi * t * (double(f.k) * x2 * x2 + 2.0 * x2 * f.u.c2));
        std::complex<double> rowsum(0, 0);
        for (int i1 = 0; i1 < N; ++i1) rowsum += f.at(i1, i2) * std::conj(g.at(i1, i2));
        acc += weight * rowsum;
    }
    return acc / double(std::size_t(N) * std::size_t(N));
}

// Integral of a top (1,1)-form over the curve, dx ^ dxbar = -2it dx1 dx2.
// The slot must be trivial: the trivialized coefficient is then honestly
// doubly periodic.
inline std::complex<double> integrate_top(const GridSection& f) {
    if (f.p != 1 || f.q != 1) throw grid_error("integrate_top: not a (1,1)-form");
    if (f.k != 0 || std::abs(f.u.value) > 1e-9)
        throw grid_error("integrate_top: slot is not trivial");
    std::complex<double> acc(0, 0);
    for (const auto& v : f.samples) acc += v;
    acc /= double(f.samples.size());
    return std::complex<double>(0.0, -2.0 * f.tau.t) * acc;
}

} // namespace ainfell
