#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ainfell {

struct invalid_modulus : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct truncation_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Modulus of the curve C/(Z + Z tau); requires Im(tau) > 0.
struct Modulus {
    std::complex<double> tau;
    double t; // Im(tau)

    explicit Modulus(std::complex<double> tau_) : tau(tau_), t(tau_.imag()) {
        if (!(t > 0.0)) throw invalid_modulus("modulus requires Im(tau) > 0");
    }
};

// Rational characteristic r = num/den, stored reduced and normalized to [0,1).
struct Characteristic {
    long long num = 0;
    long long den = 1;

    Characteristic() = default;
    Characteristic(long long n, long long d) {
        if (d <= 0) throw std::invalid_argument("characteristic denominator must be positive");
        n %= d;
        if (n < 0) n += d;
        const long long g = std::gcd(n, d);
        num = (g == 0) ? 0 : n / g;
        den = (g == 0) ? 1 : d / g;
        if (num == 0) den = 1;
    }
    double value() const { return double(num) / double(den); }
};

struct TruncationPolicy {
    double eps = 1e-12;   // absolute tail target
    int max_terms = 200000;
};

namespace detail {

// Certified half-width for a Gaussian-decaying series.  Terms at offset j
// from the peak index satisfy |term| <= S * exp(-pi t (j - c)^2) with
// c <= 1/2 the rounding offset of the peak and log S = log_scale.  The tail
// past half-width w is majorized by the geometric bound
//   2 S exp(-pi t (w - c)^2) / (1 - exp(-2 pi t (w - c)))
// and w is the smallest value pushing that under eps.
template <class R>
int gaussian_halfwidth(R t, R c, R log_scale, R eps, int max_terms) {
    const R pi = std::numbers::pi_v<R>;
    const R log_eps = std::log(eps);
    for (int w = 1;; ++w) {
        const R d = R(w) - c;
        if (d > R(0.25)) {
            const R log_tail =
                log_scale - pi * t * d * d - std::log1p(-std::exp(-2 * pi * t * d)) + std::log(R(2));
            if (log_tail < log_eps) return w;
        }
        if (2 * w + 1 > max_terms)
            throw truncation_failure("theta: tail bound not reachable within max_terms");
    }
}

// Neumaier-compensated accumulation, real and imaginary parts independently.
template <class R>
struct CompensatedSum {
    R sr{0}, si{0}, cr{0}, ci{0};
    static void add_part(R v, R& s, R& comp) {
        const R t = s + v;
        if (std::abs(s) >= std::abs(v))
            comp += (s - t) + v;
        else
            comp += (v - t) + s;
        s = t;
    }
    void add(std::complex<R> v) {
        add_part(v.real(), sr, cr);
        add_part(v.imag(), si, ci);
    }
    std::complex<R> value() const { return {sr + cr, si + ci}; }
};

} // namespace detail

template <class R>
struct ThetaEval {
    std::complex<R> value;
    int terms_used;
};

// theta_r(x, tau) = sum_{n in Z} exp(pi i tau (n+r)^2 + 2 pi i (n+r) x).
// The summand over nu = n + r has modulus exp(-pi t (nu - nu*)^2 + pi t nu*^2)
// with nu* = -Im(x)/t, so the series is summed symmetrically outward from the
// integer index closest to the peak, in a fixed order with compensated
// accumulation, to the half-width certified by gaussian_halfwidth.
template <class R>
ThetaEval<R> theta_char_eval(double r, std::complex<R> x, std::complex<R> tau,
                             const TruncationPolicy& pol = {}) {
    const R t = tau.imag();
    if (!(t > 0)) throw invalid_modulus("theta: Im(tau) must be positive");
    const R pi = std::numbers::pi_v<R>;
    const std::complex<R> ipi(0, pi);

    const R nu_star = -x.imag() / t;
    const long long n0 = std::llround(double(nu_star - R(r)));
    const R center_offset = std::abs(nu_star - (R(n0) + R(r))); // <= 1/2 + |r| fractional slack
    const R log_scale = pi * nu_star * nu_star * t;
    const int w =
        detail::gaussian_halfwidth<R>(t, center_offset, log_scale, R(pol.eps), pol.max_terms);

    detail::CompensatedSum<R> acc;
    auto term = [&](long long n) {
        const std::complex<R> nu(R(n) + R(r), 0);
        return std::exp(ipi * tau * nu * nu + R(2) * ipi * nu * x);
    };
    acc.add(term(n0));
    for (int j = 1; j <= w; ++j) {
        acc.add(term(n0 + j));
        acc.add(term(n0 - j));
    }
    return {acc.value(), 2 * w + 1};
}

template <class R>
ThetaEval<R> theta_eval(std::complex<R> x, std::complex<R> tau, const TruncationPolicy& pol = {}) {
    return theta_char_eval<R>(0.0, x, tau, pol);
}

inline std::complex<double> theta(std::complex<double> x, const Modulus& tau,
                                  const TruncationPolicy& pol = {}) {
    return theta_eval<double>(x, tau.tau, pol).value;
}

inline std::complex<double> theta_char(const Characteristic& r, std::complex<double> x,
                                       const Modulus& tau, const TruncationPolicy& pol = {}) {
    return theta_char_eval<double>(r.value(), x, tau.tau, pol).value;
}

} // namespace ainfell
