#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "ainfell/fourier.hpp"
#include "ainfell/lattice.hpp"
#include "ainfell/theta.hpp"

namespace ainfell {

struct transversality_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two implementations of the holomorphic-side series: the closed-form lattice
// sum over gamma = m tau + n, and the coefficient-product route assembled
// from fourier_c (gamma = m tau - n building blocks).  Both are kept behind
// this switch; their agreement and the quadrature oracle fix the convention.
enum class GammaConvention { displayed, coefficient_product };

struct SeriesSettings {
    double eps = 1e-12;
    int max_halfwidth = 4000;
    double pole_margin = 1e-3;
    double transversality_margin = 1e-6;
};

namespace detail {

// half-width for a 1D Gaussian-decaying sum with log-curvature c > 0:
// terms at distance j from the peak are bounded by
// scale * exp(-c (j - 1)^2), so the tail past W is under eps for
//   W = sqrt(max(0, log(scale/eps') ) / c) + 2.
inline int gaussian_width_1d(double c, double log_scale, double log_eps) {
    const double arg = std::max(0.0, log_scale - log_eps);
    return int(std::ceil(std::sqrt(arg / std::max(c, 1e-300)))) + 3;
}

} // namespace detail

// G^d_{a,b,c}(u, w): the coefficient of theta_{d/l}(lx+w, l tau) in the
// holomorphic triple product with the normalized degree-(-k) argument.
// Displayed convention:
//   sum over gamma = m tau + n with m = b-a (mod k), m = d-c (mod l) of
//   exp( -(pi(k+l)/2tkl)(|gamma|^2 + 2 conj(gamma) u + u^2)
//        + (2 pi i / l)((u+n) w2 - m w1)
//        + pi i n ((m+2c)/l - (m+2a)/k) ) / (gamma + u),
// where (w1, w2) are the lattice coordinates of w.  The congruence class can
// be empty, in which case the product vanishes identically.
inline std::complex<double> g_series(long long k, long long l, long long a, long long b,
                                     long long c, long long d, std::complex<double> u, double w1,
                                     double w2, const Modulus& tau,
                                     const SeriesSettings& set = {},
                                     GammaConvention conv = GammaConvention::displayed) {
    if (k <= 0 || l <= 0) throw std::invalid_argument("g_series: k, l must be positive");
    if (lattice_distance(u, tau) < set.pole_margin)
        throw pole_proximity("g_series: u within pole margin of the lattice");

    const auto cls = crt_class(((b - a) % k + k) % k, k, ((d - c) % l + l) % l, l);
    if (!cls.solvable) return {0.0, 0.0};

    const double t = tau.t;
    const double pi = std::numbers::pi;
    const double c0 = pi * double(k + l) / (2.0 * t * double(k) * double(l));

    // Center of the Gaussian factor: minimize |gamma|^2 + 2 Re(conj(gamma) u)
    // over real (m, n); the quadratic form is [(m,n)] [[|tau|^2, Re tau],
    // [Re tau, 1]] [(m,n)]^T, positive definite with det t^2.
    const double rt = tau.tau.real();
    const double q11 = std::norm(tau.tau), q12 = rt, q22 = 1.0;
    // gradient: 2 Q (m,n)^T + 2 (Re(conj(tau) u), Re(u)) = 0
    const double g1 = (std::conj(tau.tau) * u).real();
    const double g2 = u.real();
    const double det = q11 * q22 - q12 * q12; // = t^2
    const double mc = (-g1 * q22 + g2 * q12) / det;
    const double nc = (-g2 * q11 + g1 * q12) / det;
    const double mu_min =
        0.5 * (q11 + q22 - std::sqrt((q11 - q22) * (q11 - q22) + 4.0 * q12 * q12));

    // peak magnitude estimate for the tail bound: the phases contribute the
    // (m,n)-independent factor exp(2 pi |Im u| |w2| / l) and the denominator
    // is bounded below by the pole margin
    const double peak_quad = q11 * mc * mc + 2 * q12 * mc * nc + q22 * nc * nc + 2 * (g1 * mc + g2 * nc);
    const double log_scale = -c0 * (peak_quad + (u * u).real()) +
                             2.0 * pi * std::abs(u.imag()) * std::abs(w2) / double(l) -
                             std::log(set.pole_margin);
    const int W = detail::gaussian_width_1d(c0 * mu_min, log_scale, std::log(set.eps) - std::log(10.0));
    if (W > set.max_halfwidth) throw truncation_failure("g_series: window exceeds max_halfwidth");

    detail::CompensatedSum<double> acc;
    const long long m_lo = (long long)std::floor(mc - W), m_hi = (long long)std::ceil(mc + W);
    const long long n_lo = (long long)std::floor(nc - W), n_hi = (long long)std::ceil(nc + W);
    long long m0 = cls.m0;
    while (m0 > m_lo) m0 -= cls.step;
    while (m0 < m_lo) m0 += cls.step;

    if (conv == GammaConvention::displayed) {
        for (long long m = m0; m <= m_hi; m += cls.step) {
            for (long long n = n_lo; n <= n_hi; ++n) {
                const std::complex<double> gamma = double(m) * tau.tau + double(n);
                const std::complex<double> quad = std::norm(gamma) + 2.0 * std::conj(gamma) * u + u * u;
                std::complex<double> E = -c0 * quad;
                E += std::complex<double>(0.0, 2.0 * pi / double(l)) * ((u + double(n)) * w2 - double(m) * w1);
                E += std::complex<double>(0.0, pi * double(n)) *
                     (double(m + 2 * c) / double(l) - double(m + 2 * a) / double(k));
                acc.add(std::exp(E) / (gamma + u));
            }
        }
    } else {
        // route through the closed-form coefficients: terms
        //   pref * a_{m,n} conj(b_{m,n}) with a_{m,n} the solved-coefficient
        //   form and b_{m,n} the product-section coefficient at twist w, v.
        const std::complex<double> wv = std::complex<double>(w1, 0.0) + tau.tau * w2;
        const std::complex<double> v = wv - u;
        const double pref = (pi * std::sqrt(2.0 * double(k)) / std::sqrt(t)) *
                            std::sqrt(2.0 * t * double(l)) *
                            std::exp(-2.0 * pi * t * w2 * w2 / double(l)) * (t / pi);
        for (long long m = m0; m <= m_hi; m += cls.step) {
            for (long long n = n_lo; n <= n_hi; ++n) {
                const std::complex<double> gamma = double(m) * tau.tau - double(n);
                const std::complex<double> amn = fourier_c(m, n, k, a, b, u, {0.0, 0.0}, tau) / (gamma + u);
                const std::complex<double> bmn = fourier_c(m, n, l, c, d, wv, v, tau);
                acc.add(pref * amn * std::conj(bmn));
            }
        }
    }
    return acc.value();
}

// Fukaya-side series:
//   F^d_{a,b,c}(u, w) = -2 pi i sum_{m = b-a (k), m = d-c (l)}
//     exp( (pi i (k+l)/kl)(tau m^2 + 2 m u) - 2 pi i m w / l
//          + 2 pi i (m tau + u)(n0 - d/l + a/k) ) / (1 - exp(2 pi i (m tau + u)))
// with n0 the least integer >= (w2 + d)/l - a/k.  The boundary case is
// rejected inside the transversality margin unless it is an exact integer.
inline std::complex<double> f_series(long long k, long long l, long long a, long long b,
                                     long long c, long long d, std::complex<double> u, double w1,
                                     double w2, const Modulus& tau, const SeriesSettings& set = {}) {
    if (k <= 0 || l <= 0) throw std::invalid_argument("f_series: k, l must be positive");
    if (lattice_distance(u, tau) < set.pole_margin)
        throw pole_proximity("f_series: u within pole margin of the lattice");

    const auto cls = crt_class(((b - a) % k + k) % k, k, ((d - c) % l + l) % l, l);
    if (!cls.solvable) return {0.0, 0.0};

    const double x0 = (w2 + double(d)) / double(l) - double(a) / double(k);
    const double nearest = std::round(x0);
    long long n0;
    if (std::abs(x0 - nearest) < 1e-12) {
        n0 = (long long)nearest;
    } else if (std::abs(x0 - nearest) < set.transversality_margin) {
        throw transversality_error("f_series: n0 boundary within transversality margin");
    } else {
        n0 = (long long)std::ceil(x0);
    }

    const double t = tau.t;
    const double pi = std::numbers::pi;
    const std::complex<double> w = std::complex<double>(w1, 0.0) + tau.tau * w2;
    const double cst = double(n0) - double(d) / double(l) + double(a) / double(k);

    // Re of the exponent is a downward parabola in m:
    //   -pi (k+l)/(kl) (t m^2 + 2 m Im u) + 2 pi m Im(w)/l - 2 pi (m t + Im u) cst
    const double A = pi * double(k + l) * t / (double(k) * double(l));
    const double B = -2.0 * pi * double(k + l) * u.imag() / (double(k) * double(l)) +
                     2.0 * pi * w.imag() / double(l) - 2.0 * pi * t * cst;
    const double mc = B / (2.0 * A);
    const double log_scale = A * mc * mc + 2.0 * pi * std::abs(u.imag()) * std::abs(cst) + 5.0;
    const int W = detail::gaussian_width_1d(A, log_scale, std::log(set.eps) - std::log(10.0));
    if (W > set.max_halfwidth) throw truncation_failure("f_series: window exceeds max_halfwidth");

    detail::CompensatedSum<double> acc;
    long long m0 = cls.m0;
    const long long m_lo = (long long)std::floor(mc - W);
    while (m0 > m_lo) m0 -= cls.step;
    while (m0 < m_lo) m0 += cls.step;
    const long long m_hi = (long long)std::ceil(mc + W);

    for (long long m = m0; m <= m_hi; m += cls.step) {
        std::complex<double> E =
            std::complex<double>(0.0, pi * double(k + l) / (double(k) * double(l))) *
            (tau.tau * double(m) * double(m) + 2.0 * double(m) * u);
        E -= std::complex<double>(0.0, 2.0 * pi * double(m) / double(l)) * w;
        const std::complex<double> z = std::complex<double>(0.0, 2.0 * pi) * (double(m) * tau.tau + u);
        E += z * cst;
        // 1/(1 - e^z): for large Re z switch to -e^{-z}/(1 - e^{-z})
        std::complex<double> term;
        if (z.real() > 300.0) {
            term = -std::exp(E - z) / (1.0 - std::exp(-z));
        } else {
            const std::complex<double> den = 1.0 - std::exp(z);
            term = std::exp(E) / den;
        }
        acc.add(term);
    }
    return std::complex<double>(0.0, -2.0 * pi) * acc.value();
}

// Query record for the triple product
//   H^1(L(-k,0)) (x) H^0(L(k,u)) (x) H^0(L(l,v)) -> H^0(L(l,u+v)).
struct TripleProductQuery {
    long long k = 1, l = 1;
    long long a = 0, b = 0, c = 0, d = 0;
    LatticeCoord u, v;
    Modulus tau{std::complex<double>(0.0, 1.0)};

    LatticeCoord w() const {
        LatticeCoord s;
        s.c1 = u.c1 + v.c1;
        s.c2 = u.c2 + v.c2;
        s.value = u.value + v.value;
        return s;
    }

    void validate(double pole_margin = 1e-3) const {
        if (k <= 0 || l <= 0) throw std::invalid_argument("triple product: k, l must be positive");
        if (lattice_distance(u.value, tau) < pole_margin)
            throw pole_proximity("triple product: u within pole margin of the lattice");
    }
};

inline std::complex<double> m3_holomorphic(const TripleProductQuery& q, const SeriesSettings& set = {},
                                           GammaConvention conv = GammaConvention::displayed) {
    q.validate(set.pole_margin);
    const LatticeCoord w = q.w();
    return g_series(q.k, q.l, q.a, q.b, q.c, q.d, q.u.value, w.c1, w.c2, q.tau, set, conv);
}

inline std::complex<double> m3_fukaya(const TripleProductQuery& q, const SeriesSettings& set = {}) {
    q.validate(set.pole_margin);
    const LatticeCoord w = q.w();
    return f_series(q.k, q.l, q.a, q.b, q.c, q.d, q.u.value, w.c1, w.c2, q.tau, set);
}

} // namespace ainfell
