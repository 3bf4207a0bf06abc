#pragma once

#include <complex>

#include "ainfell/theta.hpp"
#include "ainfell/tset.hpp"

namespace ainfell {

// Both sides of the theta addition formula
//   theta_{b/k}(kx+u, k tau) theta_{c/l}(lx+v, l tau)
//     = sum_{sigma in phi1^{-1}(b,c)}
//         theta_{phi2(sigma)/N}(((k+l)u - kw)/r, N tau)
//         theta_{phi3(sigma)/(k+l)}((k+l)x + w, (k+l) tau),
// with w = u+v, r = gcd(k,l), N = (k+l)kl/r^2.

struct AdditionSides {
    std::complex<double> lhs;
    std::complex<double> rhs;
};

inline AdditionSides addition_formula_sides(long long k, long long l, long long b, long long c,
                                            std::complex<double> u, std::complex<double> v,
                                            std::complex<double> x, const Modulus& tau,
                                            const TruncationPolicy& pol = {}) {
    const TSetContext ts(k, l);
    const std::complex<double> w = u + v;
    const std::complex<double> kd(double(k), 0.0), ld(double(l), 0.0);

    const std::complex<double> lhs =
        theta_char(Characteristic(b, k), kd * x + u, Modulus(kd * tau.tau), pol) *
        theta_char(Characteristic(c, l), ld * x + v, Modulus(ld * tau.tau), pol);

    std::complex<double> rhs(0.0, 0.0);
    const std::complex<double> arg1 = (double(k + l) * u - double(k) * w) / double(ts.r);
    const Modulus mod1(std::complex<double>(double(ts.N), 0.0) * tau.tau);
    const Modulus mod2(std::complex<double>(double(k + l), 0.0) * tau.tau);
    for (const TSetElement& s : ts.fiber_over(b, c)) {
        rhs += theta_char(Characteristic(ts.phi2(s), ts.N), arg1, mod1, pol) *
               theta_char(Characteristic(ts.phi3(s), k + l), double(k + l) * x + w, mod2, pol);
    }
    return {lhs, rhs};
}

inline double addition_formula_residual(long long k, long long l, long long b, long long c,
                                        std::complex<double> u, std::complex<double> v,
                                        std::complex<double> x, const Modulus& tau,
                                        const TruncationPolicy& pol = {}) {
    const AdditionSides s = addition_formula_sides(k, l, b, c, u, v, x, tau, pol);
    const double scale = std::max({1.0, std::abs(s.lhs), std::abs(s.rhs)});
    return std::abs(s.lhs - s.rhs) / scale;
}

} // namespace ainfell
