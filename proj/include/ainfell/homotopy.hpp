#pragma once

#include <Eigen/Dense>
#include <map>
#include <random>
#include <vector>

#include "ainfell/addition.hpp"
#include "ainfell/products.hpp"

namespace ainfell {

struct ill_conditioned_fit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Least-squares coefficients of the expansion
//   G^d_{a,b,c}(u,w) - F^d_{a,b,c}(u,w)
//     = sum_{sigma in phi1^{-1}(b,c)} f^d_{a,phi3(sigma)}(w)
//         theta_{phi2(sigma)/N}(((k+l)u - kw)/r, N tau)
// over samples of u, for fixed (a, d, w).  The coefficients depend on sigma
// only through phi3(sigma); the fit is run per (b,c) and the overlap across
// fibers is reported as fiber_consistency.
struct HomotopyFit {
    long long k = 1, l = 1, a = 0, d = 0;
    double w1 = 0, w2 = 0;
    Modulus tau{std::complex<double>(0, 1)};
    std::map<long long, std::complex<double>> f; // q in Z/(k+l)Z
    double fit_residual = 0.0;
    double fiber_consistency = 0.0;
};

inline std::vector<LatticeCoord> homotopy_u_samples(long long k, long long l, const Modulus& tau,
                                                    int count, std::uint64_t seed) {
    const long long r = std::gcd(k, l);
    const double span = double(k) * double(l) / double(r);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u1(0.06, 0.94);
    std::uniform_real_distribution<double> u2(0.06, 0.94);
    std::vector<LatticeCoord> out;
    out.reserve(std::size_t(count));
    while (int(out.size()) < count) {
        const LatticeCoord u = LatticeCoord::from_coords(u1(rng) * span, u2(rng), tau);
        if (lattice_distance(u.value, tau) < 5e-2) continue;
        out.push_back(u);
    }
    return out;
}

inline HomotopyFit homotopy_fit(long long k, long long l, long long a, long long d, double w1,
                                double w2, const Modulus& tau,
                                const std::vector<LatticeCoord>& u_samples,
                                const SeriesSettings& set = {}, const TruncationPolicy& pol = {}) {
    const TSetContext ts(k, l);
    HomotopyFit out;
    out.k = k;
    out.l = l;
    out.a = a;
    out.d = d;
    out.w1 = w1;
    out.w2 = w2;
    out.tau = tau;

    const int S = int(u_samples.size());
    if (S < 2 * int(ts.fiber))
        throw ill_conditioned_fit("homotopy_fit: need at least twice as many samples as unknowns");

    const std::complex<double> w = std::complex<double>(w1, 0.0) + tau.tau * w2;
    const Modulus big_tau(std::complex<double>(double(ts.N), 0.0) * tau.tau);

    std::map<long long, std::vector<std::complex<double>>> by_q;
    double worst_res = 0.0;
    for (long long b = 0; b < k; ++b) {
        for (long long c = 0; c < l; ++c) {
            const auto fiber = ts.fiber_over(b, c);
            Eigen::MatrixXcd E(S, Eigen::Index(fiber.size()));
            Eigen::VectorXcd H(S);
            for (int s = 0; s < S; ++s) {
                const std::complex<double> u = u_samples[std::size_t(s)].value;
                H[s] = g_series(k, l, a, b, c, d, u, w1, w2, tau, set) -
                       f_series(k, l, a, b, c, d, u, w1, w2, tau, set);
                const std::complex<double> arg = (double(k + l) * u - double(k) * w) / double(ts.r);
                for (std::size_t j = 0; j < fiber.size(); ++j)
                    E(s, Eigen::Index(j)) =
                        theta_char(Characteristic(ts.phi2(fiber[j]), ts.N), arg, big_tau, pol);
            }
            const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(E, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const double cond = svd.singularValues()(0) /
                                std::max(svd.singularValues()(svd.singularValues().size() - 1), 1e-300);
            if (cond > 1e10)
                throw ill_conditioned_fit("homotopy_fit: sample matrix is ill-conditioned");
            const Eigen::VectorXcd coef = svd.solve(H);
            const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
            worst_res = std::max(worst_res, (E * coef - H).cwiseAbs().maxCoeff() / scale);
            for (std::size_t j = 0; j < fiber.size(); ++j)
                by_q[ts.phi3(fiber[j])].push_back(coef[Eigen::Index(j)]);
        }
    }
    out.fit_residual = worst_res;
    for (const auto& [q, vals] : by_q) {
        std::complex<double> mean(0, 0);
        for (const auto& v : vals) mean += v;
        mean /= double(vals.size());
        out.f[q] = mean;
        for (const auto& v : vals)
            out.fiber_consistency = std::max(out.fiber_consistency, std::abs(v - mean));
    }
    return out;
}

// Fits for every output index d, as needed by n2.
inline std::vector<HomotopyFit> homotopy_fit_all_d(long long k, long long l, long long a, double w1,
                                                   double w2, const Modulus& tau,
                                                   const std::vector<LatticeCoord>& u_samples,
                                                   const SeriesSettings& set = {},
                                                   const TruncationPolicy& pol = {}) {
    std::vector<HomotopyFit> fits;
    fits.reserve(std::size_t(l));
    for (long long d = 0; d < l; ++d)
        fits.push_back(homotopy_fit(k, l, a, d, w1, w2, tau, u_samples, set, pol));
    return fits;
}

// n2(alpha, theta_{q/(k+l)}((k+l)x+w)) = sum_d f^d_{a,q} theta_{d/l}(lx+w):
// the coefficient vector over d in Z/lZ.
inline std::vector<std::complex<double>> n2_apply(const std::vector<HomotopyFit>& fits, long long q) {
    std::vector<std::complex<double>> out;
    out.reserve(fits.size());
    for (const auto& fit : fits) {
        const long long kl = fit.k + fit.l;
        const long long qq = ((q % kl) + kl) % kl;
        const auto it = fit.f.find(qq);
        if (it == fit.f.end()) throw std::invalid_argument("n2_apply: coefficient missing for q");
        out.push_back(it->second);
    }
    return out;
}

// Residual of m3 - m3' = n2(alpha, beta1 beta2): the product beta1 beta2 is
// expanded through the theta addition formula, n2 applied through the fitted
// coefficients, and the result compared with the G - F coefficients at a
// fresh point u (with v = w - u).
inline double n2_end_to_end_residual(long long k, long long l, long long a, long long b,
                                     long long c, const LatticeCoord& u,
                                     const std::vector<HomotopyFit>& fits, const Modulus& tau,
                                     const SeriesSettings& set = {},
                                     const TruncationPolicy& pol = {}) {
    const TSetContext ts(k, l);
    const double w1 = fits.at(0).w1, w2 = fits.at(0).w2;
    const std::complex<double> w = std::complex<double>(w1, 0.0) + tau.tau * w2;
    const Modulus big_tau(std::complex<double>(double(ts.N), 0.0) * tau.tau);
    const std::complex<double> arg = (double(k + l) * u.value - double(k) * w) / double(ts.r);

    double worst = 0.0;
    for (long long d = 0; d < l; ++d) {
        const std::complex<double> lhs =
            g_series(k, l, a, b, c, d, u.value, w1, w2, tau, set) -
            f_series(k, l, a, b, c, d, u.value, w1, w2, tau, set);
        std::complex<double> rhs(0, 0);
        for (const TSetElement& s : ts.fiber_over(b, c)) {
            const std::complex<double> es =
                theta_char(Characteristic(ts.phi2(s), ts.N), arg, big_tau, pol);
            rhs += es * fits[std::size_t(d)].f.at(ts.phi3(s));
        }
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    return worst;
}

} // namespace ainfell
