#include <catch2/catch_amalgamated.hpp>

#include "ainfell/homotopy.hpp"

using namespace ainfell;
using C = std::complex<double>;

TEST_CASE("homotopy coefficients: fit quality and fiber constancy") {
    const Modulus tau(C(0.0, 1.0));
    const auto samples = homotopy_u_samples(1, 1, tau, 8, 2024);
    const auto fit = homotopy_fit(1, 1, 0, 0, 0.3, 0.2, tau, samples);
    CAPTURE(fit.fit_residual, fit.fiber_consistency);
    REQUIRE(fit.fit_residual < 1e-8);
    REQUIRE(fit.fiber_consistency < 1e-7);
    REQUIRE(fit.f.size() == 2);

    // (2,1): fibers of size 3, coefficients over Z/3Z; different (b,c) hit
    // the same phi3 classes and must agree
    const auto samples21 = homotopy_u_samples(2, 1, tau, 10, 77);
    const auto fit21 = homotopy_fit(2, 1, 1, 0, 0.25, 0.15, tau, samples21);
    CAPTURE(fit21.fit_residual, fit21.fiber_consistency);
    REQUIRE(fit21.fit_residual < 1e-8);
    REQUIRE(fit21.fiber_consistency < 1e-7);
    REQUIRE(fit21.f.size() == 3);
}

TEST_CASE("homotopy fit rejects underdetermined sample sets") {
    const Modulus tau(C(0.0, 1.0));
    const auto samples = homotopy_u_samples(1, 1, tau, 3, 5);
    REQUIRE_THROWS_AS(homotopy_fit(1, 1, 0, 0, 0.3, 0.2, tau, samples), ill_conditioned_fit);
}

TEST_CASE("homotopy coefficients stable under sample re-randomization") {
    const Modulus tau(C(0.0, 1.0));
    const auto f1 = homotopy_fit(1, 1, 0, 0, 0.3, 0.2, tau, homotopy_u_samples(1, 1, tau, 8, 10));
    const auto f2 = homotopy_fit(1, 1, 0, 0, 0.3, 0.2, tau, homotopy_u_samples(1, 1, tau, 9, 911));
    for (const auto& [q, v] : f1.f) REQUIRE(std::abs(v - f2.f.at(q)) < 1e-7);
}

TEST_CASE("n2 application and the end-to-end identity") {
    const Modulus tau(C(0.0, 1.0));
    for (auto [k, l] : {std::pair<long long, long long>{1, 1}, {2, 1}}) {
        const double w1 = 0.3, w2 = 0.2;
        const long long a = k - 1, b = 0, c = 0;
        const auto fits =
            homotopy_fit_all_d(k, l, a, w1, w2, tau, homotopy_u_samples(k, l, tau, 12, 31));
        // fresh evaluation points, not in the fitting set
        for (std::uint64_t s : {501ull, 502ull}) {
            const auto pts = homotopy_u_samples(k, l, tau, 1, s);
            const double res = n2_end_to_end_residual(k, l, a, b, c, pts[0], fits, tau);
            CAPTURE(k, l, s, res);
            REQUIRE(res < 1e-7);
        }
        // coefficient vector over d
        const auto n2 = n2_apply(fits, b + c);
        REQUIRE(n2.size() == std::size_t(l));
    }
}

TEST_CASE("zero coefficients give zero n2 output") {
    HomotopyFit fit;
    fit.k = 1;
    fit.l = 1;
    fit.f[0] = C(0, 0);
    fit.f[1] = C(0, 0);
    const auto out = n2_apply({fit}, 1);
    REQUIRE(out.size() == 1);
    REQUIRE(out[0] == C(0, 0));
}

TEST_CASE("reversed-orientation bookkeeping") {
    // with n2(beta, alpha) = n2(alpha, beta) and m3(b2,b1,a) = -m3(a,b1,b2):
    //   m3(b2,b1,a) - m3'(b2,b1,a) = -(m3 - m3')(a,b1,b2) = -n2(alpha, b1 b2)
    const Modulus tau(C(0.0, 1.0));
    const long long k = 1, l = 1, a = 0, b = 0, c = 0;
    const double w1 = 0.3, w2 = 0.2;
    const auto fits = homotopy_fit_all_d(k, l, a, w1, w2, tau, homotopy_u_samples(k, l, tau, 8, 6));
    const auto pts = homotopy_u_samples(k, l, tau, 1, 701);
    const LatticeCoord u = pts[0];
    const C w = C(w1, 0.0) + tau.tau * w2;

    const TSetContext ts(k, l);
    const Modulus big_tau(C(double(ts.N), 0.0) * tau.tau);
    const C arg = (double(k + l) * u.value - double(k) * w) / double(ts.r);
    for (long long d = 0; d < l; ++d) {
        const C fwd = g_series(k, l, a, b, c, d, u.value, w1, w2, tau) -
                      f_series(k, l, a, b, c, d, u.value, w1, w2, tau);
        // reversed-orientation difference via the antisymmetry of both sides
        const C rev = -fwd;
        C n2v(0, 0);
        for (const TSetElement& s : ts.fiber_over(b, c))
            n2v += theta_char(Characteristic(ts.phi2(s), ts.N), arg, big_tau) *
                   fits[std::size_t(d)].f.at(ts.phi3(s));
        REQUIRE(std::abs(rev - (-n2v)) < 1e-7 * std::max(1.0, std::abs(n2v)));
    }
}
