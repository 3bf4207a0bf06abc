#pragma once

#include <string>
#include <vector>

#include "ainfell/addition.hpp"
#include "ainfell/dg_families.hpp"
#include "ainfell/homotopy.hpp"
#include "ainfell/hodge.hpp"
#include "ainfell/oracle.hpp"
#include "ainfell/products.hpp"
#include "ainfell/residuals.hpp"
#include "ainfell/transfer.hpp"

namespace ainfell {

struct unknown_suite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    double tol_override = 0.0; // 0: use the per-check defaults
    int algebras = 20;         // corpus size for the algebraic suites
    int draws = 2;             // random draws per configuration
    int N = 128;               // oracle grid
    int M = 32;                // oracle mode cutoff
    bool extended = false;     // re-run failed theta checks in long double
};

namespace detail {

inline void push(std::vector<CheckResult>& out, const std::string& name, double residual,
                 double tol, double tol_override) {
    const double t = tol_override > 0.0 ? tol_override : tol;
    out.push_back({name, residual, t, residual < t});
}

inline double relc(const std::complex<double>& x, const std::complex<double>& y) {
    return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

} // namespace detail

// constraint residuals of transferred structures; exact vanishing for Q = 0
inline std::vector<CheckResult> suite_ainf(const VerifyOptions& o) {
    std::vector<CheckResult> out;
    double worst = 0.0;
    for (int i = 0; i < o.algebras; ++i) {
        auto a = random_dg_algebra(o.seed + std::uint64_t(i));
        auto h = hodge_data(a);
        worst = std::max(worst, ainf_residual(transfer(a, h, 4)));
    }
    detail::push(out, "ainf-constraint(transfer,K=4)", worst, 1e-10, o.tol_override);

    auto a = heisenberg_ce(Cx(0.8, 0.2)).build();
    DgAlgebra z(a.basis, a.raw_mult(), MatC::Zero(a.dim(), a.dim()), MatC::Identity(a.dim(), a.dim()));
    auto S = transfer(z, hodge_data(z), 4);
    detail::push(out, "ainf-zero-homotopy(m3,m4|Q=0)", S.m[2].max_abs() + S.m[3].max_abs(), 1e-300,
                 0.0);
    out.back().pass = out.back().residual == 0.0;
    return out;
}

// morphism equation for the transferred inclusion
inline std::vector<CheckResult> suite_morphism(const VerifyOptions& o) {
    std::vector<CheckResult> out;
    double worst = 0.0;
    for (int i = 0; i < o.algebras; ++i) {
        auto a = random_dg_algebra(o.seed + std::uint64_t(i));
        auto h = hodge_data(a);
        auto f = inclusion_morphism(a, h, 4);
        worst = std::max(worst, ainf_morphism_residual(f, transfer(a, h, 4), as_ainf_structure(a, 4)));
    }
    detail::push(out, "morphism-inclusion(f=Q.lambda)", worst, 1e-9, o.tol_override);
    return out;
}

// cyclic symmetry: finite mode-pair models and the curve instantiation
inline std::vector<CheckResult> suite_cyclic(const VerifyOptions& o) {
    std::vector<CheckResult> out;
    double pre = 0.0, worst2 = 0.0, worst34 = 0.0;
    for (double lam : {1.0, 1.6}) {
        auto model = mode_pair_model({lam}, true);
        auto a = model.builder.build(MatC::Identity(16, 16));
        auto h = hodge_data(a);
        const MatC P = model.builder.pairing_matrix(a, model.top_mask);
        for (int n = 2; n <= 4; ++n) {
            auto r = pairing_cyclic_residual(a, h, P, n);
            pre = std::max(pre, r.precondition_residual);
            if (!r.precondition_ok) pre = std::max(pre, 1.0);
            (n == 2 ? worst2 : worst34) = std::max(n == 2 ? worst2 : worst34, r.residual);
        }
    }
    detail::push(out, "cyclic-q-adjointness-precondition", pre, 1e-12, o.tol_override);
    detail::push(out, "cyclic-pairing(n=2)", worst2, 1e-10, o.tol_override);
    detail::push(out, "cyclic-pairing(n=3,4)", worst34, 1e-10, o.tol_override);

    const Modulus tau(std::complex<double>(0.0, 1.0));
    const LatticeCoord u = LatticeCoord::from_coords(0.23, 0.31, tau);
    const LatticeCoord v = LatticeCoord::from_coords(0.12, -0.17, tau);
    const double c2 = std::max(serre_cyclic_n2(1, 1, 0, 0, 0, u, v, tau, o.N),
                               serre_cyclic_n2(2, 1, 1, 0, 1, u, v, tau, o.N));
    detail::push(out, "serre-cyclic-curve(n=2)", c2, 1e-6, o.tol_override);

    TripleProductQuery q;
    q.k = 2;
    q.l = 1;
    q.b = 1;
    q.tau = tau;
    q.u = u;
    q.v = v;
    detail::push(out, "serre-cyclic-curve(n=3)", serre_cyclic_n3(q, 0, o.N, o.M), 1e-6,
                 o.tol_override);

    // Q-adjointness against the wedge pairing, realized mode-wise
    std::mt19937_64 rng(o.seed + 99);
    const LatticeCoord mu = -u;
    auto rnd = [&](const LatticeCoord& tw, int p, int qd) {
        GridSection s = make_section(o.N, 0, tw, tau, p, qd);
        std::uniform_real_distribution<double> ur(-1.0, 1.0);
        for (long long m = -2; m <= 2; ++m)
            for (long long n = -2; n <= 2; ++n) {
                const std::complex<double> cmn(ur(rng), ur(rng));
                const auto mode = sample_mode(tw, m, n, tau, o.N);
                for (std::size_t i = 0; i < s.samples.size(); ++i) s.samples[i] += cmn * mode.samples[i];
            }
        return s;
    };
    const double lem = std::max(lemma_adjoint_residual(rnd(u, 0, 1), rnd(mu, 1, 1), o.M),
                                lemma_adjoint_residual(rnd(u, 1, 1), rnd(mu, 0, 1), o.M));
    detail::push(out, "serre-lemma-adjointness", lem, 1e-7, o.tol_override);
    return out;
}

namespace detail {

// long-double evaluation of the addition-formula residual, used by the
// extended-precision re-run
inline double addition_residual_ext(long long k, long long l, long long b, long long c,
                                    std::complex<double> u, std::complex<double> v,
                                    std::complex<double> x, const Modulus& tau) {
    using CL = std::complex<long double>;
    const TSetContext ts(k, l);
    const CL tl(tau.tau.real(), tau.tau.imag());
    const CL ul(u.real(), u.imag()), vl(v.real(), v.imag()), xl(x.real(), x.imag());
    const CL wl = ul + vl;
    auto th = [&](const Characteristic& r, CL arg, CL mod) {
        return theta_char_eval<long double>(r.value(), arg, mod).value;
    };
    const CL lhs = th(Characteristic(b, k), CL(k) * xl + ul, CL(k) * tl) *
                   th(Characteristic(c, l), CL(l) * xl + vl, CL(l) * tl);
    CL rhs(0, 0);
    const CL arg1 = (CL(k + l) * ul - CL(k) * wl) / CL(ts.r);
    for (const TSetElement& s : ts.fiber_over(b, c))
        rhs += th(Characteristic(ts.phi2(s), ts.N), arg1, CL(ts.N) * tl) *
               th(Characteristic(ts.phi3(s), k + l), CL(k + l) * xl + wl, CL(k + l) * tl);
    const long double scale = std::max({(long double)1.0, std::abs(lhs), std::abs(rhs)});
    return double(std::abs(lhs - rhs) / scale);
}

} // namespace detail

inline std::vector<CheckResult> suite_theta_addition(const VerifyOptions& o) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> ur(-0.35, 0.35);
    std::uniform_real_distribution<double> ut(0.9, 1.6);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const long long k = 1 + (long long)(rng() % 3), l = 1 + (long long)(rng() % 3);
        const long long b = (long long)(rng() % (unsigned long long)k);
        const long long c = (long long)(rng() % (unsigned long long)l);
        const Modulus tau(std::complex<double>(ur(rng) / 2, ut(rng)));
        const std::complex<double> u(ur(rng), ur(rng) / 2), v(ur(rng), ur(rng) / 2),
            x(ur(rng), ur(rng) / 2);
        double r = addition_formula_residual(k, l, b, c, u, v, x, tau);
        if (o.extended && !(r < (o.tol_override > 0 ? o.tol_override : 1e-9)))
            r = detail::addition_residual_ext(k, l, b, c, u, v, x, tau);
        worst = std::max(worst, r);
    }
    detail::push(out, o.extended ? "theta-addition(extended)" : "theta-addition", worst, 1e-9,
                 o.tol_override);
    return out;
}

inline std::vector<CheckResult> suite_periodicity(const VerifyOptions& o) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> ur(0.15, 0.45);
    std::uniform_real_distribution<double> uw(-0.4, 0.4);
    const double pi = std::numbers::pi;

    double per1 = 0.0, per2 = 0.0, per5 = 0.0, per6 = 0.0;
    for (auto [k, l] : {std::pair<long long, long long>{1, 1}, {2, 1}, {2, 3}}) {
        for (int i = 0; i < o.draws; ++i) {
            const Modulus tau(std::complex<double>(0.0, 1.0));
            const long long a = (long long)(rng() % (unsigned long long)k);
            const long long b = (long long)(rng() % (unsigned long long)k);
            const long long c = (long long)(rng() % (unsigned long long)l);
            const long long d = (long long)(rng() % (unsigned long long)l);
            const std::complex<double> u = std::complex<double>(ur(rng), 0.0) + tau.tau * ur(rng);
            const double w1 = uw(rng), w2 = uw(rng);
            const std::complex<double> w = std::complex<double>(w1, 0.0) + tau.tau * w2;

            auto G = [&](std::complex<double> uu, long long bb, long long cc) {
                return g_series(k, l, a, bb, cc, d, uu, w1, w2, tau);
            };
            auto F = [&](std::complex<double> uu, long long bb, long long cc) {
                return f_series(k, l, a, bb, cc, d, uu, w1, w2, tau);
            };
            const std::complex<double> ph1 =
                std::exp(std::complex<double>(0, 2 * pi) * (double(b) / double(k) - double(c) / double(l)));
            per1 = std::max(per1, detail::relc(G(u + 1.0, b, c), ph1 * G(u, b, c)));
            per1 = std::max(per1, detail::relc(F(u + 1.0, b, c), ph1 * F(u, b, c)));

            const long long b1 = (b + 1) % k, c1 = ((c - 1) % l + l) % l;
            const std::complex<double> ph2 =
                std::exp(-std::complex<double>(0, pi) * double(k + l) / (double(k) * double(l)) *
                             (2.0 * u + tau.tau) +
                         std::complex<double>(0, 2 * pi) * w / double(l));
            per2 = std::max(per2, detail::relc(G(u + tau.tau, b, c), ph2 * G(u, b1, c1)));
            per2 = std::max(per2, detail::relc(F(u + tau.tau, b, c), ph2 * F(u, b1, c1)));

            const long long r = std::gcd(k, l);
            const double shift = double(k) * double(l) / double(r);
            const long long Nn = (k + l) * k * l / (r * r);
            auto H = [&](std::complex<double> uu) { return G(uu, b, c) - F(uu, b, c); };
            per5 = std::max(per5, detail::relc(H(u + shift), H(u)));
            const std::complex<double> ph6 =
                std::exp(-std::complex<double>(0, pi) * double(Nn) * tau.tau -
                         std::complex<double>(0, 2 * pi) * (double(k + l) * u - double(k) * w) / double(r));
            per6 = std::max(per6, detail::relc(H(u + shift * tau.tau), ph6 * H(u)));
        }
    }
    detail::push(out, "per1(G,F)", per1, 1e-8, o.tol_override);
    detail::push(out, "per2(G,F)", per2, 1e-8, o.tol_override);
    detail::push(out, "per5(H)", per5, 1e-7, o.tol_override);
    detail::push(out, "per6(H)", per6, 1e-7, o.tol_override);
    return out;
}

// residues at u = 0 through a four-point contour average at radius 1e-3;
// the average removes the O(u) regular contribution, so residue = 1 is
// tested at the stated radius
inline std::vector<CheckResult> suite_residue(const VerifyOptions& o) {
    std::vector<CheckResult> out;
    double resg = 0.0, resf = 0.0, resh = 0.0;
    for (auto [k, l] : {std::pair<long long, long long>{1, 1}, {2, 1}}) {
        std::complex<double> ag(0, 0), af(0, 0), ah(0, 0);
        SeriesSettings set;
        set.pole_margin = 1e-4;
        for (int j = 0; j < 4; ++j) {
            const std::complex<double> u =
                1e-3 * std::exp(std::complex<double>(0, std::numbers::pi / 2 * j + 0.3));
            const Modulus tau(std::complex<double>(0, 1));
            const std::complex<double> g = g_series(k, l, 0, 0, 0, 0, u, 0.3, 0.2, tau, set);
            const std::complex<double> f = f_series(k, l, 0, 0, 0, 0, u, 0.3, 0.2, tau, set);
            ag += 0.25 * u * g;
            af += 0.25 * u * f;
            ah += 0.25 * u * (g - f);
        }
        resg = std::max(resg, std::abs(ag - 1.0));
        resf = std::max(resf, std::abs(af - 1.0));
        resh = std::max(resh, std::abs(ah));
    }
    detail::push(out, "residue-G(u->0)", resg, 1e-4, o.tol_override);
    detail::push(out, "residue-F(u->0)", resf, 1e-4, o.tol_override);
    detail::push(out, "residue-H-regular", resh, 1e-5, o.tol_override);
    return out;
}

inline std::vector<CheckResult> suite_homotopy(const VerifyOptions& o) {
    std::vector<CheckResult> out;
    const Modulus tau(std::complex<double>(0, 1));
    double fitres = 0.0, fiber = 0.0, endres = 0.0;
    for (auto [k, l] : {std::pair<long long, long long>{1, 1}, {2, 1}}) {
        const long long a = k - 1;
        const auto fits = homotopy_fit_all_d(k, l, a, 0.3, 0.2, tau,
                                             homotopy_u_samples(k, l, tau, 12, o.seed));
        for (const auto& f : fits) {
            fitres = std::max(fitres, f.fit_residual);
            fiber = std::max(fiber, f.fiber_consistency);
        }
        const auto pts = homotopy_u_samples(k, l, tau, 2, o.seed + 500);
        for (const auto& u : pts)
            endres = std::max(endres, n2_end_to_end_residual(k, l, a, 0, 0, u, fits, tau));
    }
    detail::push(out, "mainfun-fit", fitres, 1e-8, o.tol_override);
    detail::push(out, "mainfun-fiber-constancy", fiber, 1e-7, o.tol_override);
    detail::push(out, "n2-end-to-end", endres, 1e-7, o.tol_override);
    return out;
}

inline std::vector<CheckResult> suite_oracle(const VerifyOptions& o) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> ur(0.15, 0.45);
    std::uniform_real_distribution<double> uv(-0.3, 0.3);
    double agree = 0.0;
    TripleProductQuery last;
    for (auto [k, l] : {std::pair<long long, long long>{1, 1}, {2, 1}, {2, 3}}) {
        for (int i = 0; i < o.draws; ++i) {
            TripleProductQuery q;
            q.k = k;
            q.l = l;
            q.tau = Modulus(std::complex<double>(0, 1));
            q.a = (long long)(rng() % (unsigned long long)k);
            q.b = (long long)(rng() % (unsigned long long)k);
            q.c = (long long)(rng() % (unsigned long long)l);
            q.d = (long long)(rng() % (unsigned long long)l);
            q.u = LatticeCoord::from_coords(ur(rng), ur(rng), q.tau);
            q.v = LatticeCoord::from_coords(uv(rng), uv(rng), q.tau);
            const std::complex<double> closed = m3_holomorphic(q);
            const std::complex<double> grid = m3_oracle(q, o.N, o.M);
            agree = std::max(agree, std::abs(closed - grid) / std::max(1e-3, std::abs(closed)));
            last = q;
        }
    }
    detail::push(out, "oracle-vs-series", agree, 1e-6, o.tol_override);

    double anti = 0.0;
    {
        const auto fwd = m3_oracle_coeffs(last, o.N, o.M);
        const auto rev = m3_oracle_reversed(last, o.N, o.M);
        for (std::size_t d = 0; d < fwd.size(); ++d) anti = std::max(anti, std::abs(rev[d] + fwd[d]));
    }
    detail::push(out, "oracle-antisymmetry", anti, 1e-7, o.tol_override);

    const std::complex<double> base = m3_oracle(last, o.N, o.M);
    const double robust = std::max(std::abs(m3_oracle(last, 2 * o.N, o.M) - base),
                                   std::abs(m3_oracle(last, o.N, 2 * o.M) - base));
    detail::push(out, "oracle-grid-robustness", robust, 1e-8, o.tol_override);
    return out;
}

inline std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& o) {
    if (name == "ainf") return suite_ainf(o);
    if (name == "morphism") return suite_morphism(o);
    if (name == "cyclic") return suite_cyclic(o);
    if (name == "theta-addition") return suite_theta_addition(o);
    if (name == "periodicity") return suite_periodicity(o);
    if (name == "residue") return suite_residue(o);
    if (name == "homotopy") return suite_homotopy(o);
    if (name == "oracle") return suite_oracle(o);
    throw unknown_suite("unknown suite: " + name);
}

} // namespace ainfell
