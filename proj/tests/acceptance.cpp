// Acceptance suite: every criterion is evaluated at its stated tolerance and
// reported as a single pass/fail line.  The process exits nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <vector>

#include "ainfell/addition.hpp"
#include "ainfell/dg_families.hpp"
#include "ainfell/homotopy.hpp"
#include "ainfell/hodge.hpp"
#include "ainfell/oracle.hpp"
#include "ainfell/products.hpp"
#include "ainfell/residuals.hpp"
#include "ainfell/transfer.hpp"
#include "ainfell/verify.hpp"

using namespace ainfell;
using C = std::complex<double>;

namespace {

int failures = 0;

void report(int idx, const char* what, double value, double tol, bool strict_zero = false) {
    const bool ok = strict_zero ? (value == 0.0) : (value < tol);
    if (!ok) ++failures;
    std::printf("[%s] %2d. %-58s %.3e (tol %.1e)\n", ok ? "PASS" : "FAIL", idx, what, value, tol);
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    const auto t_start = std::chrono::steady_clock::now();

    // 1. transferred structures satisfy the constraint; Q = 0 kills the
    //    higher products exactly
    {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            auto a = random_dg_algebra(seed);
            auto h = hodge_data(a);
            worst = std::max(worst, ainf_residual(transfer(a, h, 4)));
        }
        report(1, "transfer constraint, 100 algebras, K=4", worst, 1e-10);

        auto a = heisenberg_ce(Cx(0.9, 0.4)).build();
        DgAlgebra z(a.basis, a.raw_mult(), MatC::Zero(a.dim(), a.dim()),
                    MatC::Identity(a.dim(), a.dim()));
        auto S = transfer(z, hodge_data(z), 4);
        report(1, "Q = 0 gives m3 = m4 = 0 exactly", S.m[2].max_abs() + S.m[3].max_abs(), 0.0, true);
        std::printf("       criterion 1 runtime %.1fs (limit 60s)\n", seconds_since(t0));
        if (seconds_since(t0) > 60.0) ++failures;
    }

    // 2. the inclusion with components Q lambda_n is a morphism
    {
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            auto a = random_dg_algebra(seed);
            auto h = hodge_data(a);
            auto f = inclusion_morphism(a, h, 4);
            worst = std::max(worst,
                             ainf_morphism_residual(f, transfer(a, h, 4), as_ainf_structure(a, 4)));
        }
        report(2, "transferred inclusion morphism residual", worst, 1e-9);
    }

    // 3. cyclic symmetry: finite models at n = 2,3,4; curve at n = 2,3;
    //    adjointness lemma
    {
        double pre = 0.0, worst = 0.0;
        for (double lam : {1.0, 1.45, 2.2}) {
            auto model = mode_pair_model({lam}, true);
            auto a = model.builder.build(MatC::Identity(16, 16));
            auto h = hodge_data(a);
            const MatC P = model.builder.pairing_matrix(a, model.top_mask);
            for (int n = 2; n <= 4; ++n) {
                auto r = pairing_cyclic_residual(a, h, P, n);
                pre = std::max(pre, r.precondition_residual);
                if (!r.precondition_ok) pre = std::max(pre, 1.0);
                worst = std::max(worst, r.residual);
            }
        }
        {
            auto model = mode_pair_model({1.0, 1.0}, true);
            auto a = model.builder.build(MatC::Identity(64, 64));
            auto h = hodge_data(a);
            const MatC P = model.builder.pairing_matrix(a, model.top_mask);
            for (int n = 2; n <= 3; ++n) {
                auto r = pairing_cyclic_residual(a, h, P, n);
                pre = std::max(pre, r.precondition_residual);
                worst = std::max(worst, r.residual);
            }
        }
        report(3, "Q-adjointness precondition on engineered pairings", pre, 1e-12);
        report(3, "cyclic pairing identity, n = 2,3,4", worst, 1e-10);

        const int N = 256, M = 64;
        const Modulus tau(C(0.0, 1.0));
        const LatticeCoord u = LatticeCoord::from_coords(0.23, 0.31, tau);
        const LatticeCoord v = LatticeCoord::from_coords(0.12, -0.17, tau);
        const double c2 = std::max(serre_cyclic_n2(1, 1, 0, 0, 0, u, v, tau, N),
                                   serre_cyclic_n2(2, 1, 1, 0, 1, u, v, tau, N));
        report(3, "curve cyclic symmetry at n = 2", c2, 1e-6);
        TripleProductQuery q;
        q.k = 2;
        q.l = 1;
        q.b = 1;
        q.tau = tau;
        q.u = u;
        q.v = v;
        double c3 = serre_cyclic_n3(q, 0, N, M);
        TripleProductQuery q11;
        q11.tau = tau;
        q11.u = u;
        q11.v = v;
        c3 = std::max(c3, serre_cyclic_n3(q11, 0, N, M));
        report(3, "curve cyclic symmetry at n = 3", c3, 1e-6);

        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> ur(-1.0, 1.0);
        auto rnd = [&](const LatticeCoord& tw, int p, int qd) {
            GridSection s = make_section(128, 0, tw, tau, p, qd);
            for (long long m = -2; m <= 2; ++m)
                for (long long n = -2; n <= 2; ++n) {
                    const C cmn(ur(rng), ur(rng));
                    const auto mode = sample_mode(tw, m, n, tau, 128);
                    for (std::size_t i = 0; i < s.samples.size(); ++i)
                        s.samples[i] += cmn * mode.samples[i];
                }
            return s;
        };
        const LatticeCoord mu = -u;
        const double lem = std::max(lemma_adjoint_residual(rnd(u, 0, 1), rnd(mu, 1, 1), 32),
                                    lemma_adjoint_residual(rnd(u, 1, 1), rnd(mu, 0, 1), 32));
        report(3, "adjointness lemma on the curve", lem, 1e-7);
    }

    // 4. oracle equivalence at N = 256, M = 64; also adjudicates the two
    //    lattice-sum conventions
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> ur(0.15, 0.45);
        std::uniform_real_distribution<double> uv(-0.3, 0.3);
        double agree = 0.0, conv = 0.0;
        for (const C tv : {C(0.0, 1.0), C(0.0, 2.0), C(0.3, 1.1)}) {
            for (auto [k, l] : {std::pair<long long, long long>{1, 1}, {2, 1}, {2, 3}}) {
                for (int i = 0; i < 5; ++i) {
                    TripleProductQuery q;
                    q.k = k;
                    q.l = l;
                    q.tau = Modulus(tv);
                    q.a = (long long)(rng() % (unsigned long long)k);
                    q.b = (long long)(rng() % (unsigned long long)k);
                    q.c = (long long)(rng() % (unsigned long long)l);
                    q.d = (long long)(rng() % (unsigned long long)l);
                    q.u = LatticeCoord::from_coords(ur(rng), ur(rng), q.tau);
                    q.v = LatticeCoord::from_coords(uv(rng), uv(rng), q.tau);
                    const C closed = m3_holomorphic(q);
                    const C grid = m3_oracle(q, 256, 64);
                    agree = std::max(agree, std::abs(closed - grid) / std::max(1e-3, std::abs(closed)));
                    const C alt = m3_holomorphic(q, {}, GammaConvention::coefficient_product);
                    conv = std::max(conv, std::abs(closed - alt) / std::max(1e-3, std::abs(closed)));
                }
            }
        }
        report(4, "oracle vs closed form, 45 draws, N=256 M=64", agree, 1e-6);
        report(4, "lattice-sum conventions coincide (frozen: displayed)", conv, 1e-9);
        std::printf("       criterion 4 runtime %.1fs (limit 300s)\n", seconds_since(t0));
        if (seconds_since(t0) > 300.0) ++failures;
    }

    // 5. periodicity relations
    {
        VerifyOptions o;
        o.seed = 5;
        o.draws = 7; // 3 configurations x 7 draws > 20 draws
        double per12 = 0.0, per56 = 0.0;
        for (const auto& r : suite_periodicity(o)) {
            if (r.name.rfind("per1", 0) == 0 || r.name.rfind("per2", 0) == 0)
                per12 = std::max(per12, r.residual);
            else
                per56 = std::max(per56, r.residual);
        }
        report(5, "per1, per2 for G and F", per12, 1e-8);
        report(5, "per5, per6 for H = G - F", per56, 1e-7);
    }

    // 6. residues at u = 0 via the four-point contour average at |u| = 1e-3
    {
        VerifyOptions o;
        double g = 0, f = 0, h = 0;
        for (const auto& r : suite_residue(o)) {
            if (r.name == "residue-G(u->0)") g = r.residual;
            if (r.name == "residue-F(u->0)") f = r.residual;
            if (r.name == "residue-H-regular") h = r.residual;
        }
        report(6, "residue of G equals 1 at |u| = 1e-3", g, 1e-4);
        report(6, "residue of F equals 1 at |u| = 1e-3", f, 1e-4);
        report(6, "u (G - F) vanishes at |u| = 1e-3", h, 1e-5);
    }

    // 7. theta addition formula over 20 random draws
    {
        VerifyOptions o;
        o.seed = 7;
        report(7, "theta addition formula, 20 draws", suite_theta_addition(o)[0].residual, 1e-9);
    }

    // 8. homotopy fit and the n2 identity
    {
        const Modulus tau(C(0, 1));
        double fitres = 0.0, fiber = 0.0, endres = 0.0;
        for (auto [k, l] : {std::pair<long long, long long>{1, 1}, {2, 1}}) {
            const long long a = k - 1;
            const auto fits =
                homotopy_fit_all_d(k, l, a, 0.3, 0.2, tau, homotopy_u_samples(k, l, tau, 12, 8));
            for (const auto& fit : fits) {
                fitres = std::max(fitres, fit.fit_residual);
                fiber = std::max(fiber, fit.fiber_consistency);
            }
            for (const auto& u : homotopy_u_samples(k, l, tau, 3, 800))
                endres = std::max(endres, n2_end_to_end_residual(k, l, a, 0, 0, u, fits, tau));
        }
        report(8, "difference-expansion least-squares residual", fitres, 1e-8);
        report(8, "coefficient constancy along phi3 fibers", fiber, 1e-7);
        report(8, "m3 - m3' = n2(alpha, beta1 beta2)", endres, 1e-7);
    }

    // 9. oracle antisymmetry
    {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> ur(0.15, 0.45);
        double anti = 0.0;
        for (auto [k, l] : {std::pair<long long, long long>{1, 1}, {2, 1}}) {
            TripleProductQuery q;
            q.k = k;
            q.l = l;
            q.tau = Modulus(C(0, 1));
            q.b = k - 1;
            q.u = LatticeCoord::from_coords(ur(rng), ur(rng), q.tau);
            q.v = LatticeCoord::from_coords(ur(rng) - 0.3, ur(rng) - 0.3, q.tau);
            const auto fwd = m3_oracle_coeffs(q, 256, 64);
            const auto rev = m3_oracle_reversed(q, 256, 64);
            for (std::size_t d = 0; d < fwd.size(); ++d)
                anti = std::max(anti, std::abs(rev[d] + fwd[d]));
        }
        report(9, "oracle antisymmetry m3(b2,b1,a) = -m3(a,b1,b2)", anti, 1e-7);
    }

    // 10. numerical robustness: grid, mode cutoff, theta term counts
    {
        TripleProductQuery q;
        q.k = 2;
        q.l = 1;
        q.b = 1;
        q.tau = Modulus(C(0, 1));
        q.u = LatticeCoord::from_coords(0.31, 0.27, q.tau);
        q.v = LatticeCoord::from_coords(0.12, -0.08, q.tau);
        const C base = m3_oracle(q, 256, 64);
        const double rob = std::max(std::abs(m3_oracle(q, 512, 64) - base),
                                    std::abs(m3_oracle(q, 256, 128) - base));
        report(10, "doubling grid N and cutoff M", rob, 1e-8);

        // doubling the certified theta window changes values by less than eps
        double dtheta = 0.0;
        const TruncationPolicy pol;
        for (int i = 0; i < 10; ++i) {
            const C tau(0.1 * i - 0.4, 1.0 + 0.07 * i);
            const C x(0.3 + 0.05 * i, 0.2 - 0.04 * i);
            const auto e = theta_eval<double>(x, tau, pol);
            C wide(0, 0);
            const C ipi(0, std::numbers::pi);
            for (int n = -e.terms_used; n <= e.terms_used; ++n)
                wide += std::exp(ipi * tau * double(n) * double(n) + 2.0 * ipi * double(n) * x);
            dtheta = std::max(dtheta, std::abs(e.value - wide));
        }
        report(10, "doubling theta term counts", dtheta, pol.eps);
    }

    std::printf("acceptance total runtime %.1fs, %d failure(s)\n", seconds_since(t_start), failures);
    return failures == 0 ? 0 : 1;
}
