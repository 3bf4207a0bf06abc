#pragma once

#include <map>

#include "ainfell/grid.hpp"
#include "ainfell/products.hpp"

namespace ainfell {

// Fourier modes of a section of L(0,u): f = sum c_{m,n} phi_{u,m,n} with
// phi_{u,m,n} = exp(2 pi i (m x1 + (n-u) x2)).  Multiplying by
// exp(2 pi i u x2) makes the section doubly periodic, so the coefficients
// come out of a plain 2D transform.  Frequencies fold to (-N/2, N/2].
struct ModeGrid {
    int N = 0;
    LatticeCoord u;
    Modulus tau{std::complex<double>(0, 1)};
    int p = 0, q = 0;
    std::vector<std::complex<double>> coeffs; // same layout as the grid

    static int fold(int j, int N) { return j <= N / 2 ? j : j - N; }

    std::complex<double> coeff(long long m, long long n) const {
        const int jm = int(((m % N) + N) % N);
        const int jn = int(((n % N) + N) % N);
        if (fold(jm, N) != m || fold(jn, N) != n) return {0.0, 0.0};
        return coeffs[std::size_t(jm) + std::size_t(N) * std::size_t(jn)];
    }
};

inline ModeGrid mode_expand(const GridSection& f) {
    if (f.k != 0) throw grid_error("mode_expand: section must live on a degree-0 slot");
    ModeGrid m;
    m.N = f.N;
    m.u = f.u;
    m.tau = f.tau;
    m.p = f.p;
    m.q = f.q;
    m.coeffs = f.samples;
    const std::complex<double> tpi(0.0, 2.0 * std::numbers::pi);
    for (int i2 = 0; i2 < f.N; ++i2) {
        const std::complex<double> twist = std::exp(tpi * f.u.value * (double(i2) / f.N));
        for (int i1 = 0; i1 < f.N; ++i1)
            m.coeffs[std::size_t(i1) + std::size_t(f.N) * std::size_t(i2)] *= twist;
    }
    fft2_inplace(m.coeffs, std::size_t(f.N), false);
    const double s = 1.0 / (double(f.N) * double(f.N));
    for (auto& c : m.coeffs) c *= s;
    return m;
}

inline GridSection mode_synthesize(const ModeGrid& m) {
    GridSection f = make_section(m.N, 0, m.u, m.tau, m.p, m.q);
    f.samples = m.coeffs;
    fft2_inplace(f.samples, std::size_t(m.N), true);
    for (auto& c : f.samples) c *= double(m.N) * double(m.N);
    const std::complex<double> tpi(0.0, 2.0 * std::numbers::pi);
    for (int i2 = 0; i2 < m.N; ++i2) {
        const std::complex<double> twist = std::exp(-tpi * m.u.value * (double(i2) / m.N));
        for (int i1 = 0; i1 < m.N; ++i1)
            f.samples[std::size_t(i1) + std::size_t(m.N) * std::size_t(i2)] *= twist;
    }
    return f;
}

// largest coefficient magnitude outside the |m|,|n| <= M window
inline double mode_tail(const ModeGrid& m, int M) {
    double worst = 0.0;
    for (int j2 = 0; j2 < m.N; ++j2)
        for (int j1 = 0; j1 < m.N; ++j1) {
            const int mm = ModeGrid::fold(j1, m.N), nn = ModeGrid::fold(j2, m.N);
            if (std::abs(mm) <= M && std::abs(nn) <= M) continue;
            worst = std::max(worst,
                             std::abs(m.coeffs[std::size_t(j1) + std::size_t(m.N) * std::size_t(j2)]));
        }
    return worst;
}

// dbar phi_{u,m,n} = (pi/t)(m tau - n + u) phi_{u,m,n} dxbar, with the sign
// (-1)^p from moving dxbar past dx when the section carries a dx factor.
inline std::complex<double> dbar_eigenvalue(long long m, long long n, const LatticeCoord& u,
                                            const Modulus& tau) {
    return std::numbers::pi / tau.t * (double(m) * tau.tau - double(n) + u.value);
}

inline GridSection dbar_apply_L0u(const GridSection& f) {
    if (f.q != 0) throw grid_error("dbar_apply: section already a dxbar-form");
    ModeGrid m = mode_expand(f);
    const double sg = (f.p % 2) ? -1.0 : 1.0;
    for (int j2 = 0; j2 < m.N; ++j2)
        for (int j1 = 0; j1 < m.N; ++j1) {
            const long long mm = ModeGrid::fold(j1, m.N), nn = ModeGrid::fold(j2, m.N);
            m.coeffs[std::size_t(j1) + std::size_t(m.N) * std::size_t(j2)] *=
                sg * dbar_eigenvalue(mm, nn, f.u, f.tau);
        }
    m.q = 1;
    return mode_synthesize(m);
}

// Unique preimage of a dxbar-form under dbar on L(0,u) (u off the lattice),
// mode cutoff M; the discarded tail of the right-hand side is checked.
inline GridSection dbar_inverse_L0u(const GridSection& rhs, int M, double tail_tol = 1e-9) {
    if (rhs.q != 1) throw grid_error("dbar_inverse: right-hand side must be a dxbar-form");
    if (lattice_distance(rhs.u.value, rhs.tau) < 1e-8)
        throw grid_error("dbar_inverse: twist on or near the lattice (zero mode)");
    ModeGrid m = mode_expand(rhs);
    const double tail = mode_tail(m, M);
    if (tail > tail_tol) throw grid_error("dbar_inverse: rhs tail above tolerance; increase M or N");
    const double sg = (rhs.p % 2) ? -1.0 : 1.0;
    for (int j2 = 0; j2 < m.N; ++j2)
        for (int j1 = 0; j1 < m.N; ++j1) {
            auto& c = m.coeffs[std::size_t(j1) + std::size_t(m.N) * std::size_t(j2)];
            const long long mm = ModeGrid::fold(j1, m.N), nn = ModeGrid::fold(j2, m.N);
            if (std::abs(mm) > M || std::abs(nn) > M) {
                c = {0.0, 0.0};
            } else {
                c *= sg / dbar_eigenvalue(mm, nn, rhs.u, rhs.tau);
            }
        }
    m.q = 0;
    return mode_synthesize(m);
}

// Q on forms valued in trivial-degree slots: invert dbar mode-wise.
inline GridSection q_apply_L0u(const GridSection& f, int M) { return dbar_inverse_L0u(f, M); }

// Coefficients of the orthogonal projection onto the harmonic theta basis of
// H^0(L(l,w)): <f, theta_d> / ||theta_d||^2.
inline std::vector<std::complex<double>> project_h0(const GridSection& f,
                                                    const TruncationPolicy& pol = {}) {
    if (f.k <= 0) throw grid_error("project_h0: slot degree must be positive");
    std::vector<std::complex<double>> out(std::size_t(f.k));
    const double norm_sq = h0_basis_norm_sq(f.k, f.u.c2, f.tau);
    for (long long d = 0; d < f.k; ++d) {
        const GridSection basis = sample_h0_theta(f.k, d, f.u, f.tau, f.N, pol);
        out[std::size_t(d)] = quad_inner_product(f, basis) / norm_sq;
    }
    return out;
}

// m3(alpha, beta1, beta2) for the configuration
//   alpha in H^1(L(-k,0)) normalized, beta1 = theta_{b/k}(kx+u),
//   beta2 = theta_{c/l}(lx+v): pointwise product, dbar inversion on L(0,u),
//   pointwise product, projection onto the theta basis of H^0(L(l,u+v)).
// Returns the coefficient vector over d in Z/lZ.
inline std::vector<std::complex<double>> m3_oracle_coeffs(const TripleProductQuery& qy, int N,
                                                          int M, const TruncationPolicy& pol = {}) {
    qy.validate();
    const GridSection alpha = sample_h1_form(qy.k, qy.a, LatticeCoord{}, qy.tau, N, true, pol);
    const GridSection beta1 = sample_h0_theta(qy.k, qy.b, qy.u, qy.tau, N, pol);
    const GridSection beta2 = sample_h0_theta(qy.l, qy.c, qy.v, qy.tau, N, pol);

    const GridSection ab = wedge(alpha, beta1); // (0,1)-form valued in L(0,u)
    const GridSection Fx = dbar_inverse_L0u(ab, M);
    GridSection prod = wedge(Fx, beta2); // section of L(l, u+v)
    // the lattice coordinates of the product twist come from the summands
    prod.u = qy.w();
    return project_h0(prod, pol);
}

inline std::complex<double> m3_oracle(const TripleProductQuery& qy, int N, int M,
                                      const TruncationPolicy& pol = {}) {
    return m3_oracle_coeffs(qy, N, M, pol)[std::size_t(qy.d)];
}

// m3(beta2, beta1, alpha) computed independently as -pr(beta2 dbar^{-1}(beta1 alpha));
// the general antisymmetry test compares this against -m3(alpha, beta1, beta2).
inline std::vector<std::complex<double>> m3_oracle_reversed(const TripleProductQuery& qy, int N,
                                                            int M, const TruncationPolicy& pol = {}) {
    qy.validate();
    const GridSection alpha = sample_h1_form(qy.k, qy.a, LatticeCoord{}, qy.tau, N, true, pol);
    const GridSection beta1 = sample_h0_theta(qy.k, qy.b, qy.u, qy.tau, N, pol);
    const GridSection beta2 = sample_h0_theta(qy.l, qy.c, qy.v, qy.tau, N, pol);

    const GridSection ba = wedge(beta1, alpha);
    const GridSection Fx = dbar_inverse_L0u(ba, M);
    GridSection prod = wedge(beta2, Fx);
    prod.u = qy.w();
    auto out = project_h0(prod, pol);
    for (auto& c : out) c = -c;
    return out;
}

// Serre pairing <alpha, beta> = int alpha ^ beta of sections in dual slots.
inline std::complex<double> serre_pair(const GridSection& a, const GridSection& b) {
    if (a.k + b.k != 0 || std::abs(a.u.value + b.u.value) > 1e-9)
        throw grid_error("serre_pair: slots are not dual");
    return integrate_top(wedge(a, b));
}

// Projection coefficients onto the harmonic (p,1)-forms of a negative slot
// (k < 0, twist -w): the basis elements are the conjugate-theta forms of
// L(-k, w) with the metric weight, optionally carrying dx.
inline std::vector<std::complex<double>> project_h1(const GridSection& f, const LatticeCoord& w,
                                                    const TruncationPolicy& pol = {}) {
    if (f.k >= 0 || f.q != 1) throw grid_error("project_h1: expects a dxbar-form on a negative slot");
    const long long kk = -f.k;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(kk), std::complex<double>{});
    const double norm_sq = h0_basis_norm_sq(kk, w.c2, f.tau);
    for (long long e = 0; e < kk; ++e) {
        GridSection basis = sample_h1_form(kk, e, w, f.tau, f.N, false, pol);
        if (f.p == 1) basis = with_dx(std::move(basis));
        out[std::size_t(e)] = quad_inner_product(f, basis) / norm_sq;
    }
    return out;
}

// Projection onto harmonic (1,0)-forms theta_{a/k}(kx+w) dx of a positive slot.
inline std::vector<std::complex<double>> project_h10(const GridSection& f, const TruncationPolicy& pol = {}) {
    if (f.k <= 0 || f.p != 1 || f.q != 0) throw grid_error("project_h10: expects a dx-form on a positive slot");
    std::vector<std::complex<double>> out(std::size_t(f.k));
    const double norm_sq = h0_basis_norm_sq(f.k, f.u.c2, f.tau);
    for (long long e = 0; e < f.k; ++e) {
        const GridSection basis = with_dx(sample_h0_theta(f.k, e, f.u, f.tau, f.N, pol));
        out[std::size_t(e)] = quad_inner_product(f, basis) / norm_sq;
    }
    return out;
}

// <Q a ^ b> = (-1)^(~a) <a ^ Q b> for forms valued in dual L(0,u)-slots,
// parity graded by total form degree.
inline double lemma_adjoint_residual(const GridSection& a, const GridSection& b, int M) {
    const GridSection qa = q_apply_L0u(a, M);
    const GridSection qb = q_apply_L0u(b, M);
    const std::complex<double> lhs = integrate_top(wedge(qa, b));
    const double par = ((a.p + a.q) % 2) ? -1.0 : 1.0;
    const std::complex<double> rhs = par * integrate_top(wedge(a, qb));
    return std::abs(lhs - rhs);
}

// Cyclic symmetry of the product pairing at n = 2:
//   <pr(a1 a2), a3> = <a1, pr(a2 a3)>
// for a1 = theta_{b/k}(kx+u), a2 the harmonic (0,1)-form on L(-(k+j), -(u+v)),
// a3 = theta_{c/j}(jx+v) dx.
inline double serre_cyclic_n2(long long k, long long j, long long b, long long c, long long e,
                              const LatticeCoord& u, const LatticeCoord& v, const Modulus& tau,
                              int N, const TruncationPolicy& pol = {}) {
    const LatticeCoord uv = u + v;
    const GridSection a1 = sample_h0_theta(k, b, u, tau, N, pol);
    const GridSection a2 = sample_h1_form(k + j, e, uv, tau, N, false, pol);
    const GridSection a3 = with_dx(sample_h0_theta(j, c, v, tau, N, pol));

    // <pr(a1 a2), a3>: project onto the harmonic (0,1)-forms of L(-j,-v)
    const GridSection m12 = wedge(a1, a2);
    const auto c12 = project_h1(m12, v, pol);
    std::complex<double> lhs(0, 0);
    for (long long ee = 0; ee < j; ++ee) {
        const GridSection be = sample_h1_form(j, ee, v, tau, N, false, pol);
        lhs += c12[std::size_t(ee)] * serre_pair(be, a3);
    }

    // <a1, pr(a2 a3)>: project onto the harmonic (1,1)-forms of L(-k,-u)
    const GridSection m23 = wedge(a2, a3);
    const auto c23 = project_h1(m23, u, pol);
    std::complex<double> rhs(0, 0);
    for (long long ee = 0; ee < k; ++ee) {
        const GridSection be = with_dx(sample_h1_form(k, ee, u, tau, N, false, pol));
        rhs += c23[std::size_t(ee)] * serre_pair(a1, be);
    }
    return std::abs(lhs - rhs);
}

// Cyclic symmetry at n = 3 for the triple-product configuration: with
// alpha in H^1(L(-k,0)) (normalized), beta1, beta2 holomorphic and
// delta = conj-theta (1,1)-form on L(-l, -(u+v)),
//   <m3(alpha,beta1,beta2), delta> = <alpha, m3(beta1,beta2,delta)>
// (the sign (-1)^(n(~a_1+1)) is +1 since alpha is odd).  The right m3 is
// pr(Q(beta1 beta2) delta - beta1 Q(beta2 delta)) with the first term
// vanishing on the holomorphic product.
inline double serre_cyclic_n3(const TripleProductQuery& qy, long long e, int N, int M,
                              const TruncationPolicy& pol = {}) {
    const LatticeCoord w = qy.w();
    const auto coeffs = m3_oracle_coeffs(qy, N, M, pol);
    const GridSection delta = with_dx(sample_h1_form(qy.l, e, w, qy.tau, N, false, pol));
    std::complex<double> lhs(0, 0);
    for (long long d = 0; d < qy.l; ++d) {
        const GridSection td = sample_h0_theta(qy.l, d, w, qy.tau, N, pol);
        lhs += coeffs[std::size_t(d)] * serre_pair(td, delta);
    }

    const GridSection alpha = sample_h1_form(qy.k, qy.a, LatticeCoord{}, qy.tau, N, true, pol);
    const GridSection beta1 = sample_h0_theta(qy.k, qy.b, qy.u, qy.tau, N, pol);
    const GridSection beta2 = sample_h0_theta(qy.l, qy.c, qy.v, qy.tau, N, pol);
    GridSection bd = wedge(beta2, delta); // (1,1) on L(0,-u)
    {
        LatticeCoord mu = -qy.u;
        bd.u = mu;
    }
    const GridSection qbd = q_apply_L0u(bd, M); // (1,0) on L(0,-u)
    GridSection m3r = wedge(beta1, qbd);        // (1,0) on L(k,0)
    m3r.u = LatticeCoord{};
    const auto cr = project_h10(m3r, pol);
    std::complex<double> rhs(0, 0);
    for (long long a2 = 0; a2 < qy.k; ++a2) {
        const GridSection ba = with_dx(sample_h0_theta(qy.k, a2, LatticeCoord{}, qy.tau, N, pol));
        rhs += -cr[std::size_t(a2)] * serre_pair(alpha, ba);
    }
    return std::abs(lhs - rhs);
}

} // namespace ainfell
