#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "ainfell/graded.hpp"

namespace ainfell {

// Hodge data (G, Q, pr) of a dg-algebra with inner product:
//   Delta = d* d + d d*,  G = pseudo-inverse of Delta,  Q = d* G,
//   pr = 1 - Q d - d Q  (the identity holds exactly by construction;
//   it equals the orthogonal projector onto ker Delta).
struct HodgeData {
    MatC G, Q, pr;
    MatC harmonic;              // columns: orthonormal harmonic basis
    std::vector<int> harmonic_degrees;
};

inline HodgeData hodge_data(const DgAlgebra& a, double kernel_rel_tol = 1e-9) {
    if (!a.inner) throw algebra_error("hodge_data: inner product required");
    const int n = a.dim();

    // degree-orthogonality keeps d* of pure degree -1 and harmonic vectors
    // homogeneous
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((*a.inner)(i, j) != Cx(0, 0) && a.basis.degree(i) != a.basis.degree(j))
                throw algebra_error("hodge_data: inner product must be degree-orthogonal");

    // orthonormal frame: (x,y) = y^H L L^H x, coords x~ = L^H x
    Eigen::LLT<MatC> llt(*a.inner);
    if (llt.info() != Eigen::Success) throw algebra_error("hodge_data: inner product not positive definite");
    const MatC L = llt.matrixL();
    const MatC Lh = L.adjoint();
    const MatC Lh_inv = Lh.inverse();

    const MatC dt = Lh * a.d * Lh_inv;
    const MatC delta = dt.adjoint() * dt + dt * dt.adjoint();

    // Delta preserves degree; solve per degree block so kernel vectors stay
    // homogeneous.
    std::map<int, std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) blocks[a.basis.degree(i)].push_back(i);

    MatC Gt = MatC::Zero(n, n);
    std::vector<VecC> harm;
    std::vector<int> harm_deg;
    const double scale = std::max(1.0, delta.cwiseAbs().maxCoeff());
    for (const auto& [deg, idx] : blocks) {
        const int m = int(idx.size());
        MatC blk(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) blk(r, c) = delta(idx[std::size_t(r)], idx[std::size_t(c)]);
        Eigen::SelfAdjointEigenSolver<MatC> es(blk);
        for (int k = 0; k < m; ++k) {
            const double ev = es.eigenvalues()[k];
            VecC full = VecC::Zero(n);
            for (int r = 0; r < m; ++r) full[idx[std::size_t(r)]] = es.eigenvectors()(r, k);
            if (ev > kernel_rel_tol * scale) {
                Gt += (full * full.adjoint()) / ev;
            } else {
                harm.push_back(full);
                harm_deg.push_back(deg);
            }
        }
    }

    HodgeData h;
    h.G = Lh_inv * Gt * Lh;
    h.Q = Lh_inv * (dt.adjoint() * Gt) * Lh;
    h.pr = MatC::Identity(n, n) - h.Q * a.d - a.d * h.Q;
    h.harmonic = MatC(n, int(harm.size()));
    for (std::size_t k = 0; k < harm.size(); ++k) h.harmonic.col(Eigen::Index(k)) = Lh_inv * harm[k];
    h.harmonic_degrees = std::move(harm_deg);
    return h;
}

// Coordinates of x in the harmonic basis (orthonormal for the algebra inner
// product); x is expected to lie in the harmonic subspace.
inline VecC harmonic_coords(const DgAlgebra& a, const HodgeData& h, const VecC& x) {
    return h.harmonic.adjoint() * (*a.inner) * x;
}

} // namespace ainfell
