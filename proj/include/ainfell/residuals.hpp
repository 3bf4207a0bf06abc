#pragma once

#include <functional>
#include <vector>

#include "ainfell/transfer.hpp"

namespace ainfell {

namespace detail {

inline void for_each_tuple(int dim, int arity, const std::function<void(const int*)>& fn) {
    std::vector<int> idx(std::size_t(arity), 0);
    const std::size_t total = SmallTensor::ipow(dim, arity);
    for (std::size_t f = 0; f < total; ++f) {
        std::size_t r = f;
        for (int i = arity - 1; i >= 0; --i) {
            idx[std::size_t(i)] = int(r % std::size_t(dim));
            r /= std::size_t(dim);
        }
        fn(idx.data());
    }
}

} // namespace detail

// Max-norm residual of the constraint
//   sum_{k+l=n+1} sum_{j=0}^{k-1} (-1)^(l(~a_1+..+~a_j) + j(l-1) + (k-1)l)
//     m_k(a_1,..,a_j, m_l(a_{j+1},..,a_{j+l}), .., a_n) = 0
// over all basis tuples of arity n <= K.
inline double ainf_residual(const AinfStructure& S) {
    const int nb = S.dim();
    const int K = S.K();
    double worst = 0.0;
    for (int n = 1; n <= K; ++n) {
        detail::for_each_tuple(nb, n, [&](const int* idx) {
            VecC total = VecC::Zero(nb);
            for (int l = 1; l <= n; ++l) {
                const int k = n + 1 - l;
                if (k < 1 || k > K || l > K) continue;
                for (int j = 0; j + l <= n; ++j) {
                    const VecC inner = S.m[std::size_t(l - 1)].at(idx + j);
                    std::vector<int> outer(idx, idx + n);
                    outer.erase(outer.begin() + j, outer.begin() + j + l);
                    outer.insert(outer.begin() + j, 0);
                    int ps = 0;
                    for (int i = 0; i < j; ++i) ps += S.parity(idx[i]);
                    const int ex = l * ps + j * (l - 1) + (k - 1) * l;
                    const double sg = (ex % 2) ? -1.0 : 1.0;
                    total += sg * S.m[std::size_t(k - 1)].apply_one_slot(outer.data(), j, inner);
                }
            }
            worst = std::max(worst, total.cwiseAbs().maxCoeff());
        });
    }
    return worst;
}

namespace detail {

inline void compositions(int n, int parts, std::vector<int>& cur,
                         const std::function<void(const std::vector<int>&)>& fn) {
    if (parts == 1) {
        if (n >= 1) {
            cur.push_back(n);
            fn(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = 1; first + parts - 1 <= n; ++first) {
        cur.push_back(first);
        compositions(n - first, parts - 1, cur, fn);
        cur.pop_back();
    }
}

} // namespace detail

// Residual of the two-sided morphism equation for f: source -> target,
//   sum_{r+s+t=n} (-1)^(r+st) f_{r+1+t}(a_1..a_r, m_s(a_{r+1}..a_{r+s}), ..)
//     = sum_i sum_{k_1+..+k_i=n} (-1)^(sum_{u<v} (k_u-1) k_v)
//           m_i(f_{k_1}(a_1..), .., f_{k_i}(..a_n)),
// plus the Koszul signs of the odd maps: the inner m_s (degree 2-s)
// contributes (-1)^(s(~a_1+..+~a_r)), and the block f_{k_v} contributes
// (-1)^((k_v-1) K_{v-1} (~a_1+..+~a_{K_{v-1}})) with K_{v-1} = k_1+..+k_{v-1}.
// The convention is pinned by the identity morphism, the arity-3 homotopy
// relation, and the transferred inclusion.  Checked for basis tuples of
// arity up to min(K_f, K_source).
inline double ainf_morphism_residual(const AinfMorphism& f, const AinfStructure& src,
                                     const AinfStructure& tgt) {
    const int nb = src.dim();
    const int Kf = f.K();
    const int n_max = std::min(Kf, src.K());

    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        detail::for_each_tuple(nb, n, [&](const int* idx) {
            VecC lhs = VecC::Zero(tgt.dim());
            for (int s = 1; s <= n; ++s) {
                if (s > src.K()) continue;
                for (int r = 0; r + s <= n; ++r) {
                    const int t = n - r - s;
                    const int u = r + 1 + t;
                    if (u > Kf) continue;
                    const VecC inner = src.m[std::size_t(s - 1)].at(idx + r);
                    std::vector<int> outer(idx, idx + n);
                    outer.erase(outer.begin() + r, outer.begin() + r + s);
                    outer.insert(outer.begin() + r, 0);
                    int ps = 0;
                    for (int i = 0; i < r; ++i) ps += src.parity(idx[i]);
                    const int ex = r + s * t + s * ps;
                    const double sg = (ex % 2) ? -1.0 : 1.0;
                    lhs += sg * f.f[std::size_t(u - 1)].apply_one_slot(outer.data(), r, inner);
                }
            }
            VecC rhs = VecC::Zero(tgt.dim());
            for (int i = 1; i <= std::min(n, tgt.K()); ++i) {
                std::vector<int> cur;
                detail::compositions(n, i, cur, [&](const std::vector<int>& ks) {
                    std::vector<VecC> blocks;
                    blocks.reserve(ks.size());
                    int pos = 0;
                    int ex = 0;
                    for (std::size_t v = 0; v < ks.size(); ++v) {
                        const int kv = ks[v];
                        if (kv > Kf) return;
                        if (v > 0) {
                            int pref = 0;
                            for (int i2 = 0; i2 < pos; ++i2) pref += src.parity(idx[i2]);
                            ex += (kv - 1) * pos * pref;
                        }
                        for (std::size_t u2 = 0; u2 < v; ++u2) ex += (ks[u2] - 1) * kv;
                        blocks.push_back(f.f[std::size_t(kv - 1)].at(idx + pos));
                        pos += kv;
                    }
                    const double sg = (((ex % 2) + 2) % 2) ? -1.0 : 1.0;
                    rhs += sg * tgt.m[std::size_t(i - 1)].apply(blocks);
                });
            }
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        });
    }
    return worst;
}

// Residual of the arity-3 homotopy relation
//   m3'(a1,a2,a3) - m3(a1,a2,a3) = (-1)^(~a1) a1 f2(a2,a3) - f2(a1,a2) a3
//                                   - f2(a1 a2, a3) + f2(a1, a2 a3)
// with the common product m2 written as juxtaposition.
inline double homotopy_m3_residual(const SmallTensor& m3, const SmallTensor& m3p,
                                   const SmallTensor& f2, const SmallTensor& m2,
                                   const std::vector<int>& degrees) {
    const int nb = m2.dim_in;
    if (m3.dim_in != nb || m3p.dim_in != nb || f2.dim_in != nb)
        throw algebra_error("homotopy_m3_residual: mismatched bases");
    double worst = 0.0;
    detail::for_each_tuple(nb, 3, [&](const int* idx) {
        const int a1 = idx[0], a2 = idx[1], a3 = idx[2];
        const double s1 = (((degrees[std::size_t(a1)] % 2) + 2) % 2) ? -1.0 : 1.0;
        int pair12[2] = {a1, a2};
        int pair23[2] = {a2, a3};
        VecC rhs = s1 * m2.apply_one_slot(pair12, 1, f2.at(pair23));
        // m2(f2(a1,a2), a3) needs the vector in the first slot
        int slot0[2] = {0, a3};
        rhs -= m2.apply_one_slot(slot0, 0, f2.at(pair12));
        rhs -= f2.apply_one_slot(slot0, 0, m2.at(pair12));
        int slot1[2] = {a1, 0};
        rhs += f2.apply_one_slot(slot1, 1, m2.at(pair23));
        const VecC lhs = m3p.at(idx) - m3.at(idx);
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    });
    return worst;
}

// Least-squares f2 for the relation above, given both m3 tensors and the
// common product.
inline SmallTensor solve_homotopy_f2(const SmallTensor& m3, const SmallTensor& m3p,
                                     const SmallTensor& m2, const std::vector<int>& degrees,
                                     double* out_residual = nullptr) {
    const int nb = m2.dim_in;
    const std::size_t nunk = std::size_t(nb) * std::size_t(nb) * std::size_t(nb);
    const std::size_t neq = SmallTensor::ipow(nb, 3) * std::size_t(nb);
    MatC A = MatC::Zero(Eigen::Index(neq), Eigen::Index(nunk));
    VecC rhs = VecC::Zero(Eigen::Index(neq));
    auto unk = [&](int i, int j, int o) {
        return Eigen::Index((std::size_t(i) * std::size_t(nb) + std::size_t(j)) * std::size_t(nb) + std::size_t(o));
    };
    std::size_t eq_base = 0;
    detail::for_each_tuple(nb, 3, [&](const int* idx) {
        const int a1 = idx[0], a2 = idx[1], a3 = idx[2];
        const double s1 = (((degrees[std::size_t(a1)] % 2) + 2) % 2) ? -1.0 : 1.0;
        const VecC diff = m3p.at(idx) - m3.at(idx);
        for (int comp = 0; comp < nb; ++comp) {
            const Eigen::Index row = Eigen::Index(eq_base) + comp;
            rhs[row] = diff[comp];
            for (int o = 0; o < nb; ++o) {
                int io[2] = {a1, o};
                A(row, unk(a2, a3, o)) += s1 * m2.at(io)[comp];
                int oi[2] = {o, a3};
                A(row, unk(a1, a2, o)) -= m2.at(oi)[comp];
            }
            int p12[2] = {a1, a2};
            int p23[2] = {a2, a3};
            const VecC& m12 = m2.at(p12);
            const VecC& m23 = m2.at(p23);
            for (int s = 0; s < nb; ++s) {
                if (m12[s] != Cx(0, 0)) A(row, unk(s, a3, comp)) -= m12[s];
                if (m23[s] != Cx(0, 0)) A(row, unk(a1, s, comp)) += m23[s];
            }
        }
        eq_base += std::size_t(nb);
    });
    const VecC sol = A.colPivHouseholderQr().solve(rhs);
    SmallTensor f2(2, nb, nb);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
            int idx[2] = {i, j};
            for (int o = 0; o < nb; ++o) f2.at(idx)[o] = sol[unk(i, j, o)];
        }
    if (out_residual) *out_residual = (A * sol - rhs).cwiseAbs().maxCoeff();
    return f2;
}

// Cyclic-symmetry residual for the transferred products against a bilinear
// pairing P on the algebra:
//   <m_n(a_1..a_n), a_{n+1}> = (-1)^(n(~a_1+1)) <a_1, m_n(a_2..a_{n+1})>
// for harmonic arguments.  The adjointness precondition
//   <Q x, y> = (-1)^(~x) <x, Q y>
// is checked first; the theorem is not expected to hold without it.
struct CyclicResult {
    bool precondition_ok = false;
    double precondition_residual = 0.0;
    double pairing_symmetry_residual = 0.0;
    double residual = 0.0;
};

inline CyclicResult pairing_cyclic_residual(const DgAlgebra& a, const HodgeData& h, const MatC& P,
                                            int n, double precondition_tol = 1e-12) {
    const int na = a.dim();
    CyclicResult res;

    double padj = 0.0;
    for (int i = 0; i < na; ++i) {
        const double si = a.basis.parity(i) ? -1.0 : 1.0;
        for (int j = 0; j < na; ++j) {
            const Cx lhs = (h.Q.col(i).transpose() * P * VecC::Unit(na, j)).value();
            const Cx rhs = si * (VecC::Unit(na, i).transpose() * P * h.Q.col(j)).value();
            padj = std::max(padj, std::abs(lhs - rhs));
            const double sij = (a.basis.parity(i) * a.basis.parity(j)) ? -1.0 : 1.0;
            res.pairing_symmetry_residual =
                std::max(res.pairing_symmetry_residual, std::abs(P(i, j) - sij * P(j, i)));
        }
    }
    res.precondition_residual = padj;
    res.precondition_ok = padj <= precondition_tol;
    if (!res.precondition_ok) return res;

    const AinfStructure S = transfer(a, h, n);
    const SmallTensor& mn = S.m[std::size_t(n - 1)];
    const int nb = S.dim();
    auto pair = [&](const VecC& x, const VecC& y) { return (x.transpose() * P * y).value(); };

    double worst = 0.0;
    detail::for_each_tuple(nb, n + 1, [&](const int* idx) {
        const VecC left = h.harmonic * mn.at(idx);
        const Cx lhs = pair(left, h.harmonic.col(idx[n]));
        const VecC right = h.harmonic * mn.at(idx + 1);
        const int p1 = ((S.degrees[std::size_t(idx[0])] % 2) + 2) % 2;
        const double sg = ((n * (p1 + 1)) % 2) ? -1.0 : 1.0;
        const Cx rhs = sg * pair(h.harmonic.col(idx[0]), right);
        worst = std::max(worst, std::abs(lhs - rhs));
    });
    res.residual = worst;
    return res;
}

} // namespace ainfell
