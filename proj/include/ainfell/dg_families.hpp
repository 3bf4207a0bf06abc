#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ainfell/graded.hpp"

namespace ainfell {

// Builder for super-commutative monomial algebras: generators with a parity
// and a degree, square-zero, basis indexed by subsets.  Differentials are
// odd derivations given on generators.
class SuperAlgebraBuilder {
  public:
    struct Generator {
        std::string name;
        int parity; // 0 even, 1 odd (sign behavior in products)
        int degree;
    };

    explicit SuperAlgebraBuilder(std::vector<Generator> gens) : gens_(std::move(gens)) {
        const int g = int(gens_.size());
        if (g > 20) throw algebra_error("super algebra: too many generators");
        dim_ = 1 << g;
    }

    int dim() const { return dim_; }
    int basis_degree(int mask) const {
        int d = 0;
        for (int i = 0; i < int(gens_.size()); ++i)
            if (mask & (1 << i)) d += gens_[std::size_t(i)].degree;
        return d;
    }

    // sign of merging ordered monomials a*b; 0 if they share a generator
    int merge_sign(int a, int b) const {
        if (a & b) return 0;
        int sign = 1;
        for (int i = 0; i < int(gens_.size()); ++i) {
            if (!(b & (1 << i)) || !gens_[std::size_t(i)].parity) continue;
            int above = 0;
            for (int j = i + 1; j < int(gens_.size()); ++j)
                if ((a & (1 << j)) && gens_[std::size_t(j)].parity) ++above;
            if (above & 1) sign = -sign;
        }
        return sign;
    }

    // d(generator i) = sum of coeff * monomial; extended as an odd derivation
    void set_d(int gen, const std::vector<std::pair<int, Cx>>& image) { d_gen_[gen] = image; }

    std::string monomial_name(int mask) const {
        if (mask == 0) return "1";
        std::string s;
        for (int i = 0; i < int(gens_.size()); ++i)
            if (mask & (1 << i)) s += gens_[std::size_t(i)].name;
        return s;
    }

    DgAlgebra build(std::optional<MatC> inner = {}) const {
        GradedBasis b;
        for (int m = 0; m < dim_; ++m) b.labels.push_back({monomial_name(m), basis_degree(m)});

        auto mult = DgAlgebra::zero_mult(dim_);
        for (int x = 0; x < dim_; ++x)
            for (int y = 0; y < dim_; ++y) {
                const int s = merge_sign(x, y);
                if (s != 0) mult[std::size_t(x) * std::size_t(dim_) + std::size_t(y)][x | y] = Cx(double(s), 0.0);
            }

        MatC d = MatC::Zero(dim_, dim_);
        for (int m = 0; m < dim_; ++m) {
            // d(g_{i1}..g_{ik}) = sum_j (+-) g_{i1}..d(g_{ij})..g_{ik}
            int prefix_parity = 0;
            for (int i = 0; i < int(gens_.size()); ++i) {
                if (!(m & (1 << i))) continue;
                auto it = d_gen_.find(i);
                if (it != d_gen_.end()) {
                    const int rest = m & ~(1 << i);
                    // split as prefix (generators < i) * g_i * suffix
                    const double sg = (prefix_parity & 1) ? -1.0 : 1.0;
                    for (const auto& [img_mask, coeff] : it->second) {
                        // prefix * img * suffix with the prefix sign
                        const int prefix = rest & ((1 << i) - 1);
                        const int suffix = rest & ~((1 << i) - 1);
                        const int s1 = merge_sign(prefix, img_mask);
                        if (s1 == 0) continue;
                        const int s2 = merge_sign(prefix | img_mask, suffix);
                        if (s2 == 0) continue;
                        d(prefix | img_mask | suffix, m) += sg * double(s1) * double(s2) * coeff;
                    }
                }
                prefix_parity += gens_[std::size_t(i)].parity;
            }
        }
        return DgAlgebra(std::move(b), std::move(mult), std::move(d), std::move(inner));
    }

    // Trace pairing <x, y> = coefficient of the top monomial in x*y.
    MatC pairing_matrix(const DgAlgebra& a, int top_mask) const {
        MatC P = MatC::Zero(dim_, dim_);
        for (int x = 0; x < dim_; ++x)
            for (int y = 0; y < dim_; ++y) P(x, y) = a.mult(x, y)[top_mask];
        return P;
    }

  private:
    std::vector<Generator> gens_;
    int dim_;
    std::map<int, std::vector<std::pair<int, Cx>>> d_gen_;
};

// Chevalley-Eilenberg complex of the Heisenberg-type bracket [x1,x2] = c x3:
// exterior algebra on three odd degree-1 generators with d x3 = c x1 x2.
inline SuperAlgebraBuilder heisenberg_ce(Cx c) {
    SuperAlgebraBuilder b({{"x1", 1, 1}, {"x2", 1, 1}, {"x3", 1, 1}});
    b.set_d(2, {{(1 << 0) | (1 << 1), c}});
    return b;
}

// Koszul line: an odd degree-1 generator mapped to an even degree-2 one,
// basis 1, e, de, e de with d(e) = c de.
inline SuperAlgebraBuilder koszul_line(Cx scale = Cx(1, 0)) {
    SuperAlgebraBuilder b({{"e", 1, 1}, {"de", 0, 2}});
    b.set_d(0, {{1 << 1, scale}});
    return b;
}

// Mode-pair Dolbeault model: function generators z_i, w_i (even, degree 0)
// with d z_i = s_i dzbar z_i, d w_i = -s_i dzbar w_i, tensored with the
// form factors.  with_dz = true keeps both odd form generators and the top
// trace pairing; with_dz = false gives a compact 2^(2g+1)-dimensional model.
struct ModePairModel {
    SuperAlgebraBuilder builder;
    int top_mask;
};

inline ModePairModel mode_pair_model(const std::vector<double>& lambdas, bool with_dz) {
    std::vector<SuperAlgebraBuilder::Generator> gens;
    const int g = int(lambdas.size());
    for (int i = 0; i < g; ++i) {
        gens.push_back({"z" + std::to_string(i + 1), 0, 0});
        gens.push_back({"w" + std::to_string(i + 1), 0, 0});
    }
    if (with_dz) gens.push_back({"dz", 1, 1});
    gens.push_back({"dzbar", 1, 1});
    SuperAlgebraBuilder b(std::move(gens));
    const int dzbar_bit = int(b.dim() == 0 ? 0 : 0); // placeholder, set below
    (void)dzbar_bit;
    const int n_gens = 2 * g + (with_dz ? 2 : 1);
    const int dzbar_idx = n_gens - 1;
    for (int i = 0; i < g; ++i) {
        b.set_d(2 * i, {{(1 << (2 * i)) | (1 << dzbar_idx), Cx(lambdas[std::size_t(i)], 0)}});
        b.set_d(2 * i + 1, {{(1 << (2 * i + 1)) | (1 << dzbar_idx), Cx(-lambdas[std::size_t(i)], 0)}});
    }
    int top = (1 << n_gens) - 1;
    return ModePairModel{std::move(b), top};
}

// Upper-triangular 3x3 matrices graded by j - i, with d = graded commutator
// with mu E_12.
inline DgAlgebra triangular3(Cx mu, std::optional<MatC> inner = {}) {
    // basis: E11, E22, E33, E12, E23, E13
    struct Unit {
        int r, c;
    };
    const std::vector<Unit> units = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}};
    GradedBasis b;
    const char* names[] = {"E11", "E22", "E33", "E12", "E23", "E13"};
    for (int i = 0; i < 6; ++i) b.labels.push_back({names[i], units[std::size_t(i)].c - units[std::size_t(i)].r});
    auto mult = DgAlgebra::zero_mult(6);
    auto find = [&](int r, int c) {
        for (int i = 0; i < 6; ++i)
            if (units[std::size_t(i)].r == r && units[std::size_t(i)].c == c) return i;
        return -1;
    };
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (units[std::size_t(i)].c == units[std::size_t(j)].r) {
                const int k = find(units[std::size_t(i)].r, units[std::size_t(j)].c);
                if (k >= 0) mult[std::size_t(i) * 6 + std::size_t(j)][k] = Cx(1, 0);
            }
    // d(x) = n x - (-1)^(~x) x n with n = mu E12
    MatC d = MatC::Zero(6, 6);
    const int n12 = find(0, 1);
    for (int j = 0; j < 6; ++j) {
        VecC lhs = mu * mult[std::size_t(n12) * 6 + std::size_t(j)];
        const double sg = (((units[std::size_t(j)].c - units[std::size_t(j)].r) % 2) + 2) % 2 ? -1.0 : 1.0;
        lhs -= sg * mu * mult[std::size_t(j) * 6 + std::size_t(n12)];
        d.col(j) = lhs;
    }
    return DgAlgebra(std::move(b), std::move(mult), std::move(d), std::move(inner));
}

// Random positive-definite degree-orthogonal inner product.
inline MatC random_inner(const GradedBasis& basis, std::mt19937_64& rng) {
    const int n = basis.dim();
    std::normal_distribution<double> nd(0.0, 1.0);
    MatC M = MatC::Zero(n, n);
    std::map<int, std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) blocks[basis.degree(i)].push_back(i);
    for (const auto& [deg, idx] : blocks) {
        const int m = int(idx.size());
        MatC C(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) C(r, c) = Cx(nd(rng), nd(rng));
        const MatC blk = C.adjoint() * C + 0.25 * MatC::Identity(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) M(idx[std::size_t(r)], idx[std::size_t(c)]) = blk(r, c);
    }
    return M;
}

// A deterministic corpus of dg-algebras with nontrivial differential and
// randomized parameters / metrics, dimension <= 8.
inline DgAlgebra random_dg_algebra(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.5, 2.0);
    std::uniform_real_distribution<double> ua(-3.14159, 3.14159);
    const int family = int(rng() % 4);
    DgAlgebra a;
    switch (family) {
        case 0: {
            const Cx c = std::polar(ur(rng), ua(rng));
            a = heisenberg_ce(c).build();
            break;
        }
        case 1: {
            const Cx c = std::polar(ur(rng), ua(rng));
            a = koszul_line(c).build();
            break;
        }
        case 2: {
            auto m = mode_pair_model({ur(rng)}, false);
            a = m.builder.build();
            break;
        }
        default: {
            const Cx mu = std::polar(ur(rng), ua(rng));
            a = triangular3(mu);
            break;
        }
    }
    a.inner = random_inner(a.basis, rng);
    a.validate();
    return a;
}

} // namespace ainfell
