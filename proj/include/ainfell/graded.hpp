#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace ainfell {

struct algebra_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Cx = std::complex<double>;
using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

struct GradedBasis {
    struct Label {
        std::string name;
        int degree;
    };
    std::vector<Label> labels;

    int dim() const { return int(labels.size()); }
    int degree(int i) const { return labels[std::size_t(i)].degree; }
    int parity(int i) const { return ((degree(i) % 2) + 2) % 2; }

    void validate() const {
        std::set<std::string> seen;
        for (const auto& l : labels)
            if (!seen.insert(l.name).second)
                throw algebra_error("graded basis: duplicate label " + l.name);
    }
};

struct GradedElement {
    VecC coeffs;
    std::optional<int> homogeneous_degree;
};

// Finite-dimensional dg-algebra given by structure constants, a degree +1
// differential, and an optional positive-definite Hermitian inner product.
class DgAlgebra {
  public:
    GradedBasis basis;
    MatC d;
    std::optional<MatC> inner;

    DgAlgebra() = default;
    DgAlgebra(GradedBasis b, std::vector<VecC> mult, MatC diff, std::optional<MatC> in = {})
        : basis(std::move(b)), d(std::move(diff)), inner(std::move(in)), mult_(std::move(mult)) {
        validate();
    }

    int dim() const { return basis.dim(); }

    const VecC& mult(int i, int j) const { return mult_[std::size_t(i) * std::size_t(dim()) + std::size_t(j)]; }

    VecC product(const VecC& x, const VecC& y) const {
        const int n = dim();
        VecC out = VecC::Zero(n);
        for (int i = 0; i < n; ++i) {
            if (x[i] == Cx(0, 0)) continue;
            for (int j = 0; j < n; ++j) {
                const Cx c = x[i] * y[j];
                if (c != Cx(0, 0)) out += c * mult(i, j);
            }
        }
        return out;
    }

    VecC apply_d(const VecC& x) const { return d * x; }

    VecC unit_vector(int i) const {
        VecC e = VecC::Zero(dim());
        e[i] = Cx(1, 0);
        return e;
    }

    // Structural identities checked once at construction: degree bookkeeping
    // is exact, the analytic identities hold to tolerance.
    void validate(double tol = 1e-12) const {
        basis.validate();
        const int n = dim();
        if (int(mult_.size()) != n * n || d.rows() != n || d.cols() != n)
            throw algebra_error("dg-algebra: dimension mismatch");

        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int dij = basis.degree(i) + basis.degree(j);
                const VecC& m = mult(i, j);
                for (int k = 0; k < n; ++k)
                    if (m[k] != Cx(0, 0) && basis.degree(k) != dij)
                        throw algebra_error("dg-algebra: product not degree-additive");
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d(i, j) != Cx(0, 0) && basis.degree(i) != basis.degree(j) + 1)
                    throw algebra_error("dg-algebra: differential is not of degree +1");

        if ((d * d).cwiseAbs().maxCoeff() > tol) throw algebra_error("dg-algebra: d^2 != 0");

        double assoc = 0.0, leibniz = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const VecC dij = d * mult(i, j);
                VecC rule = product(d.col(i), unit_vector(j));
                rule += double(1 - 2 * basis.parity(i)) * product(unit_vector(i), d.col(j));
                leibniz = std::max(leibniz, (dij - rule).cwiseAbs().maxCoeff());
                for (int k = 0; k < n; ++k) {
                    const VecC lhs = product(mult(i, j), unit_vector(k));
                    const VecC rhs = product(unit_vector(i), mult(j, k));
                    assoc = std::max(assoc, (lhs - rhs).cwiseAbs().maxCoeff());
                }
            }
        if (assoc > tol) throw algebra_error("dg-algebra: product not associative");
        if (leibniz > tol) throw algebra_error("dg-algebra: Leibniz rule fails");

        if (inner) {
            if (inner->rows() != n || inner->cols() != n)
                throw algebra_error("dg-algebra: inner product dimension mismatch");
            if ((*inner - inner->adjoint()).cwiseAbs().maxCoeff() > tol)
                throw algebra_error("dg-algebra: inner product not Hermitian");
            Eigen::SelfAdjointEigenSolver<MatC> es(*inner);
            if (es.eigenvalues().minCoeff() <= 1e-10)
                throw algebra_error("dg-algebra: inner product not positive definite");
        }
    }

    static std::vector<VecC> zero_mult(int n) {
        return std::vector<VecC>(std::size_t(n) * std::size_t(n), VecC::Zero(n));
    }

    std::vector<VecC>& raw_mult() { return mult_; }
    const std::vector<VecC>& raw_mult() const { return mult_; }

  private:
    std::vector<VecC> mult_;
};

// JSON fixture format:
//   { "basis": [{"name": ..., "degree": ...}],
//     "mult":  [[i, j, k, re, im], ...],   // e_i e_j contains (re+im*I) e_k
//     "d":     [[i, j, re, im], ...],      // matrix entry (i, j)
//     "inner": [[i, j, re, im], ...] }     // optional Hermitian matrix
inline nlohmann::json to_json(const DgAlgebra& a) {
    nlohmann::json j;
    j["basis"] = nlohmann::json::array();
    for (const auto& l : a.basis.labels) j["basis"].push_back({{"name", l.name}, {"degree", l.degree}});
    j["mult"] = nlohmann::json::array();
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
            for (int k = 0; k < n; ++k) {
                const Cx c = a.mult(i, jj)[k];
                if (c != Cx(0, 0)) j["mult"].push_back({i, jj, k, c.real(), c.imag()});
            }
    j["d"] = nlohmann::json::array();
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj)
            if (a.d(i, jj) != Cx(0, 0)) j["d"].push_back({i, jj, a.d(i, jj).real(), a.d(i, jj).imag()});
    if (a.inner) {
        j["inner"] = nlohmann::json::array();
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj)
                if ((*a.inner)(i, jj) != Cx(0, 0))
                    j["inner"].push_back({i, jj, (*a.inner)(i, jj).real(), (*a.inner)(i, jj).imag()});
    }
    return j;
}

inline DgAlgebra algebra_from_json(const nlohmann::json& j) {
    GradedBasis b;
    for (const auto& l : j.at("basis"))
        b.labels.push_back({l.at("name").get<std::string>(), l.at("degree").get<int>()});
    const int n = b.dim();
    auto mult = DgAlgebra::zero_mult(n);
    for (const auto& e : j.at("mult")) {
        const int i = e.at(0), jj = e.at(1), k = e.at(2);
        mult[std::size_t(i) * std::size_t(n) + std::size_t(jj)][k] += Cx(e.at(3), e.at(4));
    }
    MatC d = MatC::Zero(n, n);
    for (const auto& e : j.at("d")) d(e.at(0).get<int>(), e.at(1).get<int>()) += Cx(e.at(2), e.at(3));
    std::optional<MatC> inner;
    if (j.contains("inner")) {
        MatC m = MatC::Zero(n, n);
        for (const auto& e : j.at("inner")) m(e.at(0).get<int>(), e.at(1).get<int>()) += Cx(e.at(2), e.at(3));
        inner = m;
    }
    return DgAlgebra(std::move(b), std::move(mult), std::move(d), std::move(inner));
}

} // namespace ainfell
