#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "ainfell/theta.hpp"

namespace ainfell {

struct pole_proximity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A point z = c1 + tau c2 with its real lattice coordinates kept explicit.
// The coordinates, not Im(z)/Im(tau) recomputation, are authoritative: the
// metric weights and the Fukaya-side n0 depend on c2 directly.
struct LatticeCoord {
    std::complex<double> value{0.0, 0.0};
    double c1 = 0.0;
    double c2 = 0.0;

    LatticeCoord() = default;

    static LatticeCoord from_coords(double c1, double c2, const Modulus& m) {
        LatticeCoord z;
        z.c1 = c1;
        z.c2 = c2;
        z.value = std::complex<double>(c1, 0.0) + m.tau * c2;
        return z;
    }

    static LatticeCoord from_value(std::complex<double> v, const Modulus& m) {
        LatticeCoord z;
        z.value = v;
        z.c2 = v.imag() / m.t;
        z.c1 = v.real() - m.tau.real() * z.c2;
        return z;
    }

    LatticeCoord operator+(const LatticeCoord& o) const {
        LatticeCoord z;
        z.c1 = c1 + o.c1;
        z.c2 = c2 + o.c2;
        z.value = value + o.value;
        return z;
    }
    LatticeCoord operator-() const {
        LatticeCoord z;
        z.c1 = -c1;
        z.c2 = -c2;
        z.value = -value;
        return z;
    }
};

// Distance from z to the lattice Z + Z tau in the |.| metric.
inline double lattice_distance(std::complex<double> z, const Modulus& m) {
    const LatticeCoord u = LatticeCoord::from_value(z, m);
    const double f1 = u.c1 - std::floor(u.c1);
    const double f2 = u.c2 - std::floor(u.c2);
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) {
            const std::complex<double> d =
                std::complex<double>(f1 - a, 0.0) + m.tau * (f2 - b);
            best = std::min(best, std::abs(d));
        }
    return best;
}

// Reduce z modulo the lattice to coordinates in [0,1)^2; returns the shift
// (p, q) with z = z_red + p + q tau.
struct LatticeReduction {
    LatticeCoord reduced;
    long long p = 0, q = 0;
};

inline LatticeReduction lattice_reduce(std::complex<double> z, const Modulus& m) {
    const LatticeCoord u = LatticeCoord::from_value(z, m);
    LatticeReduction r;
    r.p = (long long)std::floor(u.c1);
    r.q = (long long)std::floor(u.c2);
    r.reduced = LatticeCoord::from_coords(u.c1 - double(r.p), u.c2 - double(r.q), m);
    return r;
}

// Solutions of m = r1 (mod k), m = r2 (mod l): arithmetic progression
// m0 + j*lcm(k,l), or empty when the congruences are incompatible.
struct CrtClass {
    bool solvable = false;
    long long m0 = 0;
    long long step = 1;
};

inline CrtClass crt_class(long long r1, long long k, long long r2, long long l) {
    CrtClass c;
    const long long g = std::gcd(k, l);
    if (((r2 - r1) % g) != 0) return c;
    // extended gcd on (k/g, l/g)
    long long a = k / g, b = l / g;
    long long x0 = 1, x1 = 0, y0 = 0, y1 = 1, u = a, v = b;
    while (v != 0) {
        const long long q = u / v;
        std::tie(u, v) = std::make_tuple(v, u - q * v);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
    }
    (void)y0;
    const long long lcm = k / g * l;
    // m = r1 + k * s with s = ((r2 - r1)/g) * inv(k/g) mod (l/g)
    const long long diff = (r2 - r1) / g;
    long long inv = x0 % (l / g);
    if (inv < 0) inv += l / g;
    long long s = (diff % (l / g)) * inv % (l / g);
    if (s < 0) s += l / g;
    c.solvable = true;
    c.step = lcm;
    c.m0 = ((r1 + k * s) % lcm + lcm) % lcm;
    return c;
}

} // namespace ainfell
