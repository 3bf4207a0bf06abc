#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace ainfell {

// Index combinatorics for products of sections of degree k and l bundles.
// Triples (b, c, p) of integers are taken modulo the relations
//   (b, c, p) ~ (b, c, p + (k+l)/r),
//   (b, c, p) ~ (b + k, c, p - 1),
//   (b, c, p) ~ (b, c + l, p + 1),
// with r = gcd(k, l).  Canonical representatives have 0 <= b < k,
// 0 <= c < l, 0 <= p < (k+l)/r.
struct TSetElement {
    long long b = 0, c = 0, p = 0;
};

struct TSetContext {
    long long k, l;
    long long r;      // gcd(k, l)
    long long N;      // (k+l) k l / r^2
    long long fiber;  // (k+l)/r

    TSetContext(long long k_, long long l_) : k(k_), l(l_) {
        if (k <= 0 || l <= 0) throw std::invalid_argument("t-set: k, l must be positive");
        r = std::gcd(k, l);
        N = (k + l) / r * k * l / r;
        fiber = (k + l) / r;
    }

    TSetElement canonical(TSetElement s) const {
        // shift b into [0,k) adjusting p by the (b,c,p)~(b+k,c,p-1) relation
        long long qb = (s.b % k + k) % k;
        s.p += (s.b - qb) / k;
        s.b = qb;
        long long qc = (s.c % l + l) % l;
        s.p -= (s.c - qc) / l;
        s.c = qc;
        s.p = (s.p % fiber + fiber) % fiber;
        return s;
    }

    // phi2(b,c,p) = (b/k - c/l + p) kl/r  in Z/NZ
    long long phi2(const TSetElement& s) const {
        const long long num = s.b * l - s.c * k + s.p * k * l;
        if (num % r != 0) throw std::logic_error("t-set: phi2 value not integral");
        long long v = (num / r) % N;
        return (v + N) % N;
    }

    // phi3(b,c,p) = b + c + kp  in Z/(k+l)Z
    long long phi3(const TSetElement& s) const {
        long long v = (s.b + s.c + k * s.p) % (k + l);
        return (v + (k + l)) % (k + l);
    }

    // The fiber of phi1 over (b, c): canonical representatives with p running
    // over 0 .. (k+l)/r - 1.
    std::vector<TSetElement> fiber_over(long long b, long long c) const {
        std::vector<TSetElement> out;
        out.reserve(std::size_t(fiber));
        for (long long p = 0; p < fiber; ++p)
            out.push_back(canonical(TSetElement{b, c, p}));
        return out;
    }
};

} // namespace ainfell
