// testutil.hpp
// Deterministic rng and independent oracles used across the test suite.
// Everything here recomputes from first principles (trial division, brute
// sums, direct scans) so the library implementations are checked against a
// second route, not against themselves.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace testutil {

// splitmix64: stable across platforms, unlike std distributions
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double u01() { return static_cast<double>(next() >> 11) * 0x1p-53; }
    uint64_t uniform(uint64_t lo, uint64_t hi) { // inclusive
        return lo + next() % (hi - lo + 1);
    }
};

// ---------------------------------------------------------------------------
// trial-division primality
inline bool is_prime_td(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// #ordered k-tuples of positive integers with product n (independent of the
// binomial formula for d_k)
inline uint64_t tuples_with_product(uint64_t n, uint32_t k) {
    if (k == 1) return 1;
    uint64_t total = 0;
    for (uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) total += tuples_with_product(n / d, k - 1);
    return total;
}

inline uint64_t phi_by_gcd_scan(uint64_t n) {
    uint64_t c = 0;
    for (uint64_t a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++c;
    return c;
}

inline double lambda_td(uint64_t n) {
    if (n < 2) return 0.0;
    for (uint64_t p = 2; p <= n; ++p) {
        if (n % p) continue; // first hit is the smallest prime factor
        uint64_t m = n;
        while (m % p == 0) m /= p;
        return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
    return 0.0;
}

inline int mobius_td(uint64_t n) {
    int omega = 0;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++omega;
    }
    if (n > 1) ++omega;
    return omega % 2 ? -1 : 1;
}

// ---------------------------------------------------------------------------
// brute exponential sums
inline std::complex<double> e_brute(double x) {
    double t = 2.0 * 3.14159265358979323846 * (x - std::floor(x));
    return {std::cos(t), std::sin(t)};
}

// Ramanujan sum by its defining sum over units
inline double ramanujan_brute(uint64_t q, int64_t m) {
    std::complex<double> s{0.0, 0.0};
    for (uint64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        int64_t num = (m % static_cast<int64_t>(q)) * static_cast<int64_t>(a);
        s += e_brute(static_cast<double>(num) / static_cast<double>(q));
    }
    return s.real(); // imaginary part cancels by a -> q - a
}

// conductor by the induced-character test: the smallest divisor d of q such
// that chi(n) = 1 whenever n = 1 (mod d) and gcd(n, q) = 1
template <typename Chi>
uint64_t conductor_brute(const Chi& chi, uint64_t q) {
    for (uint64_t d = 1; d <= q; ++d) {
        if (q % d) continue;
        bool trivial = true;
        for (uint64_t n = 1; n <= q && trivial; n += d)
            if (std::gcd(n, q) == 1 && std::abs(chi(n) - std::complex<double>{1.0, 0.0}) > 1e-9)
                trivial = false;
        if (trivial) return d;
    }
    return q;
}

// Independent value-level evaluation of the defining nested sum for P_m(t):
// no coefficient expansion, factorials and binomials computed inline.
inline double pm_direct_eval(uint64_t m, double r4, double t) {
    uint64_t small_hi = static_cast<uint64_t>(std::floor(r4));
    uint64_t big_hi = static_cast<uint64_t>(std::floor(r4 * r4));
    double log_r4 = std::log(r4);
    double total = 0.0;
    auto fact = [](uint32_t n) {
        double f = 1.0;
        for (uint32_t i = 2; i <= n; ++i) f *= i;
        return f;
    };
    auto binom = [](uint32_t n, uint32_t k) {
        double v = 1.0;
        for (uint32_t i = 1; i <= k; ++i)
            v = v * static_cast<double>(n - k + i) / static_cast<double>(i);
        return v;
    };
    for (uint32_t j = 0; j <= 3; ++j) {
        for (uint64_t n1 = 1; n1 <= m; ++n1) {
            if (m % n1) continue;
            bool ok1 = (1 <= j) ? (n1 <= small_hi)
                                : (n1 > small_hi && n1 <= big_hi);
            if (!ok1) continue;
            for (uint64_t n2 = 1; n2 * n1 <= m; ++n2) {
                if ((m / n1) % n2) continue;
                bool ok2 = (2 <= j) ? (n2 <= small_hi)
                                    : (n2 > small_hi && n2 <= big_hi);
                if (!ok2) continue;
                uint64_t n3 = m / (n1 * n2);
                bool ok3 = (3 <= j) ? (n3 <= small_hi)
                                    : (n3 > small_hi && n3 <= big_hi);
                if (!ok3) continue;
                double logs = 0.0;
                uint64_t parts[3] = {n1, n2, n3};
                for (uint32_t pos = 1; pos <= j; ++pos)
                    logs += std::log(static_cast<double>(parts[pos - 1]));
                double L = logs + static_cast<double>(4 - j) * log_r4;
                uint32_t k = 3 - j;
                total += binom(4, j) * std::pow(t - L, static_cast<double>(k)) /
                         (fact(k) * std::pow(log_r4, static_cast<double>(k)));
            }
        }
    }
    return total;
}


} // namespace testutil
