// arith.hpp
// Number-theoretic kernel: prime sieve, segmented arithmetic-function window
// (Lambda, mu, d2, d4, primality), pointwise values by factorization, and
// Ramanujan sums.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gbseed/common.hpp"

namespace gbseed::arith {

inline constexpr uint64_t kPrimeLimitCap = 200'000'000; // byte sieve, ~200 MB
inline constexpr uint64_t kWindowStartCap = 1'000'000'000'000ULL; // 10^12
inline constexpr uint64_t kWindowLengthCap = 30'000'000;
inline constexpr uint64_t kSieveBlock = 1u << 16;

// -------------------------------------------------------------------------
// PrimeTable
// -------------------------------------------------------------------------
struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;
};

inline PrimeTable sieve_primes(uint64_t limit) {
    if (limit > kPrimeLimitCap)
        throw resource_error("sieve_primes: limit " + std::to_string(limit) +
                             " exceeds cap " + std::to_string(kPrimeLimitCap));
    PrimeTable t;
    t.limit = limit;
    if (limit < 2) return t;
    std::vector<uint8_t> comp(limit + 1, 0);
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!comp[i])
            for (uint64_t j = i * i; j <= limit; j += i) comp[j] = 1;
    for (uint64_t i = 2; i <= limit; ++i)
        if (!comp[i]) t.primes.push_back(i);
    return t;
}

// -------------------------------------------------------------------------
// Pointwise values via trial-division factorization
// -------------------------------------------------------------------------
struct PrimePower {
    uint64_t p;
    uint32_t e;
};

inline std::vector<PrimePower> factorize(uint64_t n) {
    if (n == 0) throw domain_error("factorize: n must be >= 1");
    std::vector<PrimePower> f;
    for (uint64_t p : {uint64_t{2}, uint64_t{3}}) {
        uint32_t e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) f.push_back({p, e});
    }
    for (uint64_t p = 5; p * p <= n; p += (p % 6 == 5) ? 2 : 4) {
        uint32_t e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

inline double lambda_of(uint64_t n) {
    if (n == 0) throw domain_error("lambda_of: n must be >= 1");
    if (n == 1) return 0.0;
    auto f = factorize(n);
    return f.size() == 1 ? std::log(static_cast<double>(f[0].p)) : 0.0;
}

inline int mobius_of(uint64_t n) {
    if (n == 0) throw domain_error("mobius_of: n must be >= 1");
    auto f = factorize(n);
    for (const auto& pp : f)
        if (pp.e >= 2) return 0;
    return (f.size() % 2 == 0) ? 1 : -1;
}

inline uint64_t phi_of(uint64_t n) {
    if (n == 0) throw domain_error("phi_of: n must be >= 1");
    uint64_t r = n;
    for (const auto& pp : factorize(n)) r = r / pp.p * (pp.p - 1);
    return r;
}

// d_k(n) = number of ordered k-tuples with product n; multiplicative with
// d_k(p^e) = binom(e+k-1, k-1).
inline uint64_t dk_of(uint64_t n, uint32_t k) {
    if (n == 0) throw domain_error("dk_of: n must be >= 1");
    if (k < 2 || k > 8) throw domain_error("dk_of: k must be in [2, 8]");
    uint64_t r = 1;
    for (const auto& pp : factorize(n)) r *= binom_u64(pp.e + k - 1, k - 1);
    return r;
}

enum class Fn { Lambda, Mu, Phi, Dk };

inline double pointwise(Fn kind, uint64_t n, uint32_t k = 0) {
    switch (kind) {
        case Fn::Lambda: return lambda_of(n);
        case Fn::Mu: return static_cast<double>(mobius_of(n));
        case Fn::Phi: return static_cast<double>(phi_of(n));
        case Fn::Dk: return static_cast<double>(dk_of(n, k));
    }
    throw domain_error("pointwise: unknown kind");
}

// -------------------------------------------------------------------------
// SieveWindow: Lambda, mu, d2, d4 and primality over [start, start+length).
// Built by a segmented smallest-prime-factor sieve; deterministic.
// -------------------------------------------------------------------------
struct SieveWindow {
    uint64_t start = 1;
    uint64_t length = 0;
    std::vector<double> lambda;
    std::vector<int8_t> mobius;
    std::vector<uint32_t> d2, d4;
    std::vector<uint8_t> is_prime;

    uint64_t end() const { return start + length; } // exclusive
    bool covers(uint64_t lo, uint64_t hi) const {   // inclusive range
        return lo >= start && hi < end() && lo <= hi;
    }
    size_t idx(uint64_t n) const { return static_cast<size_t>(n - start); }

    double lambda_at(uint64_t n) const { return lambda[idx(n)]; }
    int mobius_at(uint64_t n) const { return mobius[idx(n)]; }
    uint64_t d2_at(uint64_t n) const { return d2[idx(n)]; }
    uint64_t d4_at(uint64_t n) const { return d4[idx(n)]; }
    bool prime_at(uint64_t n) const { return is_prime[idx(n)] != 0; }
};

inline SieveWindow build_window(uint64_t start, uint64_t length) {
    if (start < 1) throw domain_error("build_window: start must be >= 1");
    if (length < 1) throw domain_error("build_window: length must be >= 1");
    if (start > kWindowStartCap)
        throw resource_error("build_window: start beyond 10^12 cap");
    if (length > kWindowLengthCap)
        throw resource_error("build_window: length beyond cap");
    if (start + length < start)
        throw domain_error("build_window: start + length overflows");

    SieveWindow w;
    w.start = start;
    w.length = length;
    w.lambda.assign(length, 0.0);
    w.mobius.assign(length, 1);
    w.d2.assign(length, 1);
    w.d4.assign(length, 1);
    w.is_prime.assign(length, 0);

    const uint64_t hi = start + length; // exclusive
    PrimeTable base = sieve_primes(isqrt_u64(hi - 1));

    std::vector<uint64_t> rem(kSieveBlock);
    std::vector<uint64_t> firstp(kSieveBlock);
    std::vector<uint8_t> omega(kSieveBlock);
    std::vector<int8_t> sign(kSieveBlock);
    std::vector<uint8_t> sqfree(kSieveBlock);

    for (uint64_t blo = start; blo < hi; blo += kSieveBlock) {
        uint64_t bhi = std::min(hi, blo + kSieveBlock);
        size_t blen = static_cast<size_t>(bhi - blo);
        for (size_t i = 0; i < blen; ++i) {
            rem[i] = blo + i;
            firstp[i] = 0;
            omega[i] = 0;
            sign[i] = 1;
            sqfree[i] = 1;
        }
        for (uint64_t p : base.primes) {
            if (p >= bhi) break;
            uint64_t m = ((blo + p - 1) / p) * p;
            for (; m < bhi; m += p) {
                size_t i = static_cast<size_t>(m - blo);
                uint32_t e = 0;
                while (rem[i] % p == 0) rem[i] /= p, ++e;
                size_t gi = static_cast<size_t>(m - start);
                w.d2[gi] *= e + 1;
                w.d4[gi] *= static_cast<uint32_t>(binom_u64(e + 3, 3));
                if (e >= 2) sqfree[i] = 0;
                sign[i] = -sign[i];
                if (omega[i] == 0) firstp[i] = p;
                ++omega[i];
            }
        }
        for (size_t i = 0; i < blen; ++i) {
            uint64_t n = blo + i;
            size_t gi = static_cast<size_t>(n - start);
            if (rem[i] > 1) { // leftover prime factor above sqrt(hi)
                w.d2[gi] *= 2;
                w.d4[gi] *= 4;
                sign[i] = -sign[i];
                if (omega[i] == 0) firstp[i] = rem[i];
                ++omega[i];
            }
            if (n == 1) {
                w.mobius[gi] = 1;
                continue;
            }
            w.mobius[gi] = sqfree[i] ? sign[i] : 0;
            w.is_prime[gi] = (w.d2[gi] == 2) ? 1 : 0;
            if (omega[i] == 1) // n = p^e, Lambda = log p
                w.lambda[gi] = std::log(static_cast<double>(firstp[i]));
        }
    }
    return w;
}

// -------------------------------------------------------------------------
// Ramanujan sum c_q(m) = mu(q/(q,m)) * phi(q) / phi(q/(q,m)).
// Equals the defining sum of e(ma/q) over a coprime to q.
// -------------------------------------------------------------------------
inline int64_t ramanujan_sum(uint64_t q, int64_t m) {
    if (q == 0) throw domain_error("ramanujan_sum: q must be >= 1");
    uint64_t am = static_cast<uint64_t>(m < 0 ? -m : m);
    uint64_t g = std::gcd(q, am); // gcd(q, 0) = q, so c_q(0) = phi(q)
    uint64_t qg = q / g;
    int mu = mobius_of(qg);
    if (mu == 0) return 0;
    uint64_t ratio = phi_of(q) / phi_of(qg); // exact: phi(d) | phi(q) for d | q
    return mu * static_cast<int64_t>(ratio);
}

} // namespace gbseed::arith
