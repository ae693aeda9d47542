// digitset.hpp
// Missing-digit sets [lo, hi]* in base g with one forbidden digit b >= 2:
// membership, enumeration, digit-DP counting (plain and per residue class),
// AP discrepancy reports, and the normalized Fourier transform F(alpha).
//
// Because b >= 2, leading zeros are never forbidden, so "no digit equals b"
// can be tested on fixed-width expansions without a started flag.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gbseed/common.hpp"

namespace gbseed::digitset {

inline constexpr uint64_t kEnumerationCap = 100'000'000;
inline constexpr double kApDpOpsCap = 2e10;

struct DigitSystem {
    uint32_t base;
    uint32_t forbidden;

    DigitSystem(uint32_t g, uint32_t b) : base(g), forbidden(b) {
        if (g < 3) throw domain_error("base must be >= 3");
        if (b < 2) throw domain_error("forbidden digit must be >= 2");
        if (b >= g) throw domain_error("forbidden digit must be < base");
    }

    bool allows(uint64_t n) const {
        while (n) {
            if (n % base == forbidden) return false;
            n /= base;
        }
        return true;
    }
};

struct RestrictedSet {
    DigitSystem system;
    uint64_t lo, hi;

    RestrictedSet(DigitSystem sys, uint64_t lo_, uint64_t hi_)
        : system(sys), lo(lo_), hi(hi_) {
        if (lo < 1) throw domain_error("RestrictedSet: lo must be >= 1");
        if (lo > hi) throw domain_error("RestrictedSet: lo must be <= hi");
    }

    bool contains(uint64_t n) const {
        return n >= lo && n <= hi && system.allows(n);
    }
};

template <typename F>
void for_each_member(const RestrictedSet& s, F&& fn) {
    for (uint64_t n = s.lo; n <= s.hi; ++n)
        if (s.system.allows(n)) fn(n);
}

inline std::vector<uint64_t> members(const RestrictedSet& s) {
    if (s.hi - s.lo > kEnumerationCap)
        throw resource_error("members: range exceeds enumeration cap");
    std::vector<uint64_t> out;
    for_each_member(s, [&](uint64_t n) { out.push_back(n); });
    return out;
}

namespace detail {

inline std::vector<uint32_t> digits_of(uint64_t x, uint32_t g) {
    std::vector<uint32_t> d; // least significant first
    do {
        d.push_back(static_cast<uint32_t>(x % g));
        x /= g;
    } while (x);
    return d;
}

// # restricted integers in [0, x]. Continuations after a strict digit are
// unconstrained, so the tail count is (g-1)^position.
inline uint64_t count_prefix(const DigitSystem& sys, uint64_t x) {
    auto d = digits_of(x, sys.base);
    uint64_t total = 0;
    for (size_t i = d.size(); i-- > 0;) {
        uint32_t di = d[i];
        uint64_t choices = di - (sys.forbidden < di ? 1 : 0);
        total += choices * pow_u64(sys.base - 1, static_cast<uint32_t>(i));
        if (di == sys.forbidden) return total; // tight path dies
    }
    return total + 1; // x itself
}

// per-residue counts of restricted integers in [0, x]
inline std::vector<uint64_t> count_prefix_ap(const DigitSystem& sys, uint64_t x,
                                             uint64_t q) {
    auto d = digits_of(x, sys.base);
    const uint32_t g = sys.base;
    std::vector<uint64_t> free_cnt(q, 0), next(q, 0);
    uint64_t tight_res = 0;
    bool tight = true;
    for (size_t i = d.size(); i-- > 0;) {
        std::fill(next.begin(), next.end(), 0);
        for (uint64_t r = 0; r < q; ++r) {
            if (!free_cnt[r]) continue;
            uint64_t base_r = r * g % q;
            for (uint32_t dig = 0; dig < g; ++dig) {
                if (dig == sys.forbidden) continue;
                next[(base_r + dig) % q] += free_cnt[r];
            }
        }
        if (tight) {
            uint64_t base_r = tight_res * g % q;
            for (uint32_t dig = 0; dig < d[i]; ++dig) {
                if (dig == sys.forbidden) continue;
                ++next[(base_r + dig) % q];
            }
            if (d[i] == sys.forbidden) tight = false;
            else tight_res = (base_r + d[i]) % q;
        }
        free_cnt.swap(next);
    }
    if (tight) ++free_cnt[tight_res];
    return free_cnt;
}

} // namespace detail

// |[lo, hi]*| without enumeration.
inline uint64_t count(const RestrictedSet& s) {
    return detail::count_prefix(s.system, s.hi) -
           detail::count_prefix(s.system, s.lo - 1);
}

// counts of members in each residue class mod q
inline std::vector<uint64_t> count_ap_all(const RestrictedSet& s, uint64_t q) {
    if (q < 1) throw domain_error("count_ap_all: q must be >= 1");
    if (static_cast<double>(q) * s.system.base * 64.0 > kApDpOpsCap)
        throw resource_error("count_ap_all: DP state too large");
    auto hi_counts = detail::count_prefix_ap(s.system, s.hi, q);
    auto lo_counts = detail::count_prefix_ap(s.system, s.lo - 1, q);
    for (uint64_t r = 0; r < q; ++r) hi_counts[r] -= lo_counts[r];
    return hi_counts;
}

inline uint64_t count_ap(const RestrictedSet& s, uint64_t q, uint64_t a) {
    if (q < 1) throw domain_error("count_ap: q must be >= 1");
    if (a >= q) throw domain_error("count_ap: need 0 <= a < q");
    return count_ap_all(s, q)[a];
}

// -------------------------------------------------------------------------
// AP discrepancy over [1, X]*: per q <= Qmax the worst residue-class
// deviation from count/q, summed over q coprime to g(g-1).
// -------------------------------------------------------------------------
struct ApDiscrepancyRow {
    uint64_t q;
    bool coprime; // gcd(q, g(g-1)) == 1
    double max_disc;
};

struct ApDiscrepancyReport {
    uint64_t X = 0, qmax = 0;
    uint64_t set_count = 0;
    std::vector<ApDiscrepancyRow> rows;
    double sum_coprime = 0.0;
    double ratio = 0.0; // sum_coprime / set_count
};

inline ApDiscrepancyReport ap_discrepancy(const DigitSystem& sys, uint64_t X,
                                          uint64_t qmax) {
    if (qmax < 1 || qmax > 10'000)
        throw domain_error("ap_discrepancy: need 1 <= Qmax <= 10^4");
    if (X < 1 || X > 1'000'000'000'000ULL)
        throw domain_error("ap_discrepancy: need 1 <= X <= 10^12");
    RestrictedSet s(sys, 1, X);
    ApDiscrepancyReport rep;
    rep.X = X;
    rep.qmax = qmax;
    rep.set_count = count(s);
    uint64_t gg1 = static_cast<uint64_t>(sys.base) * (sys.base - 1);
    for (uint64_t q = 1; q <= qmax; ++q) {
        auto counts = count_ap_all(s, q);
        double expect = static_cast<double>(rep.set_count) / static_cast<double>(q);
        double worst = 0.0;
        for (uint64_t a = 0; a < q; ++a)
            worst = std::max(worst,
                             std::abs(static_cast<double>(counts[a]) - expect));
        bool cop = std::gcd(q, gg1) == 1;
        rep.rows.push_back({q, cop, worst});
        if (cop) rep.sum_coprime += worst;
    }
    rep.ratio = rep.sum_coprime / static_cast<double>(rep.set_count);
    return rep;
}

// -------------------------------------------------------------------------
// Exponential sums over the set. exp_sum walks the digit tree in
// O(digits * g) per alpha; exp_sum_enumerate is the direct route.
// -------------------------------------------------------------------------
namespace detail {

// sum of e(n alpha) over restricted n in [0, x)
inline cplx exp_sum_below(const DigitSystem& sys, uint64_t x, double alpha) {
    if (x == 0) return {0.0, 0.0};
    auto d = digits_of(x, sys.base);
    const size_t k = d.size(); // every n < x fits in k digit positions
    const uint32_t g = sys.base;
    // block_sum[j] = sum of e(m alpha) over restricted m in [0, g^j)
    std::vector<cplx> block_sum(k + 1);
    block_sum[0] = {1.0, 0.0};
    for (size_t j = 0; j < k; ++j) {
        double gj = static_cast<double>(pow_u64(g, static_cast<uint32_t>(j)));
        cplx s{0.0, 0.0};
        for (uint32_t dig = 0; dig < g; ++dig) {
            if (dig == sys.forbidden) continue;
            s += e(frac1(static_cast<double>(dig) * gj * alpha));
        }
        block_sum[j + 1] = block_sum[j] * s;
    }

    cplx acc{0.0, 0.0};
    uint64_t prefix = 0; // high digits chosen so far, as an integer
    for (size_t i = k; i-- > 0;) {
        uint64_t gi = pow_u64(g, static_cast<uint32_t>(i));
        for (uint32_t dig = 0; dig < d[i]; ++dig) {
            if (dig == sys.forbidden) continue;
            uint64_t v = prefix + dig * gi;
            acc += e(frac1(static_cast<double>(v) * alpha)) * block_sum[i];
        }
        if (d[i] == sys.forbidden) return acc; // tight path dies
        prefix += static_cast<uint64_t>(d[i]) * gi;
    }
    return acc; // x excluded (half-open)
}

} // namespace detail

inline cplx exp_sum(const RestrictedSet& s, double alpha) {
    double a = frac1(alpha);
    return detail::exp_sum_below(s.system, s.hi + 1, a) -
           detail::exp_sum_below(s.system, s.lo, a);
}

inline cplx exp_sum_enumerate(const RestrictedSet& s, double alpha) {
    double a = frac1(alpha);
    std::vector<cplx> terms;
    for_each_member(s, [&](uint64_t n) {
        terms.push_back(e(frac1(static_cast<double>(n) * a)));
    });
    return sum_pairwise(std::move(terms));
}

// F(alpha) = |sum over members of e(n alpha)| / |set|, in [0, 1].
inline double fourier_F(const RestrictedSet& s, double alpha) {
    uint64_t c = count(s);
    if (c == 0) throw domain_error("fourier_F: empty set");
    return std::abs(exp_sum(s, alpha)) / static_cast<double>(c);
}

// -------------------------------------------------------------------------
// Midpoint-rule estimate of the L1 norm of F over one period, with the
// Lipschitz error bound |F'| <= 2 pi hi, and the size comparator
// |set|^(-1 + log(log g + 1)/log(g-1)).
// -------------------------------------------------------------------------
struct L1Report {
    uint64_t grid_n = 0;
    double estimate = 0.0;
    double error_bound = 0.0;
    double comparator = 0.0;
    double ratio = 0.0;
};

inline L1Report l1_estimate(const RestrictedSet& s, uint64_t grid_n) {
    if (grid_n < 4 * (s.hi + 1))
        throw domain_error("l1_estimate: grid must have >= 4*(hi+1) points");
    uint64_t c = count(s);
    if (c == 0) throw domain_error("l1_estimate: empty set");
    double inv_n = 1.0 / static_cast<double>(grid_n);
    double sum = sum_blocked<double>(grid_n, [&](uint64_t j) {
        double a = (static_cast<double>(j) + 0.5) * inv_n;
        return std::abs(exp_sum(s, a));
    });
    L1Report rep;
    rep.grid_n = grid_n;
    rep.estimate = sum * inv_n / static_cast<double>(c);
    rep.error_bound = kPi * static_cast<double>(s.hi) / (2.0 * static_cast<double>(grid_n));
    double g = s.system.base;
    rep.comparator = std::pow(static_cast<double>(c),
                              -1.0 + std::log(std::log(g) + 1.0) / std::log(g - 1.0));
    rep.ratio = rep.estimate / rep.comparator;
    return rep;
}

} // namespace gbseed::digitset
