// approximant.hpp
// The divisor approximant d4#(n) = sum over divisors m <= R4^6 of P_m(log n),
// where P_m is a cubic assembled from ordered factorizations m = n1 n2 n3
// with the first j parts <= R4 and the rest in (R4, R4^2]:
//
//   P_m(t) = sum_{j=0..3} binom(4,j) sum_{triples}
//            (t - log(n1..nj R4^(4-j)))^(3-j) / ((3-j)! log^(3-j) R4).
//
// The table over m <= R4^6 is sparse: only products of three parts <= R4^2
// carry a nonzero polynomial.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gbseed/common.hpp"
#include "gbseed/quadrature.hpp"

namespace gbseed::approximant {

inline constexpr uint64_t kCutoffCap = 4'000'000;

using Cubic = std::array<double, 4>; // coefficients of 1, t, t^2, t^3

inline double poly_eval(const Cubic& c, double t) {
    return ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
}

inline bool poly_zero(const Cubic& c) {
    return c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0;
}

namespace detail {

inline void add_term(Cubic& poly, uint32_t j, double log_small_prod,
                     double log_r4) {
    // binom(4,j) (t - L)^k / (k! log^k R4), k = 3 - j
    const uint32_t k = 3 - j;
    double L = log_small_prod + static_cast<double>(4 - j) * log_r4;
    double coef = static_cast<double>(binom_u64(4, j));
    for (uint32_t i = 1; i <= k; ++i) coef /= static_cast<double>(i) * log_r4;
    // expand (t - L)^k
    double powL = 1.0;
    for (uint32_t i = 0; i <= k; ++i) {
        uint32_t ti = k - i; // power of t
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        poly[ti] += coef * static_cast<double>(binom_u64(k, i)) * sign * powL;
        powL *= L;
    }
}

struct Ranges {
    uint64_t small_hi; // parts <= R4
    uint64_t big_lo, big_hi; // parts in (R4, R4^2]
};

inline Ranges part_ranges(double r4) {
    Ranges r;
    r.small_hi = static_cast<uint64_t>(std::floor(r4));
    r.big_lo = r.small_hi + 1;
    r.big_hi = static_cast<uint64_t>(std::floor(r4 * r4));
    return r;
}

} // namespace detail

// P_m for a single m, by enumerating its ordered factorizations.
inline Cubic pm_poly(uint64_t m, double r4) {
    if (r4 <= 1.0) throw domain_error("pm_poly: R4 must be > 1");
    double cutoff_real = std::pow(r4, 6.0);
    if (m < 1 || static_cast<double>(m) > cutoff_real)
        throw domain_error("pm_poly: m must be in [1, R4^6]");
    auto rg = detail::part_ranges(r4);
    double log_r4 = std::log(r4);
    Cubic poly{0.0, 0.0, 0.0, 0.0};

    auto in_small = [&](uint64_t n) { return n >= 1 && n <= rg.small_hi; };
    auto in_big = [&](uint64_t n) { return n >= rg.big_lo && n <= rg.big_hi; };

    for (uint32_t j = 0; j <= 3; ++j) {
        for (uint64_t n1 = 1; n1 <= m; ++n1) {
            if (m % n1) continue;
            if (j >= 1 ? !in_small(n1) : !in_big(n1)) continue;
            uint64_t m1 = m / n1;
            for (uint64_t n2 = 1; n2 <= m1; ++n2) {
                if (m1 % n2) continue;
                if (j >= 2 ? !in_small(n2) : !in_big(n2)) continue;
                uint64_t n3 = m1 / n2;
                if (j >= 3 ? !in_small(n3) : !in_big(n3)) continue;
                double log_small = 0.0;
                if (j >= 1) log_small += std::log(static_cast<double>(n1));
                if (j >= 2) log_small += std::log(static_cast<double>(n2));
                if (j >= 3) log_small += std::log(static_cast<double>(n3));
                detail::add_term(poly, j, log_small, log_r4);
            }
        }
    }
    return poly;
}

// -------------------------------------------------------------------------
// ApproximantParams: R4, cutoff = floor(R4^6), and the sparse P_m table.
// R4 defaults to X^(eps/40) but is overridable: at desk scale that
// default sits barely above 1 and the cutoff collapses to m = 1.
// -------------------------------------------------------------------------
struct ApproximantParams {
    uint64_t X = 0;
    double r4 = 0.0;
    uint64_t cutoff = 0;
    double log_r4 = 0.0;
    std::vector<Cubic> pm;          // dense, index m in [0, cutoff]
    std::vector<uint64_t> support;  // m with nonzero P_m, ascending

    const Cubic& poly(uint64_t m) const { return pm[m]; }

    static ApproximantParams with_r4(uint64_t X, double r4);
    static ApproximantParams from_epsilon(uint64_t X, double epsilon) {
        return with_r4(X, std::pow(static_cast<double>(X), epsilon / 40.0));
    }
    double epsilon_effective() const {
        return 40.0 * log_r4 / std::log(static_cast<double>(X));
    }
};

inline ApproximantParams ApproximantParams::with_r4(uint64_t X, double r4) {
    if (r4 <= 1.0) throw domain_error("ApproximantParams: R4 must be > 1");
    double cutoff_real = std::pow(r4, 6.0);
    if (cutoff_real > static_cast<double>(kCutoffCap))
        throw resource_error("ApproximantParams: R4^6 exceeds cap");
    ApproximantParams ap;
    ap.X = X;
    ap.r4 = r4;
    ap.cutoff = static_cast<uint64_t>(std::floor(cutoff_real));
    ap.log_r4 = std::log(r4);
    ap.pm.assign(ap.cutoff + 1, Cubic{0.0, 0.0, 0.0, 0.0});

    auto rg = detail::part_ranges(r4);
    auto small_range = [&](uint32_t pos, uint32_t j) {
        // parts 1..j are small, j+1..3 big (1-based position)
        return pos <= j;
    };
    // bulk enumeration: for each j, loop the three parts over their ranges
    for (uint32_t j = 0; j <= 3; ++j) {
        uint64_t lo1 = small_range(1, j) ? 1 : rg.big_lo;
        uint64_t hi1 = small_range(1, j) ? rg.small_hi : rg.big_hi;
        for (uint64_t n1 = lo1; n1 <= hi1; ++n1) {
            if (n1 > ap.cutoff) break;
            uint64_t lo2 = small_range(2, j) ? 1 : rg.big_lo;
            uint64_t hi2 = small_range(2, j) ? rg.small_hi : rg.big_hi;
            for (uint64_t n2 = lo2; n2 <= hi2; ++n2) {
                uint64_t m12 = n1 * n2;
                if (m12 > ap.cutoff) break;
                uint64_t lo3 = small_range(3, j) ? 1 : rg.big_lo;
                uint64_t hi3 = small_range(3, j) ? rg.small_hi : rg.big_hi;
                double log12 = 0.0;
                if (j >= 1) log12 += std::log(static_cast<double>(n1));
                if (j >= 2) log12 += std::log(static_cast<double>(n2));
                for (uint64_t n3 = lo3; n3 <= hi3; ++n3) {
                    uint64_t m = m12 * n3;
                    if (m > ap.cutoff) break;
                    double log_small =
                        log12 + (j >= 3 ? std::log(static_cast<double>(n3)) : 0.0);
                    detail::add_term(ap.pm[m], j, log_small, ap.log_r4);
                }
            }
        }
    }
    for (uint64_t m = 1; m <= ap.cutoff; ++m)
        if (!poly_zero(ap.pm[m])) ap.support.push_back(m);
    return ap;
}

// d4#(n) = sum over divisors m <= cutoff of P_m(log n)
inline double d4sharp_point(uint64_t n, const ApproximantParams& ap) {
    if (n < 1) throw domain_error("d4sharp_point: n must be >= 1");
    double t = std::log(static_cast<double>(n));
    double s = 0.0;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        if (d <= ap.cutoff) s += poly_eval(ap.pm[d], t);
        uint64_t q = n / d;
        if (q != d && q <= ap.cutoff) s += poly_eval(ap.pm[q], t);
    }
    return s;
}

// d4# over [X, X+H] inclusive, by iterating multiples of each supported m.
inline std::vector<double> d4sharp_window(uint64_t X, uint64_t H,
                                          const ApproximantParams& ap) {
    if (X < 1) throw domain_error("d4sharp_window: X must be >= 1");
    double work = 0.0;
    for (uint64_t m : ap.support)
        work += static_cast<double>(H) / static_cast<double>(m) + 1.0;
    if (work > 1e9) throw resource_error("d4sharp_window: divisor work exceeds cap");

    std::vector<double> logs(H + 1), out(H + 1, 0.0);
    for (uint64_t i = 0; i <= H; ++i)
        logs[i] = std::log(static_cast<double>(X + i));
    for (uint64_t m : ap.support) {
        const Cubic& c = ap.pm[m];
        uint64_t first = ((X + m - 1) / m) * m;
        for (uint64_t n = first; n <= X + H; n += m)
            out[n - X] += poly_eval(c, logs[n - X]);
    }
    return out;
}

// -------------------------------------------------------------------------
// Main-term comparison: the twisted window sum of d4# against the
// integral main term
//   int_X^{X+H} sum_m sum_{b mod q} e(amb/q) P_m(log u)/(mq) e(beta u) du,
// where sum_{b mod q} e(amb/q) collapses to q when q | m (full geometric
// period; gcd(a, q) = 1) and to 0 otherwise.
// -------------------------------------------------------------------------
struct GapReport {
    cplx direct{0.0, 0.0};
    cplx mainterm{0.0, 0.0};
    double abs_gap = 0.0;
    double paper_errbound = 0.0;
};

inline GapReport main_term_gap(uint64_t q, uint64_t a, double beta, uint64_t X,
                                uint64_t H, const ApproximantParams& ap) {
    if (q < 1 || a < 1 || a > q) throw domain_error("main_term_gap: need 1 <= a <= q");
    if (std::gcd(a, q) != 1) throw domain_error("main_term_gap: a, q must be coprime");

    GapReport rep;
    std::vector<double> w = d4sharp_window(X, H, ap);
    double beta_red = frac1(beta);
    rep.direct = sum_blocked<cplx>(H + 1, [&](uint64_t i) -> cplx {
        uint64_t n = X + i;
        cplx rat = e_frac(static_cast<int64_t>(a % q * (n % q) % q),
                          static_cast<int64_t>(q));
        return w[i] * rat * e(frac1(static_cast<double>(n) * beta_red));
    });

    Cubic comb{0.0, 0.0, 0.0, 0.0}; // sum over q | m of P_m / m
    for (uint64_t m : ap.support) {
        if (m % q) continue;
        for (int i = 0; i < 4; ++i)
            comb[i] += ap.pm[m][i] / static_cast<double>(m);
    }
    auto integrand = [&](double u) -> cplx {
        double t = std::log(u);
        return poly_eval(comb, t) * e(frac1(u * beta_red));
    };
    uint64_t panels = 8 * (1 + static_cast<uint64_t>(std::abs(beta) *
                                                     static_cast<double>(H)));
    rep.mainterm = quadrature::integrate_panels(
        integrand, static_cast<double>(X), static_cast<double>(X + H), panels,
        1e-9 * static_cast<double>(H));

    rep.abs_gap = std::abs(rep.direct - rep.mainterm);
    double eps_eff = ap.epsilon_effective();
    rep.paper_errbound = static_cast<double>(q) *
                         std::pow(static_cast<double>(X), 2.0 * eps_eff) *
                         (1.0 + static_cast<double>(H) * std::abs(beta));
    return rep;
}

// Closed-form antiderivative of (log u)^k: used as a quadrature cross-check.
//   int (log u)^k du = u * sum_{i=0..k} (-1)^(k-i) k!/i! (log u)^i
inline double log_power_integral(double lo, double hi, uint32_t k) {
    auto anti = [k](double u) {
        double t = std::log(u);
        double s = 0.0;
        double fct = 1.0; // k!/i!, built downward from i = k
        double sign = 1.0;
        for (int32_t i = static_cast<int32_t>(k); i >= 0; --i) {
            double tp = (i == 0) ? 1.0 : std::pow(t, static_cast<double>(i));
            s += sign * fct * tp;
            sign = -sign;
            fct *= static_cast<double>(i);
        }
        return u * s;
    };
    return anti(hi) - anti(lo);
}

} // namespace gbseed::approximant
