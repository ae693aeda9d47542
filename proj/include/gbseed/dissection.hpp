// dissection.hpp
// Farey dissection of [1/Q, 1+1/Q], major/minor classification with the
// beta(delta) windows, best rational approximation via continued fractions,
// the constructive Diophantine finder, and the Type-I inverse audit.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "gbseed/common.hpp"

namespace gbseed::dissection {

inline constexpr uint64_t kFareyOrderCap = 10'000;

// -------------------------------------------------------------------------
// CircleParams: delta = X^(-eps), Q = ceil(1/delta),
// D(delta) = (log X)^(-log_exponent), beta(delta) = 1/(H delta D(delta)).
// The constructor enforces beta * q * Q <= 1 for all q <= Q, i.e.
// beta * Q^2 <= 1, so every major window fits inside its Farey arc bound.
// The asymptotic default log_exponent = 3^6 + 1 is unusable at desk scale;
// pick a small (possibly negative) exponent to reach a valid regime.
// -------------------------------------------------------------------------
struct CircleParams {
    uint64_t X = 0, H = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    uint64_t Q = 0;
    double log_exponent = 730.0; // 3^6 + 1
    double Ddelta = 0.0;
    double betadelta = 0.0;

    CircleParams(uint64_t x, uint64_t h, double eps, double log_exp = 730.0)
        : X(x), H(h), epsilon(eps), log_exponent(log_exp) {
        if (x < 3) throw domain_error("CircleParams: X must be >= 3");
        if (h < 1) throw domain_error("CircleParams: H must be >= 1");
        if (!(eps > 0.0)) throw domain_error("CircleParams: epsilon must be > 0");
        delta = std::pow(static_cast<double>(x), -eps);
        if (!(delta > 0.0 && delta < 1.0))
            throw domain_error("CircleParams: delta must be in (0, 1)");
        Q = static_cast<uint64_t>(std::ceil(1.0 / delta - 1e-9));
        if (Q > kFareyOrderCap)
            throw resource_error("CircleParams: Q exceeds Farey order cap");
        Ddelta = std::pow(std::log(static_cast<double>(x)), -log_exponent);
        betadelta = 1.0 / (static_cast<double>(h) * delta * Ddelta);
        double qsq = static_cast<double>(Q) * static_cast<double>(Q);
        if (!(betadelta > 0.0) || betadelta * qsq > 1.0)
            throw domain_error(
                "CircleParams: beta(delta) * Q^2 > 1; the major windows would "
                "overflow their Farey arcs. Lower epsilon or log_exponent.");
    }

    // largest log_exponent that satisfies the containment check with a
    // factor-2 margin (beta Q^2 = 1/2); used by the CLI to auto-resolve.
    static double workable_log_exponent(uint64_t x, uint64_t h, double eps) {
        double delta = std::pow(static_cast<double>(x), -eps);
        double q = std::ceil(1.0 / delta - 1e-9);
        double d_needed = 2.0 * q * q / (static_cast<double>(h) * delta);
        return -std::log(d_needed) / std::log(std::log(static_cast<double>(x)));
    }
};

// -------------------------------------------------------------------------
// Farey arcs. farey_dissection(Q) tiles [1/Q, 1+1/Q] with the mediant arcs
// of the Farey fractions of order Q in (0, 1]; the fraction 1/Q contributes
// a piece at each end of the domain (its circle arc is cut at 1/Q), so the
// list has sum phi(q) + 1 entries for Q >= 2 and exactly one for Q = 1.
// -------------------------------------------------------------------------
struct FareyArc {
    uint64_t q = 1, r = 1;  // reduced fraction label
    double center = 0.0;    // r/q, shifted by +1 for the wrapped piece
    double left = 0.0, right = 0.0;

    std::pair<double, double> major_window(double beta) const {
        return {center - beta, center + beta};
    }
};

inline std::vector<FareyArc> farey_dissection(uint64_t Q) {
    if (Q < 1 || Q > kFareyOrderCap)
        throw domain_error("farey_dissection: need 1 <= Q <= 10^4");
    std::vector<FareyArc> arcs;
    if (Q == 1) {
        arcs.push_back({1, 1, 1.0, 1.0, 2.0});
        return arcs;
    }
    // Farey sequence of order Q from 1/Q to 1/1 (numerator, denominator)
    std::vector<std::pair<uint64_t, uint64_t>> f;
    uint64_t a = 0, b = 1, c = 1, d = Q; // neighbors 0/1, 1/Q
    f.push_back({c, d});
    while (!(c == 1 && d == 1)) {
        uint64_t k = (Q + b) / d;
        uint64_t c2 = k * c - a, d2 = k * d - b;
        a = c, b = d, c = c2, d = d2;
        f.push_back({c, d});
    }
    auto mediant = [](std::pair<uint64_t, uint64_t> u,
                      std::pair<uint64_t, uint64_t> v) {
        return static_cast<double>(u.first + v.first) /
               static_cast<double>(u.second + v.second);
    };
    const size_t K = f.size();
    // left fragment of the 1/Q arc
    arcs.push_back({Q, 1, 1.0 / static_cast<double>(Q),
                    1.0 / static_cast<double>(Q), mediant(f[0], f[1])});
    for (size_t i = 1; i + 1 < K; ++i) {
        arcs.push_back({f[i].second, f[i].first,
                        static_cast<double>(f[i].first) /
                            static_cast<double>(f[i].second),
                        mediant(f[i - 1], f[i]), mediant(f[i], f[i + 1])});
    }
    // arc at 1/1, whose right neighbor is the wrapped 1/Q at (Q+1)/Q
    double m_right = static_cast<double>(Q + 2) / static_cast<double>(Q + 1);
    arcs.push_back({1, 1, 1.0, mediant(f[K - 2], f[K - 1]), m_right});
    // right fragment of the 1/Q arc, shifted by +1
    arcs.push_back({Q, 1, 1.0 + 1.0 / static_cast<double>(Q), m_right,
                    1.0 + 1.0 / static_cast<double>(Q)});
    return arcs;
}

// -------------------------------------------------------------------------
// classify: Major(q, r) iff |alpha - r/q| <= beta(delta) for a reduced r/q
// with q <= Q, smallest q winning ties. Invariant under alpha -> alpha + 1.
// -------------------------------------------------------------------------
struct ArcClass {
    bool major = false;
    uint64_t q = 0, r = 0;
};

inline ArcClass classify(double alpha, const CircleParams& p) {
    double y = frac1(alpha);
    if (y < 1.0 / static_cast<double>(p.Q)) y += 1.0; // into [1/Q, 1+1/Q)
    for (uint64_t q = 1; q <= p.Q; ++q) {
        double qy = y * static_cast<double>(q);
        uint64_t r = static_cast<uint64_t>(std::llround(qy));
        if (r < 1) continue;
        if (std::gcd(r, q) != 1) continue;
        double dist = std::abs(y - static_cast<double>(r) / static_cast<double>(q));
        if (dist <= p.betadelta) {
            uint64_t rc = r % q;
            if (rc == 0) rc = q; // canonical 1 <= r <= q
            return {true, q, rc};
        }
    }
    return {false, 0, 0};
}

// -------------------------------------------------------------------------
// rational_approx: among continued-fraction convergent denominators
// q <= qmax, the one minimizing ||q alpha||.
// -------------------------------------------------------------------------
struct RationalApprox {
    uint64_t q = 1;
    double dist = 0.0;
};

inline RationalApprox rational_approx(double alpha, uint64_t qmax) {
    if (qmax < 1) throw domain_error("rational_approx: qmax must be >= 1");
    std::vector<uint64_t> dens;
    dens.push_back(1);
    double x = alpha;
    uint64_t k_prev = 0, k_cur = 1;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(x);
        double frac = x - a;
        if (frac < 1e-14) break;
        x = 1.0 / frac;
        double a_next = std::floor(x);
        if (a_next > 1e18) break;
        uint64_t k_next = static_cast<uint64_t>(a_next) * k_cur + k_prev;
        if (k_next > qmax || k_next < k_cur) break;
        k_prev = k_cur;
        k_cur = k_next;
        dens.push_back(k_cur);
    }
    RationalApprox best{1, dist_to_int(alpha)};
    for (uint64_t q : dens) {
        double d = dist_to_int(static_cast<double>(q) * alpha);
        if (d < best.dist) best = {q, d};
    }
    return best;
}

// -------------------------------------------------------------------------
// vinogradov_find: scan a in [A, 2A] for ||a alpha|| <= (A/H)/delta; if at
// least D(delta) A >= 1 values qualify, recover q <= D(delta)^-1 with
// ||q alpha|| <= q beta(delta) from differences of qualifying values,
// mirroring the pigeonhole proof. Every returned q is verified post-hoc.
// -------------------------------------------------------------------------
inline std::optional<uint64_t> vinogradov_find(double alpha, uint64_t A,
                                               const CircleParams& p) {
    if (A < 1) throw domain_error("vinogradov_find: A must be >= 1");
    if (A > 10'000'000) throw resource_error("vinogradov_find: A exceeds cap");
    double need = p.Ddelta * static_cast<double>(A);
    if (need < 1.0) return std::nullopt; // hypothesis requires D(delta) A >= 1
    double threshold = (static_cast<double>(A) / static_cast<double>(p.H)) / p.delta;

    std::vector<uint64_t> good;
    for (uint64_t a = A; a <= 2 * A; ++a)
        if (dist_to_int(static_cast<double>(a) * alpha) <= threshold)
            good.push_back(a);
    if (static_cast<double>(good.size()) < need) return std::nullopt;

    uint64_t qcap = static_cast<uint64_t>(std::floor(1.0 / p.Ddelta));
    auto verified = [&](uint64_t q) {
        return q >= 1 && q <= qcap &&
               dist_to_int(static_cast<double>(q) * alpha) <=
                   static_cast<double>(q) * p.betadelta;
    };
    std::set<uint64_t> diffs;
    for (size_t i = 0; i < good.size(); ++i)
        for (size_t j = i + 1; j < good.size(); ++j) {
            uint64_t d = good[j] - good[i];
            if (d > qcap) break;
            diffs.insert(d);
        }
    for (uint64_t d : diffs)
        if (verified(d)) return d;
    for (uint64_t q = 1; q <= qcap; ++q) // fallback: direct scan
        if (verified(q)) return q;
    return std::nullopt;
}

// -------------------------------------------------------------------------
// Type-I inverse audit, falsifiable at fixed scale: given
// f = alpha * beta with alpha supported on [1, A] and beta of one of the two
// bounded-variation shapes the d4# decomposition needs, check whether a
// large twisted sum forces a good rational approximation of the frequency.
// -------------------------------------------------------------------------
struct BetaSpec {
    enum Kind { ConstantOne, LogPower };
    Kind kind = ConstantOne;
    uint32_t log_power = 0;   // exponent l for (log n)^l / (log X)^l
};

struct TypeIVerdict {
    enum Branch {
        DegenerateSmallH, // H <= delta^-3 A: the "H << delta^-O(1) A" branch
        BelowThreshold,   // |sum| < delta H
        WitnessFound,
        WitnessNotFound
    };
    Branch branch = BelowThreshold;
    double sum_abs = 0.0;
    double threshold = 0.0;
    uint64_t witness_q = 0;
    double witness_dist = 0.0;
    double c1 = 10.0, c2 = 10.0;
};

inline TypeIVerdict typeI_audit(const std::map<uint64_t, double>& alpha_coeffs,
                                const BetaSpec& beta, const CircleParams& p,
                                double alpha, double c1 = 10.0, double c2 = 10.0) {
    if (alpha_coeffs.empty()) throw domain_error("typeI_audit: empty alpha");
    // partial-sum condition: sum_{n <= N} |alpha(n)|^2 <= N / delta at every
    // support point N (sufficient for all N by monotonicity between points)
    double run = 0.0;
    for (const auto& [n, an] : alpha_coeffs) {
        if (n < 1) throw domain_error("typeI_audit: support must be >= 1");
        run += an * an;
        if (run > static_cast<double>(n) / p.delta)
            throw domain_error("typeI_audit: alpha violates the l2 growth bound");
    }
    uint64_t A = alpha_coeffs.rbegin()->first;

    TypeIVerdict v;
    v.c1 = c1;
    v.c2 = c2;
    v.threshold = p.delta * static_cast<double>(p.H);
    if (static_cast<double>(p.H) <=
        std::pow(p.delta, -3.0) * static_cast<double>(A)) {
        v.branch = TypeIVerdict::DegenerateSmallH;
        return v;
    }

    double logx = std::log(static_cast<double>(p.X));
    auto beta_val = [&](uint64_t n) {
        if (beta.kind == BetaSpec::ConstantOne) return 1.0;
        return std::pow(std::log(static_cast<double>(n)) / logx,
                        static_cast<double>(beta.log_power));
    };
    double a_red = frac1(alpha);
    std::vector<cplx> terms;
    for (const auto& [d, ad] : alpha_coeffs) {
        if (ad == 0.0) continue;
        uint64_t first = ((p.X + d - 1) / d) * d;
        for (uint64_t n = first; n <= p.X + p.H; n += d)
            terms.push_back(ad * beta_val(n / d) *
                            e(frac1(static_cast<double>(n) * a_red)));
    }
    v.sum_abs = std::abs(sum_pairwise(std::move(terms)));

    if (v.sum_abs < v.threshold) {
        v.branch = TypeIVerdict::BelowThreshold;
        return v;
    }
    uint64_t qcap = static_cast<uint64_t>(c1 / p.Ddelta);
    for (uint64_t q = 1; q <= qcap; ++q) {
        double dist = dist_to_int(static_cast<double>(q) * alpha);
        if (dist <= c2 * static_cast<double>(q) * p.betadelta) {
            v.branch = TypeIVerdict::WitnessFound;
            v.witness_q = q;
            v.witness_dist = dist;
            return v;
        }
    }
    v.branch = TypeIVerdict::WitnessNotFound;
    return v;
}

// -------------------------------------------------------------------------
// Seeded low-discrepancy sampling of the minor arcs: golden-ratio walk over
// [1/Q, 1+1/Q), rejecting major points. Deterministic given the seed.
// -------------------------------------------------------------------------
inline std::vector<double> sample_minor_arcs(const CircleParams& p,
                                             uint64_t count, uint64_t seed) {
    constexpr double kGolden = 0.61803398874989484820;
    // splitmix-style scramble of the seed into a phase in [0, 1)
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    double u = static_cast<double>(z >> 11) * 0x1p-53;

    std::vector<double> out;
    out.reserve(count);
    double base = 1.0 / static_cast<double>(p.Q);
    uint64_t tries = 0, cap = 1000 * (count + 1);
    while (out.size() < count) {
        if (++tries > cap)
            throw numeric_error("sample_minor_arcs: major arcs cover the grid");
        u += kGolden;
        u -= std::floor(u);
        double alpha = base + u;
        if (!classify(alpha, p).major) out.push_back(alpha);
    }
    return out;
}

} // namespace gbseed::dissection
