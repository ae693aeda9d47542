// goldbach.hpp
// Goldbach representation counts over the short-interval pair
// I1 = (X-H, X], I2 = (0, H]: the Lambda-weighted count R*(2n), the box
// count M*(2n), the singular series (truncated sum and Euler-product closed
// form), the major/minor split of the circle integral, the twisted residue
// double sum, the oscillatory divisor kernel, and the full scan over [X, X+H]*.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "gbseed/approximant.hpp"
#include "gbseed/arith.hpp"
#include "gbseed/common.hpp"
#include "gbseed/digitset.hpp"
#include "gbseed/dissection.hpp"
#include "gbseed/fft.hpp"
#include "gbseed/quadrature.hpp"

namespace gbseed::goldbach {

using arith::SieveWindow;
using dissection::CircleParams;

inline constexpr uint64_t kConvolutionCap = 1ull << 24;

// -------------------------------------------------------------------------
// R*(2n) = sum over h + k = 2n, h in I1, k in I2 of Lambda(h) Lambda(k)
// -------------------------------------------------------------------------
inline double r_star(uint64_t two_n, uint64_t X, uint64_t H,
                     const SieveWindow& w) {
    if (two_n % 2 != 0) throw domain_error("r_star: argument must be even");
    if (H < 1 || H > X) throw domain_error("r_star: need 1 <= H <= X");
    if (!w.covers(1, X)) throw domain_error("r_star: window must cover [1, X]");
    double s = 0.0;
    for (uint64_t k = 1; k <= H; ++k) {
        double lk = w.lambda_at(k);
        if (lk == 0.0) continue;
        if (two_n <= k) break;
        uint64_t h = two_n - k;
        if (h <= X - H || h > X) continue;
        double lh = w.lambda_at(h);
        if (lh != 0.0) s += lh * lk;
    }
    return s;
}

// -------------------------------------------------------------------------
// All R*(s) at once by one cyclic convolution of the Lambda masses of I1
// and I2 on the discrete circle of size N = next power of two > X + H.
// Support: s in (X - H + 1, X + H].
// -------------------------------------------------------------------------
struct RStarTable {
    uint64_t X = 0, H = 0;
    uint64_t s_lo = 0; // first supported s (inclusive)
    std::vector<double> vals;

    double at(uint64_t s) const {
        if (s < s_lo || s >= s_lo + vals.size()) return 0.0;
        return vals[s - s_lo];
    }
    double total() const {
        double t = 0.0;
        for (double v : vals) t += v;
        return t;
    }
    std::map<uint64_t, double> as_map_even_targets() const {
        std::map<uint64_t, double> m;
        uint64_t first = X + 2 - (X % 2); // first even > X
        for (uint64_t s = first; s <= X + H; s += 2) m[s] = at(s);
        return m;
    }
};

inline RStarTable r_star_all(uint64_t X, uint64_t H, const SieveWindow& w) {
    if (H < 1 || H > X) throw domain_error("r_star_all: need 1 <= H <= X");
    if (!w.covers(1, X)) throw domain_error("r_star_all: window must cover [1, X]");
    uint64_t N = next_pow2_u64(X + H + 1);
    if (N > kConvolutionCap)
        throw resource_error("r_star_all: transform size exceeds cap");
    std::vector<double> a(N, 0.0), b(N, 0.0);
    for (uint64_t h = X - H + 1; h <= X; ++h) a[h] = w.lambda_at(h);
    for (uint64_t k = 1; k <= H; ++k) b[k] = w.lambda_at(k);
    auto c = fft::cyclic_convolve(a, b);
    RStarTable t;
    t.X = X;
    t.H = H;
    t.s_lo = X - H + 2;
    t.vals.assign(c.begin() + static_cast<ptrdiff_t>(t.s_lo),
                  c.begin() + static_cast<ptrdiff_t>(X + H + 1));
    return t;
}

// M*(2n) = #{k in (0, H] : 2n - k in (X - H, X]}, in closed form.
inline uint64_t m_star(uint64_t two_n, uint64_t X, uint64_t H) {
    if (two_n % 2 != 0) throw domain_error("m_star: argument must be even");
    int64_t lo = std::max<int64_t>(1, static_cast<int64_t>(two_n) -
                                          static_cast<int64_t>(X));
    int64_t hi = std::min<int64_t>(
        static_cast<int64_t>(H),
        static_cast<int64_t>(two_n) - static_cast<int64_t>(X) +
            static_cast<int64_t>(H) - 1);
    return hi >= lo ? static_cast<uint64_t>(hi - lo + 1) : 0;
}

// -------------------------------------------------------------------------
// Singular series sum_q mu(q)^2 / phi(q)^2 c_q(-2n): truncated partial sum
// with a crude tail estimate, and the Euler-product closed form
// 2 C2 prod_{p | n, p odd} (p-1)/(p-2) as the convergence oracle.
// -------------------------------------------------------------------------
struct SingularSeriesTable {
    uint64_t qmax = 0;
    std::vector<int8_t> mu;
    std::vector<uint32_t> phi;

    explicit SingularSeriesTable(uint64_t qmax_) : qmax(qmax_) {
        if (qmax < 1) throw domain_error("SingularSeriesTable: qmax must be >= 1");
        if (qmax > 10'000'000)
            throw resource_error("SingularSeriesTable: qmax exceeds cap");
        mu.assign(qmax + 1, 1);
        phi.assign(qmax + 1, 0);
        for (uint64_t i = 0; i <= qmax; ++i) phi[i] = static_cast<uint32_t>(i);
        std::vector<uint8_t> sq(qmax + 1, 1);
        for (uint64_t p = 2; p <= qmax; ++p) {
            if (phi[p] != p) continue; // not prime
            for (uint64_t m = p; m <= qmax; m += p) {
                phi[m] -= phi[m] / static_cast<uint32_t>(p);
                mu[m] = static_cast<int8_t>(-mu[m]);
            }
            if (p * p <= qmax)
                for (uint64_t m = p * p; m <= qmax; m += p * p) sq[m] = 0;
        }
        for (uint64_t i = 0; i <= qmax; ++i)
            if (!sq[i]) mu[i] = 0;
    }

    // sum_{q <= qmax} mu(q)^2 / phi(q)^2 c_q(m); c_q(-m) = c_q(m)
    double value(uint64_t m) const {
        double s = 0.0;
        for (uint64_t q = 1; q <= qmax; ++q) {
            if (mu[q] == 0) continue;
            uint64_t g = std::gcd(q, m);
            uint64_t qg = q / g;
            int8_t mu_qg = mu[qg]; // q squarefree, so qg is too
            if (mu_qg == 0) continue;
            double phq = static_cast<double>(phi[q]);
            double cq = static_cast<double>(mu_qg) * phq /
                        static_cast<double>(phi[qg]);
            s += cq / (phq * phq);
        }
        return s;
    }

    // crude bound on sum_{q > qmax} gcd(m, q) / phi(q)^2, via
    // sum_{j > M} 1/phi(j)^2 <= 5/M (desk-validated envelope; the measured
    // constant hovers near 4.43)
    double tail_bound(uint64_t m) const {
        double t = 0.0;
        for (uint64_t d = 1; d * d <= m; ++d) {
            if (m % d) continue;
            for (uint64_t dd : {d, m / d}) {
                if (dd != d && d * d == m) continue;
                double phd = static_cast<double>(arith::phi_of(dd));
                double M = std::max(1.0, static_cast<double>(qmax) /
                                             static_cast<double>(dd));
                t += static_cast<double>(dd) / (phd * phd) * 5.0 / M;
            }
        }
        return t;
    }
};

struct SingularTruncated {
    double value = 0.0;
    double tail_bound = 0.0;
};

inline SingularTruncated singular_truncated(uint64_t m, uint64_t qmax) {
    SingularSeriesTable t(qmax);
    return {t.value(m), t.tail_bound(m)};
}

// C2 = prod_{p > 2} (1 - 1/(p-1)^2) from the defining product over p <= 10^7,
// with a prime-density estimate for the tail.
inline double twin_prime_constant() {
    static const double c2 = [] {
        const uint64_t P = 10'000'000;
        auto primes = arith::sieve_primes(P);
        long double log_c2 = 0.0L;
        for (uint64_t p : primes.primes) {
            if (p == 2) continue;
            long double d = static_cast<long double>(p - 1);
            log_c2 += std::log1p(-1.0L / (d * d));
        }
        // tail: sum_{p > P} 1/(p-1)^2 ~ int_P^inf dt / (log t (t-1)^2),
        // composite Simpson over geometric panels
        long double tail = 0.0L;
        long double lo = static_cast<long double>(P);
        for (int panel = 0; panel < 40; ++panel) {
            long double hi = 2.0L * lo;
            const int n = 64;
            long double h = (hi - lo) / n;
            long double acc = 0.0L;
            for (int i = 0; i <= n; ++i) {
                long double t = lo + h * i;
                long double f = 1.0L / (std::log(t) * (t - 1.0L) * (t - 1.0L));
                long double wgt = (i == 0 || i == n) ? 1.0L : (i % 2 ? 4.0L : 2.0L);
                acc += wgt * f;
            }
            tail += acc * h / 3.0L;
            lo = hi;
            if (acc * h / 3.0L < 1e-18L) break;
        }
        return static_cast<double>(std::exp(log_c2 - tail));
    }();
    return c2;
}

inline double singular_closed(uint64_t two_n) {
    if (two_n % 2 != 0 || two_n < 4)
        throw domain_error("singular_closed: argument must be even and >= 4");
    double s = 2.0 * twin_prime_constant();
    for (const auto& pp : arith::factorize(two_n)) {
        if (pp.p == 2) continue;
        double p = static_cast<double>(pp.p);
        s *= (p - 1.0) / (p - 2.0);
    }
    return s;
}

// -------------------------------------------------------------------------
// arc_split: integral of S1 S2 e(-2n alpha) over the union of major windows
// [r/q - beta, r/q + beta]. With the convolution masses c[s] in hand the
// window integrals are exact:
//   int_u^v e((s-2n) alpha) d alpha = e(m (u+v)/2) sin(pi m (v-u)) / (pi m).
// When the windows are pairwise disjoint the sum over r collapses to the
// Ramanujan sum c_q(s - 2n); otherwise the merged union is integrated
// interval by interval. minor is defined by subtraction from R*(2n), which
// inherits the exactness of the discrete full-circle identity.
// -------------------------------------------------------------------------
struct ArcSplit {
    double major = 0.0;
    double minor = 0.0;
    double r_star = 0.0;
};

namespace detail {

inline double interval_kernel(int64_t m, double mid, double width, double& im) {
    if (m == 0) {
        im = 0.0;
        return width;
    }
    double md = static_cast<double>(m);
    double k = std::sin(kPi * md * width) / (kPi * md);
    cplx ph = e(frac1(md * mid));
    im = k * ph.imag();
    return k * ph.real();
}

} // namespace detail

inline ArcSplit arc_split(uint64_t two_n, const CircleParams& p,
                          const SieveWindow& w,
                          const RStarTable* precomputed = nullptr) {
    if (two_n % 2 != 0) throw domain_error("arc_split: argument must be even");
    RStarTable local;
    if (!precomputed) local = r_star_all(p.X, p.H, w);
    const RStarTable& conv = precomputed ? *precomputed : local;

    const double beta = p.betadelta;
    std::vector<std::pair<double, double>> iv;
    for (uint64_t q = 1; q <= p.Q; ++q)
        for (uint64_t r = 1; r <= q; ++r) {
            if (std::gcd(r, q) != 1) continue;
            double c = static_cast<double>(r) / static_cast<double>(q);
            iv.push_back({c - beta, c + beta});
        }
    std::sort(iv.begin(), iv.end());
    bool disjoint = true;
    for (size_t i = 1; i < iv.size(); ++i)
        if (iv[i].first < iv[i - 1].second) {
            disjoint = false;
            break;
        }

    const uint64_t n_s = conv.vals.size();
    double major = 0.0, major_im = 0.0;

    if (disjoint) {
        // per-q Ramanujan route: sum_r e(m r/q) = c_q(m)
        SingularSeriesTable tbl(p.Q); // mu, phi up to Q
        std::vector<double> kern(n_s);
        for (uint64_t i = 0; i < n_s; ++i) {
            int64_t m = static_cast<int64_t>(conv.s_lo + i) -
                        static_cast<int64_t>(two_n);
            kern[i] = (m == 0) ? 2.0 * beta
                               : std::sin(2.0 * kPi * static_cast<double>(m) *
                                          beta) /
                                     (kPi * static_cast<double>(m));
        }
        for (uint64_t q = 1; q <= p.Q; ++q) {
            double acc = 0.0;
            for (uint64_t i = 0; i < n_s; ++i) {
                if (conv.vals[i] == 0.0) continue;
                int64_t m = static_cast<int64_t>(conv.s_lo + i) -
                            static_cast<int64_t>(two_n);
                uint64_t am = static_cast<uint64_t>(m < 0 ? -m : m);
                uint64_t g = std::gcd(q, am);
                uint64_t qg = q / g;
                if (tbl.mu[qg] == 0) continue;
                double cq = static_cast<double>(tbl.mu[qg]) *
                            static_cast<double>(tbl.phi[q]) /
                            static_cast<double>(tbl.phi[qg]);
                acc += conv.vals[i] * cq * kern[i];
            }
            major += acc;
        }
    } else {
        std::vector<std::pair<double, double>> merged;
        for (const auto& seg : iv) {
            if (!merged.empty() && seg.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, seg.second);
            else
                merged.push_back(seg);
        }
        for (const auto& [u, v] : merged) {
            double mid = 0.5 * (u + v), width = v - u;
            for (uint64_t i = 0; i < n_s; ++i) {
                if (conv.vals[i] == 0.0) continue;
                int64_t m = static_cast<int64_t>(conv.s_lo + i) -
                            static_cast<int64_t>(two_n);
                double im = 0.0;
                major += conv.vals[i] * detail::interval_kernel(m, mid, width, im);
                major_im += conv.vals[i] * im;
            }
        }
    }

    ArcSplit out;
    out.r_star = conv.at(two_n);
    out.major = major;
    out.minor = out.r_star - major;
    (void)major_im; // symmetric window set: imaginary part cancels
    return out;
}

// -------------------------------------------------------------------------
// Twisted residue double sum, with b running over residues mod q
// divisible by l:
//   sum_{b mod q, l | b} sum*_{a mod q} e(a (m' b - n) / q)
// -------------------------------------------------------------------------
inline cplx residue_double_sum(uint64_t q, uint64_t l, uint64_t mprime,
                               int64_t n) {
    if (q < 1 || l < 1) throw domain_error("residue_double_sum: q, l must be >= 1");
    if (q % l != 0) throw domain_error("residue_double_sum: l must divide q");
    if (std::gcd(mprime, q) != 1)
        throw domain_error("residue_double_sum: m' must be coprime to q");
    std::vector<cplx> root(q);
    for (uint64_t j = 0; j < q; ++j)
        root[j] = e_frac(static_cast<int64_t>(j), static_cast<int64_t>(q));
    int64_t qi = static_cast<int64_t>(q);
    cplx s{0.0, 0.0};
    for (uint64_t b = 0; b < q; b += l) {
        int64_t mb = static_cast<int64_t>(mprime % q * b % q) - (n % qi);
        mb %= qi;
        if (mb < 0) mb += qi;
        for (uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            s += root[static_cast<uint64_t>(static_cast<int64_t>(a) * mb % qi)];
        }
    }
    return s;
}

// -------------------------------------------------------------------------
// Oscillatory divisor kernel
//   K(H, m', l2, n, q) = int_X^{X+H} P_{m' l2}(log u) / (q (u - n))
//                                    sin(2 pi beta (u - n)) du,
// with the removable singularity at u = n handled by the sinc limit.
// -------------------------------------------------------------------------
inline double k_kernel_with_beta(uint64_t Hv, uint64_t mprime, uint64_t l2,
                                 uint64_t n, uint64_t q, uint64_t X,
                                 double beta,
                                 const approximant::ApproximantParams& ap) {
    if (q < 1) throw domain_error("k_kernel: q must be >= 1");
    uint64_t m = mprime * l2;
    if (m < 1 || m > ap.cutoff)
        throw domain_error("k_kernel: m' l2 must be within the cutoff");
    const approximant::Cubic& poly = ap.pm[m];
    if (approximant::poly_zero(poly) || beta == 0.0) return 0.0;
    const double nn = static_cast<double>(n);
    const double qq = static_cast<double>(q);
    auto f = [&](double u) -> cplx {
        double d = u - nn;
        double w = 2.0 * kPi * beta * d;
        double osc;
        if (std::abs(w) < 1e-6)
            osc = 2.0 * kPi * beta * (1.0 - w * w / 6.0); // sin(w)/d as d -> 0
        else
            osc = std::sin(w) / d;
        return {approximant::poly_eval(poly, std::log(u)) / qq * osc, 0.0};
    };
    double x0 = static_cast<double>(X);
    double x1 = static_cast<double>(X + Hv);
    double scale = std::abs(approximant::poly_eval(poly, std::log(x0))) + 1.0;
    uint64_t panels =
        16 + 8 * static_cast<uint64_t>(beta * static_cast<double>(Hv));
    cplx r = quadrature::integrate_panels(f, x0, x1, panels,
                                          1e-10 * scale * (x1 - x0) / qq + 1e-14);
    return r.real();
}

inline double k_kernel(uint64_t Hv, uint64_t mprime, uint64_t l2, uint64_t n,
                       uint64_t q, const CircleParams& p,
                       const approximant::ApproximantParams& ap) {
    return k_kernel_with_beta(Hv, mprime, l2, n, q, p.X, p.betadelta, ap);
}

// -------------------------------------------------------------------------
// Full scan over the even members of [X, X+H]*
// -------------------------------------------------------------------------
struct GoldbachRecord {
    uint64_t two_n = 0;
    double r_star = 0.0;
    uint64_t m_star = 0;
    double sigma_trunc = 0.0;
    double sigma_trunc_tail = 0.0;
    double sigma_closed = 0.0;
    double predicted = 0.0; // m_star * sigma_closed
    std::optional<double> ratio; // r_star / predicted, absent if predicted == 0
    bool has_split_rep = false;  // primes p in I1, p' in I2 with p + p' = 2n
    bool has_any_rep = false;    // any prime pair at all
};

struct ScanReport {
    uint64_t X = 0, H = 0;
    uint32_t base = 0, forbidden = 0;
    double epsilon = 0.0;
    double r4 = 0.0;
    uint64_t sigma_qmax = 0;
    uint64_t set_size = 0;       // all members, odd and even
    uint64_t even_count = 0;
    double sum_d4 = 0.0;
    double sum_d4sharp = 0.0;
    double sum_d2_sq = 0.0;
    double d4_log7_ratio = 0.0;  // sum_d4 / ((log X)^7 |set|)
    uint64_t exceptional_split = 0; // records without a split representation
    uint64_t exceptional_any = 0;
    double min_ratio = 0.0;
    double median_ratio = 0.0;
    std::vector<GoldbachRecord> records;
};

inline ScanReport scan(const digitset::DigitSystem& sys, uint64_t X, uint64_t H,
                       const CircleParams& params,
                       const approximant::ApproximantParams& ap,
                       uint64_t sigma_qmax = 1000) {
    if (H < 1 || H > X) throw domain_error("scan: need 1 <= H <= X");
    ScanReport rep;
    rep.X = X;
    rep.H = H;
    rep.base = sys.base;
    rep.forbidden = sys.forbidden;
    rep.epsilon = params.epsilon;
    rep.r4 = ap.r4;
    rep.sigma_qmax = sigma_qmax;

    SieveWindow w = arith::build_window(1, X + H + 1);
    RStarTable conv = r_star_all(X, H, w);
    SingularSeriesTable sing(sigma_qmax);
    std::vector<double> d4s = approximant::d4sharp_window(X, H, ap);

    std::vector<uint64_t> primes_i2; // primes in (0, H]
    for (uint64_t k = 2; k <= H; ++k)
        if (w.prime_at(k)) primes_i2.push_back(k);

    digitset::RestrictedSet set(sys, X + 1, X + H);
    std::vector<double> ratios;
    digitset::for_each_member(set, [&](uint64_t n) {
        ++rep.set_size;
        double d4 = static_cast<double>(w.d4_at(n));
        double d2 = static_cast<double>(w.d2_at(n));
        rep.sum_d4 += d4;
        rep.sum_d2_sq += d2 * d2;
        rep.sum_d4sharp += d4s[n - X];
        if (n % 2 != 0) return;

        GoldbachRecord rec;
        rec.two_n = n;
        rec.r_star = conv.at(n);
        rec.m_star = m_star(n, X, H);
        rec.sigma_trunc = sing.value(n);
        rec.sigma_trunc_tail = sing.tail_bound(n);
        rec.sigma_closed = singular_closed(n);
        rec.predicted = static_cast<double>(rec.m_star) * rec.sigma_closed;
        if (rec.predicted > 0.0) {
            rec.ratio = rec.r_star / rec.predicted;
            ratios.push_back(*rec.ratio);
        }
        for (uint64_t k : primes_i2) {
            uint64_t h = n - k;
            if (h <= X - H || h > X) continue;
            if (w.prime_at(h)) {
                rec.has_split_rep = true;
                break;
            }
        }
        for (uint64_t pr = 2; pr * 2 <= n; ++pr) {
            if (!w.prime_at(pr)) continue;
            if (w.prime_at(n - pr)) {
                rec.has_any_rep = true;
                break;
            }
        }
        if (!rec.has_split_rep) ++rep.exceptional_split;
        if (!rec.has_any_rep) ++rep.exceptional_any;
        rep.records.push_back(std::move(rec));
    });

    rep.even_count = rep.records.size();
    double logx = std::log(static_cast<double>(X));
    rep.d4_log7_ratio = rep.sum_d4 / (std::pow(logx, 7.0) *
                                    static_cast<double>(rep.set_size));
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        rep.min_ratio = ratios.front();
        rep.median_ratio = ratios[ratios.size() / 2];
    }
    return rep;
}

} // namespace gbseed::goldbach
