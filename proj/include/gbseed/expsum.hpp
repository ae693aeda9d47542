// expsum.hpp
// Circle-method exponential sums over the two intervals I1 = (X-H, X] and
// I2 = (0, H]: the geometric sums T_i, the Lambda-weighted S_i, the error
// terms R_i and W_i, discrete spectra on the size-N circle, and the d4 / d4#
// weighted sums S_4.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gbseed/approximant.hpp"
#include "gbseed/arith.hpp"
#include "gbseed/characters.hpp"
#include "gbseed/common.hpp"
#include "gbseed/fft.hpp"

namespace gbseed::expsum {

using arith::DirichletCharacter;
using arith::SieveWindow;

struct IntervalSpec {
    enum Which { I1, I2 };
    Which which;
    uint64_t X, H;

    IntervalSpec(Which w, uint64_t x, uint64_t h) : which(w), X(x), H(h) {
        if (h < 1) throw domain_error("IntervalSpec: H must be >= 1");
        if (h > x) throw domain_error("IntervalSpec: H must be <= X");
    }
    uint64_t lo() const { return which == I1 ? X - H + 1 : 1; } // inclusive
    uint64_t hi() const { return which == I1 ? X : H; }         // inclusive
};

// T(eta) = sum over the interval of e(n eta), evaluated by the Dirichlet
// kernel identity sum = e(eta (lo+hi)/2) sin(pi H eta) / sin(pi eta).
inline cplx t_sum(const IntervalSpec& spec, double eta) {
    double y = frac1(eta);
    double hcount = static_cast<double>(spec.H);
    if (y < 1e-15 || 1.0 - y < 1e-15) return {hcount, 0.0}; // limit branch
    double sd = std::sin(kPi * y);
    double sn = std::sin(kPi * std::fmod(hcount * y, 2.0));
    double mid = static_cast<double>(spec.lo() + spec.hi()) * 0.5;
    return (sn / sd) * e(frac1(mid * y));
}

inline cplx s_sum(const IntervalSpec& spec, double alpha, const SieveWindow& w) {
    if (!w.covers(spec.lo(), spec.hi()))
        throw domain_error("s_sum: window does not cover the interval");
    double a = frac1(alpha);
    uint64_t lo = spec.lo();
    return sum_blocked<cplx>(spec.H, [&](uint64_t i) -> cplx {
        uint64_t n = lo + i;
        double l = w.lambda_at(n);
        if (l == 0.0) return {0.0, 0.0};
        return l * e(frac1(static_cast<double>(n) * a));
    });
}

// R_i(eta, q, a) = S_i(a/q + eta) - mu(q)/phi(q) T_i(eta)
inline cplx r_term(const IntervalSpec& spec, double eta, uint64_t q, uint64_t a,
                   const SieveWindow& w) {
    if (q < 1 || a < 1 || a > q) throw domain_error("r_term: need 1 <= a <= q");
    if (std::gcd(a, q) != 1) throw domain_error("r_term: a, q must be coprime");
    double alpha = static_cast<double>(a) / static_cast<double>(q) + eta;
    double coef = static_cast<double>(arith::mobius_of(q)) /
                  static_cast<double>(arith::phi_of(q));
    return s_sum(spec, alpha, w) - coef * t_sum(spec, eta);
}

// W_i(chi, eta) = sum Lambda(n) chi(n) e(n eta) - [chi principal] T_i(eta)
inline cplx w_term(const IntervalSpec& spec, const DirichletCharacter& chi,
                   double eta, const SieveWindow& w) {
    if (!w.covers(spec.lo(), spec.hi()))
        throw domain_error("w_term: window does not cover the interval");
    double y = frac1(eta);
    uint64_t lo = spec.lo();
    cplx s = sum_blocked<cplx>(spec.H, [&](uint64_t i) -> cplx {
        uint64_t n = lo + i;
        double l = w.lambda_at(n);
        if (l == 0.0) return {0.0, 0.0};
        return l * chi(n) * e(frac1(static_cast<double>(n) * y));
    });
    if (chi.principal) s -= t_sum(spec, eta);
    return s;
}

// -------------------------------------------------------------------------
// SpectrumGrid: values[j] = sum_n w(n) e(n j / N) on the discrete circle.
// -------------------------------------------------------------------------
struct SpectrumGrid {
    uint64_t N = 0;
    std::vector<cplx> values;
};

inline SpectrumGrid spectrum(const std::map<uint64_t, double>& weights,
                             uint64_t N) {
    if (!fft::is_pow2(N)) throw domain_error("spectrum: N must be a power of two");
    if (!weights.empty() && weights.rbegin()->first >= N)
        throw domain_error("spectrum: N too small, support would alias");
    std::vector<cplx> a(N, cplx{0.0, 0.0});
    for (const auto& [n, wn] : weights) a[n] = {wn, 0.0};
    fft::transform(a, +1);
    return {N, std::move(a)};
}

// -------------------------------------------------------------------------
// S_4(alpha; H) = sum_{n=X}^{X+H} w(n) e(n alpha) for w = d4 or d4#.
// The weighted overload is the workhorse for grid scans.
// -------------------------------------------------------------------------
enum class S4Kind { d4, d4sharp };

inline cplx s4_eval_weighted(double alpha, uint64_t X,
                             const std::vector<double>& weights) {
    double a = frac1(alpha);
    return sum_blocked<cplx>(weights.size(), [&](uint64_t i) -> cplx {
        return weights[i] * e(frac1(static_cast<double>(X + i) * a));
    });
}

inline std::vector<double> s4_weights(uint64_t X, uint64_t H,
                                      const SieveWindow& w,
                                      const approximant::ApproximantParams& ap,
                                      S4Kind kind) {
    if (kind == S4Kind::d4sharp) return approximant::d4sharp_window(X, H, ap);
    if (!w.covers(X, X + H))
        throw domain_error("s4_weights: window does not cover [X, X+H]");
    std::vector<double> out(H + 1);
    for (uint64_t i = 0; i <= H; ++i)
        out[i] = static_cast<double>(w.d4_at(X + i));
    return out;
}

inline cplx s4_eval(double alpha, uint64_t X, uint64_t H, const SieveWindow& w,
                    const approximant::ApproximantParams& ap, S4Kind kind) {
    return s4_eval_weighted(alpha, X, s4_weights(X, H, w, ap, kind));
}

} // namespace gbseed::expsum
