// common.hpp
// Shared plumbing: error taxonomy, the e(x) = exp(2*pi*i*x) convention,
// stable summation, and small integer helpers.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbseed {

// -------------------------------------------------------------------------
// Error taxonomy. The CLI maps these onto exit codes:
//   domain_error   -> 1 (precondition / invalid configuration)
//   resource_error -> 2 (cap exceeded)
//   numeric_error  -> 2 (quadrature or transform failure)
//   format_error   -> 2 (corrupt cache / report file)
// -------------------------------------------------------------------------
struct domain_error : std::invalid_argument {
    explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct format_error : std::runtime_error {
    explicit format_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;

using cplx = std::complex<double>;

// Fractional part in [0, 1). Exact for x >= 0 (Sterbenz), which is what
// keeps e(n*alpha) consistent under alpha -> alpha + 1.
inline double frac1(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0; // floor rounding at the boundary
    return f;
}

// e(x) = exp(2*pi*i*x). The single place the exponential convention lives.
inline cplx e(double x) {
    double t = 2.0 * kPi * frac1(x);
    return {std::cos(t), std::sin(t)};
}

// e(num/den) with the phase reduced in integer arithmetic first.
inline cplx e_frac(int64_t num, int64_t den) {
    num %= den;
    if (num < 0) num += den;
    return e(static_cast<double>(num) / static_cast<double>(den));
}

// Distance to the nearest integer.
inline double dist_to_int(double x) {
    double f = frac1(x);
    return std::min(f, 1.0 - f);
}

// -------------------------------------------------------------------------
// Blocked pairwise summation: accumulate fixed-size blocks, then reduce the
// block partials pairwise. Keeps the error growth logarithmic without the
// memory cost of materialising every term.
// -------------------------------------------------------------------------
namespace detail {
template <typename T>
T pairwise_reduce(std::vector<T>& parts) {
    if (parts.empty()) return T{};
    size_t n = parts.size();
    while (n > 1) {
        size_t half = (n + 1) / 2;
        for (size_t i = 0; i + half < n; ++i) parts[i] += parts[i + half];
        n = half;
    }
    return parts[0];
}
} // namespace detail

template <typename T, typename F>
T sum_blocked(uint64_t count, F&& term) {
    constexpr uint64_t kBlock = 256;
    std::vector<T> parts;
    parts.reserve(count / kBlock + 1);
    uint64_t i = 0;
    while (i < count) {
        T acc{};
        uint64_t stop = std::min(count, i + kBlock);
        for (; i < stop; ++i) acc += term(i);
        parts.push_back(acc);
    }
    return detail::pairwise_reduce(parts);
}

template <typename T>
T sum_pairwise(std::vector<T> terms) {
    return detail::pairwise_reduce(terms);
}

// -------------------------------------------------------------------------
// Integer helpers
// -------------------------------------------------------------------------
inline uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline uint64_t pow_u64(uint64_t base, uint32_t exp) {
    uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

inline uint64_t next_pow2_u64(uint64_t n) {
    uint64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline uint64_t binom_u64(uint32_t n, uint32_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    uint64_t r = 1;
    for (uint32_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace gbseed
