// fft.hpp
// Iterative radix-2 transform with a precomputed twiddle table. Sign +1
// evaluates sum w(n) e(+nj/N); sign -1 the conjugate direction. Unnormalized.

#pragma once

#include <cstdint>
#include <vector>

#include "gbseed/common.hpp"

namespace gbseed::fft {

inline bool is_pow2(uint64_t n) { return n && (n & (n - 1)) == 0; }

inline void transform(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    if (!is_pow2(n)) throw domain_error("fft: size must be a power of two");
    if (n == 1) return;

    for (size_t i = 1, j = 0; i < n; ++i) { // bit-reversal permutation
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    std::vector<cplx> tw(n / 2);
    for (size_t j = 0; j < n / 2; ++j)
        tw[j] = e(sign * static_cast<double>(j) / static_cast<double>(n));

    for (size_t len = 2; len <= n; len <<= 1) {
        size_t step = n / len;
        for (size_t i = 0; i < n; i += len) {
            for (size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * tw[j * step];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

// c[s] = sum_{h+k == s mod N} a[h] b[k], N = a.size() = b.size(), pow2.
inline std::vector<double> cyclic_convolve(const std::vector<double>& a,
                                           const std::vector<double>& b) {
    const size_t n = a.size();
    if (n != b.size()) throw domain_error("cyclic_convolve: size mismatch");
    std::vector<cplx> fa(a.begin(), a.end()), fb(b.begin(), b.end());
    transform(fa, +1);
    transform(fb, +1);
    for (size_t j = 0; j < n; ++j) fa[j] *= fb[j];
    transform(fa, -1);
    std::vector<double> c(n);
    for (size_t j = 0; j < n; ++j) c[j] = fa[j].real() / static_cast<double>(n);
    return c;
}

} // namespace gbseed::fft
