// quadrature.hpp
// Adaptive Simpson integration (complex-valued), with a panel wrapper for
// oscillatory integrands: split into roughly one panel per oscillation and
// let the adaptive rule polish each panel.

#pragma once

#include <cmath>
#include <cstdint>

#include "gbseed/common.hpp"

namespace gbseed::quadrature {

namespace detail {

inline cplx simpson(double a, double b, cplx fa, cplx fm, cplx fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
cplx adaptive(F& f, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole,
              double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    cplx flm = f(lm), frm = f(rm);
    cplx left = simpson(a, m, fa, flm, fm);
    cplx right = simpson(m, b, fm, frm, fb);
    cplx delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0)
        throw numeric_error("adaptive quadrature failed to converge");
    return adaptive(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

} // namespace detail

template <typename F>
cplx integrate(F f, double a, double b, double tol, int max_depth = 40) {
    if (a == b) return {0.0, 0.0};
    cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    cplx whole = detail::simpson(a, b, fa, fm, fb);
    return detail::adaptive(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Composite: npanels equal panels, adaptive within each, tolerance split
// evenly across panels.
template <typename F>
cplx integrate_panels(F f, double a, double b, uint64_t npanels, double tol,
                      int max_depth = 40) {
    if (npanels < 1) npanels = 1;
    cplx total{0.0, 0.0};
    double w = (b - a) / static_cast<double>(npanels);
    double ptol = tol / static_cast<double>(npanels);
    for (uint64_t i = 0; i < npanels; ++i) {
        double lo = a + w * static_cast<double>(i);
        double hi = (i + 1 == npanels) ? b : lo + w;
        total += integrate(f, lo, hi, ptol, max_depth);
    }
    return total;
}

} // namespace gbseed::quadrature
