#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "ttlab/errors.hpp"

namespace ttlab {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimate, same units as value
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr double kGk15Nodes[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr double kKronrodWeights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr double kGaussWeights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

template <typename F>
inline QuadResult gk15_panel(const F& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double kronrod = 0.0;
    double gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double y = f(mid + h * kGk15Nodes[i]);
        kronrod += kKronrodWeights[i] * y;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * y;
    }
    QuadResult out;
    out.value = kronrod * h;
    const double diff = std::abs(kronrod - gauss) * std::abs(h);
    // QUADPACK-style sharpened estimate; never reported below machine noise.
    out.error = std::max(std::pow(200.0 * diff, 1.5), 1e-300);
    if (out.error > diff) out.error = diff;
    out.error = std::max(out.error, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value));
    return out;
}

template <typename F>
inline void gk15_adaptive(const F& f, double a, double b, double tol, int depth, QuadResult& acc,
                          bool& converged) {
    QuadResult whole = gk15_panel(f, a, b);
    if (whole.error <= tol || depth <= 0) {
        acc.value += whole.value;
        acc.error += whole.error;
        if (whole.error > tol) converged = false;
        return;
    }
    const double mid = 0.5 * (a + b);
    gk15_adaptive(f, a, mid, 0.5 * tol, depth - 1, acc, converged);
    gk15_adaptive(f, mid, b, 0.5 * tol, depth - 1, acc, converged);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration to an absolute tolerance.
// Throws quadrature_error (carrying the partial estimate) when the target
// cannot be met within the recursion budget.
template <typename F>
inline QuadResult integrate(const F& f, double a, double b, double abs_tol = 1e-10,
                            int max_depth = 48) {
    if (!(b > a)) return {0.0, 0.0};
    QuadResult acc;
    bool converged = true;
    detail::gk15_adaptive(f, a, b, abs_tol, max_depth, acc, converged);
    if (!converged && acc.error > 64.0 * abs_tol) {
        throw quadrature_error("quadrature failed to converge to requested tolerance", acc.value);
    }
    return acc;
}

// Single fixed panel; used for cumulative tables over short smooth segments.
template <typename F>
inline double integrate_panel(const F& f, double a, double b) {
    if (!(b > a)) return 0.0;
    return detail::gk15_panel(f, a, b).value;
}

// Bracketing bisection. f(lo) and f(hi) must have opposite signs.
template <typename F>
inline double bisect(const F& f, double lo, double hi, double xtol, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw parameter_error("bisect: endpoints do not bracket a root");
    }
    for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Central difference with one Richardson step: O(h^4) for smooth f.
template <typename F>
inline double derivative(const F& f, double x, double h = 1e-4) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace ttlab
