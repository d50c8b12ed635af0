#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace sombrero {

/// Horner evaluation, highest-degree coefficient first.
inline double eval_polynomial(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (double c : coeffs) acc = acc * x + c;
    return acc;
}

inline double max_abs_coefficient(std::span<const double> coeffs) {
    double s = 0.0;
    for (double c : coeffs) s = std::max(s, std::abs(c));
    return s;
}

namespace detail {

// Bisect [lo, hi] (f(lo)·f(hi) < 0) to width < tol, then secant steps kept
// inside the bracket. Returns the visited point with smallest |f|.
template <typename F>
double bisect_and_polish(F&& f, double lo, double hi, double flo, double fhi, double tol,
                         double f_target) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
    double fbest = std::min(std::abs(flo), std::abs(fhi));
    for (int it = 0; it < 8 && fbest > f_target; ++it) {
        if (fhi == flo) break;
        const double x = hi - fhi * (hi - lo) / (fhi - flo);
        if (!(x > lo && x < hi)) break;
        const double fx = f(x);
        if (std::abs(fx) < fbest) {
            best = x;
            fbest = std::abs(fx);
        }
        if (fx == 0.0) break;
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    return best;
}

}  // namespace detail

/// All sign-change roots of `f` on [lo, hi].
///
/// The interval is split into `subdivisions` equal panels; every panel whose
/// endpoints have strictly opposite signs is bisected to width < `tol` and then
/// polished with secant steps until |f| < 1e-13·scale. Exact zeros at panel
/// nodes are reported once. Output is sorted and deterministic.
template <typename F>
std::vector<double> find_bracketed_roots(F&& f, double lo, double hi, int subdivisions = 64,
                                         double tol = 1e-12, double scale = 1.0) {
    if (!(lo < hi)) throw std::invalid_argument("find_bracketed_roots: need lo < hi");
    if (subdivisions < 2) throw std::invalid_argument("find_bracketed_roots: need >= 2 panels");

    const double width = hi - lo;
    const double f_target = 1e-13 * scale;
    std::vector<double> nodes(subdivisions + 1);
    std::vector<double> values(subdivisions + 1);
    for (int i = 0; i <= subdivisions; ++i) {
        nodes[i] = i == subdivisions ? hi : lo + width * i / subdivisions;
        values[i] = f(nodes[i]);
    }

    std::vector<double> roots;
    for (int i = 0; i <= subdivisions; ++i) {
        if (values[i] == 0.0) roots.push_back(nodes[i]);
        if (i == subdivisions) break;
        const double fa = values[i];
        const double fb = values[i + 1];
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0))
            roots.push_back(detail::bisect_and_polish(f, nodes[i], nodes[i + 1], fa, fb, tol,
                                                      f_target));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Real roots of a polynomial (highest-degree first) on [lo, hi], with the
/// polish target scaled by the largest coefficient magnitude.
inline std::vector<double> polynomial_roots_in(std::span<const double> coeffs, double lo,
                                               double hi, int subdivisions = 64) {
    const double scale = std::max(1.0, max_abs_coefficient(coeffs));
    return find_bracketed_roots([coeffs](double x) { return eval_polynomial(coeffs, x); }, lo,
                                hi, subdivisions, 1e-12, scale);
}

}  // namespace sombrero
