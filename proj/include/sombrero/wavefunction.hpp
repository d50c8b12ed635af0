#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sombrero/potential.hpp"
#include "sombrero/roots.hpp"
#include "sombrero/trial.hpp"

namespace sombrero {

/// ψ(r) = exp(−S₀(r)) for a trial (a, c, m), together with the potential it is
/// tested against.
struct TrialWavefunction {
    TrialParams trial;
    PotentialParams potential;
};

inline TrialWavefunction make_wavefunction(const PotentialParams& p) {
    return {derive_trial(p), p};
}

inline double eval_s0(const TrialWavefunction& w, double r) {
    const double r2 = r * r;
    const auto& t = w.trial;
    return t.a * r2 * r2 - t.c * r2 + t.m * std::log1p(r2);
}

/// Saturates to 0 when the exponent underflows.
inline double eval_psi(const TrialWavefunction& w, double r) { return std::exp(-eval_s0(w, r)); }

struct S0Derivatives {
    double first = 0.0;
    double second = 0.0;
};

inline S0Derivatives derivatives_s0(const TrialWavefunction& w, double r) {
    const auto& t = w.trial;
    const double r2 = r * r;
    const double u = r2 + 1.0;
    return {4.0 * t.a * r2 * r - 2.0 * t.c * r + 2.0 * t.m * r / u,
            12.0 * t.a * r2 - 2.0 * t.c + 2.0 * t.m * (1.0 - r2) / (u * u)};
}

/// S₀′(r)/r, finite at r = 0 where it tends to 2m − 2c.
inline double s0_prime_over_r(const TrialWavefunction& w, double r) {
    const auto& t = w.trial;
    const double r2 = r * r;
    return 4.0 * t.a * r2 - 2.0 * t.c + 2.0 * t.m / (r2 + 1.0);
}

/// Stationary points of ψ on r ≥ 0. The origin is always stationary and is
/// listed as a maximum or a minimum ("valley").
struct PsiExtrema {
    std::vector<double> maxima;
    std::vector<double> minima;

    /// Location of the largest ψ among `maxima`.
    double global_maximum(const TrialWavefunction& w) const {
        double best = maxima.front();
        for (double r : maxima)
            if (eval_s0(w, r) < eval_s0(w, best)) best = r;
        return best;
    }
};

/// For m = 0 the closed form applies: c > 0 gives a ring maximum at
/// r = √(c/(2a)) = √(2c/g) with a valley at the origin, otherwise the single
/// maximum sits at r = 0. For m ≠ 0 the zeros of S₀′/r are bracketed
/// numerically. Requires a > 0.
inline PsiExtrema maxima_radius(const TrialWavefunction& w) {
    const auto& t = w.trial;
    if (!(t.a > 0.0)) throw std::invalid_argument("maxima_radius: needs a > 0");
    PsiExtrema out;
    if (t.m == 0.0) {
        if (t.c > 0.0) {
            out.maxima.push_back(std::sqrt(t.c / (2.0 * t.a)));
            out.minima.push_back(0.0);
        } else {
            out.maxima.push_back(0.0);
        }
        return out;
    }

    // ψ has a maximum where S₀ has a minimum. At the origin S₀″(0) = 2m − 2c.
    const double curvature0 = s0_prime_over_r(w, 0.0);
    if (curvature0 >= 0.0)
        out.maxima.push_back(0.0);
    else
        out.minima.push_back(0.0);

    // 4a r² dominates S₀′/r beyond this radius.
    const double reach = std::sqrt((2.0 * std::abs(t.c) + 2.0 * std::abs(t.m)) / (4.0 * t.a));
    const double hi = 2.0 * reach + 1.0;
    const auto q = [&w](double r) { return s0_prime_over_r(w, r); };
    for (double r : find_bracketed_roots(q, 0.0, hi, 4096, 1e-14)) {
        if (r <= 0.0) continue;
        if (derivatives_s0(w, r).second > 0.0)
            out.maxima.push_back(r);
        else
            out.minima.push_back(r);
    }
    std::sort(out.maxima.begin(), out.maxima.end());
    std::sort(out.minima.begin(), out.minima.end());
    return out;
}

namespace detail {

template <typename F>
double simpson(F&& f, double lo, double hi, long panels) {
    const double h = (hi - lo) / panels;
    double acc = f(lo) + f(hi);
    for (long i = 1; i < panels; ++i) acc += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace detail

/// ∫₀^∞ ψ(r)² r^(N−1) dr by composite Simpson on [0, R] with 2 S₀(R) > 80,
/// doubling the panel count until the relative change is below `rel_tol`.
inline double norm_squared(const TrialWavefunction& w, double rel_tol = 1e-10) {
    if (!(w.trial.a > 0.0)) throw std::invalid_argument("norm_squared: needs a > 0");
    const int power = w.potential.n_dim - 1;
    double cutoff = 1.0;
    // S₀ is eventually increasing; push R past the last stationary point first.
    const auto ext = maxima_radius(w);
    for (double r : ext.maxima) cutoff = std::max(cutoff, r);
    for (double r : ext.minima) cutoff = std::max(cutoff, r);
    while (2.0 * eval_s0(w, cutoff) <= 80.0) cutoff *= 1.1;

    const auto integrand = [&w, power](double r) {
        return std::exp(-2.0 * eval_s0(w, r)) * std::pow(r, power);
    };
    long panels = 64;
    double prev = detail::simpson(integrand, 0.0, cutoff, panels);
    for (int it = 0; it < 24; ++it) {
        panels *= 2;
        const double next = detail::simpson(integrand, 0.0, cutoff, panels);
        if (std::abs(next - prev) < rel_tol * std::abs(next)) return next;
        prev = next;
    }
    throw std::runtime_error("norm_squared: quadrature did not converge");
}

/// Riccati residual S₀′² − ((N−1)/r) S₀′ − S₀″ − 2(V(r) − e) for an arbitrary
/// potential callable. r = 0 uses the limit S₀′/r → 2m − 2c.
template <typename Potential>
double schrodinger_residual_with(const TrialWavefunction& w, Potential&& v, double e, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("schrodinger_residual: needs r >= 0");
    const auto d = derivatives_s0(w, r);
    const double radial = (w.potential.n_dim - 1) * s0_prime_over_r(w, r);
    return d.first * d.first - radial - d.second - 2.0 * (v(r) - e);
}

/// Residual of the radial equation in S-space against the stored potential.
/// Rejects r = 0; use schrodinger_residual_at_origin there.
inline double schrodinger_residual(const TrialWavefunction& w, double e, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("schrodinger_residual: needs r > 0");
    const auto d = derivatives_s0(w, r);
    const double n1 = w.potential.n_dim - 1;
    return d.first * d.first - n1 / r * d.first - d.second -
           2.0 * (eval_potential(w.potential, r) - e);
}

inline double schrodinger_residual_at_origin(const TrialWavefunction& w, double e) {
    return schrodinger_residual_with(
        w, [&w](double r) { return eval_potential(w.potential, r); }, e, 0.0);
}

}  // namespace sombrero
