#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sombrero/potential.hpp"

namespace sombrero {

/// Exponent coefficients of the trial function
///
///   φ(r) = exp(−S₀(r)),   S₀(r) = a r⁴ − c r² + m log(r² + 1).
///
/// a = g/4 cancels the r⁶ term of the potential; c and m cancel the r⁴ and
/// r² terms. m = 0 means φ is an exact eigenfunction of V.
struct TrialParams {
    double a = 0.0;
    double c = 0.0;
    double m = 0.0;
};

/// The potential correction h(r) and shifted eigenvalue E₀ for which φ is the
/// exact groundstate of V − h:
///
///   h(r) = inv_sq / (r²+1)² + inv / (r²+1)
struct TrialSplit {
    double e0 = 0.0;
    double inv_sq = 0.0;
    double inv = 0.0;

    double h_at(double r) const {
        const double u = r * r + 1.0;
        return inv_sq / (u * u) + inv / u;
    }
    double operator()(double r) const { return h_at(r); }
};

inline TrialParams derive_trial(const PotentialParams& p) {
    require_valid(p);
    const double g = p.g;
    const double diff = p.alpha - p.bigA;
    TrialParams t;
    t.a = 0.25 * g;
    t.c = 0.25 * diff * g;
    t.m = 0.25 * (g * (p.beta - p.alpha * p.bigA) - 0.25 * g * diff * diff + p.n_dim + 2.0);
    return t;
}

/// `t` is taken as given so a perturbed trial can be fed in; the returned split
/// is only consistent with V when t = derive_trial(p).
inline TrialSplit trial_split(const PotentialParams& p, const TrialParams& t) {
    const double g = p.g;
    const double n = p.n_dim;
    const double m = t.m;
    const double c = t.c;
    TrialSplit s;
    s.inv_sq = 2.0 * m * (m + 1.0);
    s.inv = (n - 2.0) * m - 2.0 * m * m - 2.0 * m * g - 4.0 * m * c;
    s.e0 = 0.5 * p.bigA * g * g * p.beta + 2.0 * m * g - n * c + 4.0 * m * c;
    return s;
}

/// Signed residual whose zero is m = 0 (4m expressed in the potential's
/// parameters).
inline double m_zero_residual(const PotentialParams& p) {
    require_valid(p);
    const double diff = p.alpha - p.bigA;
    return p.g * (p.beta - p.alpha * p.bigA) - 0.25 * p.g * diff * diff + p.n_dim + 2.0;
}

/// Signed residual ½ A g² β − N c, the m = 0 eigenvalue.
inline double zero_energy_residual(const PotentialParams& p) {
    require_valid(p);
    const double c = 0.25 * (p.alpha - p.bigA) * p.g;
    return 0.5 * p.bigA * p.g * p.g * p.beta - p.n_dim * c;
}

struct ConstraintCheck {
    double residual = 0.0;
    double scale = 1.0;
    bool satisfied = false;
};

inline constexpr double kConstraintTolerance = 1e-10;

inline ConstraintCheck check_m_zero(const PotentialParams& p) {
    const double diff = p.alpha - p.bigA;
    const double terms = std::abs(p.g * p.beta) + std::abs(p.g * p.alpha * p.bigA) +
                         std::abs(0.25 * p.g * diff * diff) + std::abs(p.n_dim + 2.0);
    ConstraintCheck out;
    out.residual = m_zero_residual(p);
    out.scale = std::max(1.0, terms);
    out.satisfied = std::abs(out.residual) <= kConstraintTolerance * out.scale;
    return out;
}

inline ConstraintCheck check_zero_energy(const PotentialParams& p) {
    const double terms = std::abs(0.5 * p.bigA * p.g * p.g * p.beta) +
                         std::abs(p.n_dim * 0.25 * (p.alpha - p.bigA) * p.g);
    ConstraintCheck out;
    out.residual = zero_energy_residual(p);
    out.scale = std::max(1.0, terms);
    out.satisfied = std::abs(out.residual) <= kConstraintTolerance * out.scale;
    return out;
}

/// True when h keeps one sign on [0, r_max] (zeros allowed). Diagnostic only;
/// mixed-sign h is legal input.
inline bool h_sign_constant(const TrialSplit& s, double r_max = 20.0, int samples = 2001) {
    bool pos = false;
    bool neg = false;
    for (int i = 0; i < samples; ++i) {
        const double r = r_max * i / (samples - 1);
        const double h = s.h_at(r);
        pos = pos || h > 0.0;
        neg = neg || h < 0.0;
    }
    return !(pos && neg);
}

}  // namespace sombrero
