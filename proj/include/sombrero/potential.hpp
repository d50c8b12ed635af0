#pragma once

#include <cmath>
#include <stdexcept>

namespace sombrero {

/// Physical inputs of the generalized sombrero potential
///
///   V(r) = ½ g² (r⁴ − α r² + β)(r² + A)
///
/// in `n_dim` spatial dimensions. All quantities are dimensionless
/// (ħ = mass = 1).
struct PotentialParams {
    double g = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    double bigA = 0.0;
    int n_dim = 3;
};

/// Shape/shift ratios with α² = 4λβ and A = ηα.
struct LambdaForm {
    double lambda_ = 0.0;
    double eta = 0.0;
};

/// V(r) = ½ g² [(r² − r₀²)² − μ r₀⁴](r² − 2η r₀²) written in terms of r₀².
struct JackiwForm {
    double r0_sq = 1.0;
    double mu = 0.0;
    double eta = 0.0;
};

inline void require_valid(const PotentialParams& p) {
    if (!(p.g > 0.0) || !std::isfinite(p.g))
        throw std::invalid_argument("coupling g must be finite and > 0");
    if (p.n_dim < 1)
        throw std::invalid_argument("dimension N must be >= 1");
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.bigA))
        throw std::invalid_argument("potential coefficients must be finite");
}

/// Evaluates V from x = r².
inline double eval_potential_r2(const PotentialParams& p, double r2) {
    return 0.5 * p.g * p.g * (r2 * r2 - p.alpha * r2 + p.beta) * (r2 + p.bigA);
}

inline double eval_potential(const PotentialParams& p, double r) {
    const double r2 = r * r;
    return 0.5 * p.g * p.g * (r2 * r2 - p.alpha * r2 + p.beta) * (r2 + p.bigA);
}

inline PotentialParams from_jackiw_form(const JackiwForm& j, double g, int n_dim) {
    if (!(j.r0_sq > 0.0))
        throw std::invalid_argument("Jackiw form needs r0^2 > 0");
    PotentialParams p;
    p.g = g;
    p.n_dim = n_dim;
    p.alpha = 2.0 * j.r0_sq;
    p.beta = j.r0_sq * j.r0_sq * (1.0 - j.mu);
    p.bigA = j.eta * p.alpha;
    return p;
}

/// Inverse of from_jackiw_form. Undefined for α ≤ 0 since α = 2r₀².
inline JackiwForm to_jackiw_form(const PotentialParams& p) {
    if (!(p.alpha > 0.0))
        throw std::invalid_argument("Jackiw form needs alpha > 0");
    JackiwForm j;
    j.r0_sq = 0.5 * p.alpha;
    j.mu = 1.0 - p.beta / (j.r0_sq * j.r0_sq);
    j.eta = p.bigA / p.alpha;
    return j;
}

/// λ = α²/(4β), η = A/α. Requires α ≠ 0 and β ≠ 0.
inline LambdaForm to_lambda_form(const PotentialParams& p) {
    if (p.alpha == 0.0 || p.beta == 0.0)
        throw std::invalid_argument("lambda form needs alpha != 0 and beta != 0");
    return {p.alpha * p.alpha / (4.0 * p.beta), p.bigA / p.alpha};
}

}  // namespace sombrero
