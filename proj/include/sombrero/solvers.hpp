#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sombrero/potential.hpp"
#include "sombrero/roots.hpp"
#include "sombrero/trial.hpp"

namespace sombrero {

/// A potential whose trial function is an exact groundstate with zero
/// eigenvalue (m = 0 and E₀ = 0).
struct ZeroModeSolution {
    PotentialParams potential;
    TrialParams trial;
    std::optional<LambdaForm> lambda_form;
    std::optional<JackiwForm> jackiw_form;
};

/// An exactly solvable (m = 0) member of the Jackiw family; E₀ is generally
/// nonzero.
struct JackiwBranch {
    PotentialParams potential;
    TrialParams trial;
    double e0 = 0.0;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// λNη³ + λNη² + (N + 4 − λN)η + N(1 − λ), highest degree first.
inline std::array<double, 4> lambda_eta_cubic(double lambda_, int n_dim) {
    const double n = n_dim;
    return {lambda_ * n, lambda_ * n, n + 4.0 - lambda_ * n, n * (1.0 - lambda_)};
}

/// Roots η ∈ (0, 1) of the λ–η cubic, ascending. Empty when none exist.
inline std::vector<double> solve_eta(double lambda_, int n_dim) {
    if (!std::isfinite(lambda_)) throw std::invalid_argument("lambda must be finite");
    if (n_dim < 1) throw std::invalid_argument("dimension N must be >= 1");
    const auto coeffs = lambda_eta_cubic(lambda_, n_dim);
    std::vector<double> out;
    for (double eta : polynomial_roots_in(coeffs, 0.0, 1.0))
        if (eta > 0.0 && eta < 1.0) out.push_back(eta);
    return out;
}

namespace detail {

inline void require_zero_mode(const PotentialParams& p, const char* what) {
    if (!check_m_zero(p).satisfied || !check_zero_energy(p).satisfied)
        throw SolverError(std::string(what) + ": constructed parameters violate m = 0 / E0 = 0");
}

}  // namespace detail

/// Rebuilds (β, α, A) from a root η of the λ–η cubic: β = N(1 − η)/(2ηg),
/// α = +2√(λβ), A = ηα.
inline ZeroModeSolution params_from_lambda(double g, double lambda_, double eta, int n_dim) {
    if (!(g > 0.0)) throw std::invalid_argument("coupling g must be > 0");
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
    if (n_dim < 1) throw std::invalid_argument("dimension N must be >= 1");
    const double beta = n_dim * (1.0 - eta) / (2.0 * eta * g);
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    if (!(lambda_ > 0.0)) throw std::invalid_argument("lambda must be > 0");

    ZeroModeSolution sol;
    sol.potential.g = g;
    sol.potential.n_dim = n_dim;
    sol.potential.beta = beta;
    sol.potential.alpha = 2.0 * std::sqrt(lambda_ * beta);
    sol.potential.bigA = eta * sol.potential.alpha;
    sol.trial = derive_trial(sol.potential);
    sol.lambda_form = LambdaForm{lambda_, eta};
    detail::require_zero_mode(sol.potential, "params_from_lambda");
    return sol;
}

/// r₀⁴ = (N + 2)/3, the reference radius of the Jackiw family.
inline double jackiw_r0_fourth(int n_dim) { return (n_dim + 2.0) / 3.0; }

/// Both roots of α² + 4r₀²α − 12r₀⁴ = 0 with g = 1, β = r₀⁴, A = 2r₀²:
/// α = 2r₀² (c = 0, E₀ = r₀⁶) and α = −6r₀² (c = −2r₀², E₀ = r₀⁶ + 2Nr₀²).
inline std::array<JackiwBranch, 2> jackiw_solutions(int n_dim) {
    if (n_dim < 1) throw std::invalid_argument("dimension N must be >= 1");
    const double r0_4 = jackiw_r0_fourth(n_dim);
    const double r0_2 = std::sqrt(r0_4);
    const double n = n_dim;

    std::array<JackiwBranch, 2> out;
    const std::array<double, 2> alphas = {2.0 * r0_2, -6.0 * r0_2};
    const std::array<double, 2> energies = {r0_4 * r0_2, r0_4 * r0_2 + 2.0 * n * r0_2};
    for (int i = 0; i < 2; ++i) {
        auto& b = out[i];
        b.potential.g = 1.0;
        b.potential.n_dim = n_dim;
        b.potential.alpha = alphas[i];
        b.potential.beta = r0_4;
        b.potential.bigA = 2.0 * r0_2;
        b.trial = derive_trial(b.potential);
        b.e0 = energies[i];
    }
    return out;
}

/// η–μ cubic obtained by eliminating μ and c from the Jackiw-form constraints,
///   η [g(1 + η)² − 3] r₀⁴ = (N/2)(1 − η),
/// normalized to a leading coefficient of 2.
inline std::array<double, 4> eta_mu_cubic(double g, int n_dim) {
    const double n = n_dim;
    // N / (g r0⁴) = 3N / (g (N + 2))
    const double ratio = 3.0 * n / (g * (n + 2.0));
    return {2.0, 4.0, 2.0 * (g - 3.0) / g + ratio, -ratio};
}

/// Jackiw form with the given η, taking μ from the m = 0 condition
/// g(1 − μ) = g(1 + η)² − 3.
inline JackiwForm jackiw_form_for_eta(double g, double eta, int n_dim) {
    const double r0_2 = std::sqrt(jackiw_r0_fourth(n_dim));
    const double mu = 1.0 - (1.0 + eta) * (1.0 + eta) + 3.0 / g;
    return {r0_2, mu, eta};
}

inline PotentialParams jackiw_potential_for_eta(double g, double eta, int n_dim) {
    return from_jackiw_form(jackiw_form_for_eta(g, eta, n_dim), g, n_dim);
}

/// Inverts c = ½(1 − η) g r₀² for η and builds the m = 0 potential of that η.
/// Used to test a quoted value of c against the eigensolver.
inline PotentialParams jackiw_potential_for_c(double g, double c, int n_dim) {
    const double r0_2 = std::sqrt(jackiw_r0_fourth(n_dim));
    return jackiw_potential_for_eta(g, 1.0 - 2.0 * c / (g * r0_2), n_dim);
}

/// Zero-mode solution in the Jackiw parametrization: α = 2r₀², β = r₀⁴(1 − μ),
/// A = ηα with the unique η ∈ (0, 1) of eta_mu_cubic.
inline ZeroModeSolution solve_eta_mu(double g, int n_dim) {
    if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("coupling g must be > 0");
    if (n_dim < 1) throw std::invalid_argument("dimension N must be >= 1");
    const auto coeffs = eta_mu_cubic(g, n_dim);
    std::vector<double> inside;
    for (double eta : polynomial_roots_in(coeffs, 0.0, 1.0))
        if (eta > 0.0 && eta < 1.0) inside.push_back(eta);
    if (inside.empty())
        throw SolverError("eta-mu: no root of the eta cubic lies in (0, 1) for g = " +
                          std::to_string(g) + ", N = " + std::to_string(n_dim));
    if (inside.size() > 1)
        throw SolverError("eta-mu: eta cubic has several roots in (0, 1)");

    ZeroModeSolution sol;
    const JackiwForm form = jackiw_form_for_eta(g, inside.front(), n_dim);
    sol.potential = from_jackiw_form(form, g, n_dim);
    sol.trial = derive_trial(sol.potential);
    sol.jackiw_form = form;
    detail::require_zero_mode(sol.potential, "solve_eta_mu");
    return sol;
}

}  // namespace sombrero
