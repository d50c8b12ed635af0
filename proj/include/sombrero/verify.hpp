#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sombrero/eigensolver.hpp"
#include "sombrero/solvers.hpp"
#include "sombrero/trial.hpp"
#include "sombrero/wavefunction.hpp"

namespace sombrero {

struct VerifyTolerances {
    double energy = 1e-6;
    double similarity_gap = 1e-6;
};

/// Oracle-versus-closed-form comparison for one potential.
struct VerificationReport {
    double oracle_energy = 0.0;
    double closed_form_energy = 0.0;
    /// r^(N−1)-weighted cosine between the oracle eigenvector and ψ = e^(−S₀).
    double similarity = 0.0;
    /// Largest |Riccati residual| over the oracle grid (r ≤ 5 or the extent).
    double max_residual = 0.0;
    ConstraintCheck m_zero;
    ConstraintCheck zero_energy;
    bool energy_ok = false;
    bool similarity_ok = false;
    bool passed = false;
    std::vector<std::string> failed_checks;
};

/// r^(N−1)-weighted cosine similarity between grid samples of two functions.
inline double weighted_cosine(std::span<const double> u, std::span<const double> v,
                              const RadialGrid& grid, int n_dim) {
    double uv = 0.0;
    double uu = 0.0;
    double vv = 0.0;
    for (int j = 0; j < grid.n_points(); ++j) {
        const double w = std::pow(grid.point(j), n_dim - 1);
        uv += u[j] * v[j] * w;
        uu += u[j] * u[j] * w;
        vv += v[j] * v[j] * w;
    }
    return uv / std::sqrt(uu * vv);
}

/// Runs the eigensolver on V (no correction) and compares against the
/// closed-form E₀ and trial ψ of `trial`. Passes iff |E_oracle − E₀| < tol and
/// similarity > 1 − gap.
inline VerificationReport verify_potential(const PotentialParams& p, const TrialParams& trial,
                                           const VerifyTolerances& tol = {},
                                           const OracleOptions& opt = {}) {
    VerificationReport rep;
    const auto split = trial_split(p, trial);
    rep.closed_form_energy = split.e0;
    rep.m_zero = check_m_zero(p);
    rep.zero_energy = check_zero_energy(p);

    const auto eig = groundstate(p, {}, opt);
    rep.oracle_energy = eig.energy;

    const TrialWavefunction w{trial, p};
    // Samples of ψ relative to its largest value on the grid, in S-space.
    double s_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < eig.grid.n_points(); ++j)
        s_min = std::min(s_min, eval_s0(w, eig.grid.point(j)));
    std::vector<double> psi(eig.grid.n_points());
    for (int j = 0; j < eig.grid.n_points(); ++j)
        psi[j] = std::exp(-(eval_s0(w, eig.grid.point(j)) - s_min));
    rep.similarity = weighted_cosine(eig.vector, psi, eig.grid, p.n_dim);

    const double r_probe = std::min(5.0, eig.grid.r_max());
    for (int j = 0; j < eig.grid.n_points() && eig.grid.point(j) <= r_probe; ++j)
        rep.max_residual = std::max(
            rep.max_residual, std::abs(schrodinger_residual(w, rep.closed_form_energy,
                                                            eig.grid.point(j))));

    rep.energy_ok = std::abs(rep.oracle_energy - rep.closed_form_energy) < tol.energy;
    rep.similarity_ok = rep.similarity > 1.0 - tol.similarity_gap;
    rep.passed = rep.energy_ok && rep.similarity_ok;
    if (!rep.energy_ok) rep.failed_checks.push_back("oracle energy differs from closed-form E0");
    if (!rep.similarity_ok) rep.failed_checks.push_back("oracle eigenvector differs from trial psi");
    if (!rep.passed && !rep.m_zero.satisfied)
        rep.failed_checks.push_back("m != 0 (trial is not exact)");
    return rep;
}

inline VerificationReport verify_potential(const PotentialParams& p,
                                           const VerifyTolerances& tol = {},
                                           const OracleOptions& opt = {}) {
    return verify_potential(p, derive_trial(p), tol, opt);
}

inline VerificationReport verify_solution(const ZeroModeSolution& sol,
                                          const VerifyTolerances& tol = {},
                                          const OracleOptions& opt = {}) {
    return verify_potential(sol.potential, sol.trial, tol, opt);
}

}  // namespace sombrero
