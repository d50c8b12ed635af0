#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sombrero/solvers.hpp"

using namespace sombrero;

namespace {

// Independent root oracle: plain bisection on a sign change of the λ–η cubic.
double bisection_oracle(double lambda_, int n_dim, double lo, double hi) {
    const double n = n_dim;
    const auto f = [&](double e) {
        return lambda_ * n * e * e * e + lambda_ * n * e * e + (n + 4.0 - lambda_ * n) * e +
               n * (1.0 - lambda_);
    };
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(SolveEta, WorkedExample) {
    const auto roots = solve_eta(1.5, 3);
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_NEAR(roots[0], 1.0 / 3.0, 1e-12);
}

TEST(SolveEta, LambdaOneHasNoRoot) { EXPECT_TRUE(solve_eta(1.0, 3).empty()); }

TEST(SolveEta, LambdaTenMatchesBisection) {
    const auto roots = solve_eta(10.0, 3);
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_NEAR(roots[0], bisection_oracle(10.0, 3, 0.0, 1.0), 1e-12);
    EXPECT_NEAR(roots[0], 0.9145, 1e-4);
}

TEST(SolveEta, RootsSatisfyCubic) {
    for (double lambda_ : {1.01, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0})
        for (int n : {1, 2, 3, 5, 9})
            for (double eta : solve_eta(lambda_, n)) {
                const auto c = lambda_eta_cubic(lambda_, n);
                EXPECT_LT(std::abs(eval_polynomial(c, eta)), 1e-13 * max_abs_coefficient(c)) << lambda_ << " " << n;
                EXPECT_GT(eta, 0.0);
                EXPECT_LT(eta, 1.0);
            }
}

TEST(SolveEta, RejectsNonFinite) {
    EXPECT_THROW(solve_eta(NAN, 3), std::invalid_argument);
    EXPECT_THROW(solve_eta(INFINITY, 3), std::invalid_argument);
}

TEST(SolveEta, MonotoneSingleRootOverFigureRange) {
    double prev = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double lambda_ = 1.01 + (10.0 - 1.01) * i / 199.0;
        const auto roots = solve_eta(lambda_, 3);
        ASSERT_EQ(roots.size(), 1u) << lambda_;
        EXPECT_GT(roots[0], prev);
        EXPECT_LT(roots[0], 1.0);
        prev = roots[0];
    }
}

TEST(ParamsFromLambda, WorkedExample) {
    const auto sol = params_from_lambda(1.5, 1.5, 1.0 / 3.0, 3);
    EXPECT_NEAR(sol.potential.beta, 2.0, 1e-12);
    EXPECT_NEAR(sol.potential.alpha, std::sqrt(12.0), 1e-12);
    EXPECT_NEAR(sol.potential.bigA, std::sqrt(12.0) / 3.0, 1e-12);
    EXPECT_NEAR(sol.trial.c, std::sqrt(3.0) / 2.0, 1e-12);
    EXPECT_NEAR(m_zero_residual(sol.potential), 0.0, 1e-12);
    EXPECT_NEAR(zero_energy_residual(sol.potential), 0.0, 1e-12);
    ASSERT_TRUE(sol.lambda_form.has_value());
    EXPECT_DOUBLE_EQ(sol.lambda_form->lambda_, 1.5);
}

TEST(ParamsFromLambda, CouplingRescalesBeta) {
    const auto sol = params_from_lambda(3.0, 1.5, 1.0 / 3.0, 3);
    EXPECT_NEAR(sol.potential.beta, 1.0, 1e-12);
    EXPECT_NEAR(sol.potential.alpha, 2.4494897, 1e-7);
    EXPECT_NEAR(sol.potential.bigA, 0.8164966, 1e-7);
    EXPECT_NEAR(sol.trial.c, 1.2247449, 1e-7);
    EXPECT_NEAR(m_zero_residual(sol.potential), 0.0, 1e-12);
    EXPECT_NEAR(zero_energy_residual(sol.potential), 0.0, 1e-12);
}

TEST(ParamsFromLambda, RejectsEtaOutsideUnitInterval) {
    EXPECT_THROW(params_from_lambda(1.5, 1.5, 0.0, 3), std::invalid_argument);
    EXPECT_THROW(params_from_lambda(1.5, 1.5, 1.0, 3), std::invalid_argument);
    EXPECT_THROW(params_from_lambda(1.5, 1.5, -0.2, 3), std::invalid_argument);
    EXPECT_THROW(params_from_lambda(0.0, 1.5, 0.3, 3), std::invalid_argument);
}

TEST(ParamsFromLambda, RejectsEtaThatIsNotARoot) {
    EXPECT_THROW(params_from_lambda(1.5, 1.5, 0.5, 3), SolverError);
}

TEST(ParamsFromLambda, SweepSatisfiesBothConstraints) {
    for (double lambda_ : {1.1, 1.5, 2.0, 3.0, 5.0, 10.0})
        for (int n : {1, 2, 3, 5, 9})
            for (double g : {0.5, 1.0, 1.5}) {
                const auto roots = solve_eta(lambda_, n);
                ASSERT_FALSE(roots.empty());
                for (double eta : roots) {
                    const auto sol = params_from_lambda(g, lambda_, eta, n);
                    EXPECT_TRUE(check_m_zero(sol.potential).satisfied);
                    EXPECT_TRUE(check_zero_energy(sol.potential).satisfied);
                    EXPECT_LT(std::abs(m_zero_residual(sol.potential)), 1e-10)
                        << lambda_ << " " << n << " " << g;
                    EXPECT_LT(std::abs(zero_energy_residual(sol.potential)), 1e-10);
                    EXPECT_GT(sol.trial.c, 0.0);
                    const auto t = derive_trial(sol.potential);
                    EXPECT_EQ(t.a, sol.trial.a);
                    EXPECT_EQ(t.c, sol.trial.c);
                    EXPECT_EQ(t.m, sol.trial.m);
                }
            }
}

TEST(Jackiw, ThreeDimensions) {
    const auto b = jackiw_solutions(3);
    EXPECT_NEAR(b[0].potential.alpha, 2.5819889, 1e-7);
    EXPECT_EQ(b[0].trial.c, 0.0);
    EXPECT_NEAR(b[0].e0, 2.1516574, 1e-7);
    EXPECT_NEAR(b[1].potential.alpha, -7.7459667, 1e-7);
    EXPECT_NEAR(b[1].trial.c, -2.5819889, 1e-7);
    EXPECT_NEAR(b[1].e0, 9.8976241, 1e-7);
    for (const auto& branch : b) {
        EXPECT_NEAR(m_zero_residual(branch.potential), 0.0, 1e-13);
        // both branches are roots of α² + 4r₀²α − 12r₀⁴
        const double r0_sq = std::sqrt(5.0 / 3.0);
        const double a = branch.potential.alpha;
        EXPECT_NEAR(a * a + 4.0 * r0_sq * a - 12.0 * r0_sq * r0_sq, 0.0, 1e-13);
        // closed-form E₀ agrees with the general split formula
        EXPECT_NEAR(trial_split(branch.potential, branch.trial).e0, branch.e0, 1e-13);
    }
}

TEST(Jackiw, OneDimension) {
    const auto b = jackiw_solutions(1);
    EXPECT_DOUBLE_EQ(b[0].potential.alpha, 2.0);
    EXPECT_EQ(b[0].trial.c, 0.0);
    EXPECT_DOUBLE_EQ(b[0].e0, 1.0);
}

TEST(Jackiw, PlusBranchIsPureQuartic) {
    for (int n : {1, 2, 3, 5, 9}) {
        const auto t = jackiw_solutions(n)[0].trial;
        EXPECT_EQ(t.a, 0.25);
        EXPECT_EQ(t.c, 0.0);
        EXPECT_NEAR(t.m, 0.0, 1e-14);
    }
}

TEST(EtaMu, CubicReproducesPrintedCoefficients) {
    const auto c = eta_mu_cubic(1.0, 3);
    EXPECT_DOUBLE_EQ(c[0], 2.0);
    EXPECT_DOUBLE_EQ(c[1], 4.0);
    EXPECT_DOUBLE_EQ(c[2], -11.0 / 5.0);
    EXPECT_DOUBLE_EQ(c[3], -9.0 / 5.0);
}

TEST(EtaMu, CubicMatchesEliminatedConstraints) {
    // η [g(1+η)² − 3] r₀⁴ − (N/2)(1 − η), rescaled by 2/(g r₀⁴).
    for (double g : {0.8, 1.0, 2.5})
        for (int n : {1, 3, 6})
            for (double eta : {0.1, 0.5, 0.9}) {
                const double r0_4 = (n + 2.0) / 3.0;
                const double direct =
                    (eta * (g * (1 + eta) * (1 + eta) - 3.0) * r0_4 - 0.5 * n * (1 - eta)) *
                    2.0 / (g * r0_4);
                EXPECT_NEAR(eval_polynomial(eta_mu_cubic(g, n), eta), direct, 1e-13);
            }
}

TEST(EtaMu, ThreeDimensionalSolution) {
    const auto sol = solve_eta_mu(1.0, 3);
    ASSERT_TRUE(sol.jackiw_form.has_value());
    EXPECT_NEAR(sol.jackiw_form->eta, 0.797005, 1e-6);
    EXPECT_NEAR(sol.trial.c, 0.1310332, 1e-6);
    const double eta = sol.jackiw_form->eta;
    EXPECT_LT(std::abs(2 * eta * eta * eta + 4 * eta * eta - 2.2 * eta - 1.8), 1e-12);
    // μ from the m = 0 condition
    EXPECT_NEAR(sol.jackiw_form->mu, 4.0 - (1.0 + eta) * (1.0 + eta), 1e-14);
    EXPECT_NEAR(sol.jackiw_form->r0_sq, std::sqrt(5.0 / 3.0), 1e-15);
    // c = ½(1 − η) g r₀²
    EXPECT_NEAR(sol.trial.c, 0.5 * (1.0 - eta) * sol.jackiw_form->r0_sq, 1e-15);
    EXPECT_LT(std::abs(m_zero_residual(sol.potential)), 1e-10);
    EXPECT_LT(std::abs(zero_energy_residual(sol.potential)), 1e-10);
}

TEST(EtaMu, WeakCouplingHasNoRoot) {
    // the cubic is negative on all of [0, 1] when g ≤ 3/4
    EXPECT_THROW(solve_eta_mu(0.5, 3), SolverError);
    EXPECT_THROW(solve_eta_mu(0.0, 3), std::invalid_argument);
}

TEST(EtaMu, QuotedCoefficientMapsBackToAPotential) {
    const auto p = jackiw_potential_for_c(1.0, 0.1310332, 3);
    const auto sol = solve_eta_mu(1.0, 3);
    EXPECT_NEAR(p.bigA, sol.potential.bigA, 1e-5);
    EXPECT_NEAR(derive_trial(p).c, 0.1310332, 1e-14);
    EXPECT_NEAR(m_zero_residual(p), 0.0, 1e-12);
}
