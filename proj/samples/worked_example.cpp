// Builds the N = 3, g = 1.5, lambda = 1.5 zero-mode potential and checks it
// against the finite-difference eigensolver.

#include <cstdio>

#include "sombrero/sombrero.hpp"

int main() {
    using namespace sombrero;

    const auto etas = solve_eta(1.5, 3);
    const auto sol = params_from_lambda(1.5, 1.5, etas.front(), 3);
    std::printf("eta = %.9g  alpha = %.9g  beta = %.9g  A = %.9g\n", etas.front(),
                sol.potential.alpha, sol.potential.beta, sol.potential.bigA);
    std::printf("a = %.9g  c = %.9g  m = %.3g\n", sol.trial.a, sol.trial.c, sol.trial.m);

    const auto rep = verify_solution(sol);
    std::printf("oracle E = %.3e  similarity gap = %.3e  -> %s\n", rep.oracle_energy,
                1.0 - rep.similarity, rep.passed ? "PASS" : "FAIL");
    return rep.passed ? 0 : 1;
}
