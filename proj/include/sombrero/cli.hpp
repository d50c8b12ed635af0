#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sombrero/eigensolver.hpp"
#include "sombrero/potential.hpp"
#include "sombrero/report.hpp"
#include "sombrero/solvers.hpp"
#include "sombrero/trial.hpp"
#include "sombrero/verify.hpp"
#include "sombrero/wavefunction.hpp"

namespace sombrero::cli {

enum ExitCode : int { kSuccess = 0, kDomainFailure = 1, kUsageError = 2 };

/// A flag value that fails validation after parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using Json = RunSummary::Json;

struct ParamFlags {
    std::optional<double> g;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> bigA;
    int n_dim = 3;
    std::optional<double> lambda_;
};

inline void add_param_flags(CLI::App* cmd, ParamFlags& f, bool with_lambda) {
    cmd->add_option("--g", f.g, "coupling g (> 0)");
    cmd->add_option("--alpha", f.alpha, "quadratic coefficient alpha");
    cmd->add_option("--beta", f.beta, "constant coefficient beta");
    cmd->add_option("--A", f.bigA, "shift coefficient A");
    cmd->add_option("--N", f.n_dim, "spatial dimension N (>= 1)")->capture_default_str();
    if (with_lambda)
        cmd->add_option("--lambda", f.lambda_,
                        "build the zero-mode potential from lambda (first eta root)");
}

inline double require_g(const ParamFlags& f) {
    if (!f.g) throw UsageError("--g is required");
    if (!(*f.g > 0.0) || !std::isfinite(*f.g)) throw UsageError("--g must be finite and > 0");
    return *f.g;
}

inline void require_n(int n_dim) {
    if (n_dim < 1) throw UsageError("--N must be >= 1");
}

inline PotentialParams explicit_params(const ParamFlags& f) {
    PotentialParams p;
    p.g = require_g(f);
    require_n(f.n_dim);
    if (!f.alpha) throw UsageError("--alpha is required");
    if (!f.beta) throw UsageError("--beta is required");
    if (!f.bigA) throw UsageError("--A is required");
    if (!std::isfinite(*f.alpha)) throw UsageError("--alpha must be finite");
    if (!std::isfinite(*f.beta)) throw UsageError("--beta must be finite");
    if (!std::isfinite(*f.bigA)) throw UsageError("--A must be finite");
    p.alpha = *f.alpha;
    p.beta = *f.beta;
    p.bigA = *f.bigA;
    p.n_dim = f.n_dim;
    return p;
}

/// Explicit (g, alpha, beta, A, N) or, when --lambda is set, the first
/// zero-mode solution of that lambda. Returns nullopt when lambda has no root.
inline std::optional<PotentialParams> resolve_params(const ParamFlags& f) {
    if (!f.lambda_) return explicit_params(f);
    if (f.alpha || f.beta || f.bigA)
        throw UsageError("--lambda cannot be combined with --alpha/--beta/--A");
    const double g = require_g(f);
    require_n(f.n_dim);
    if (!std::isfinite(*f.lambda_)) throw UsageError("--lambda must be finite");
    const auto roots = solve_eta(*f.lambda_, f.n_dim);
    if (roots.empty()) return std::nullopt;
    return params_from_lambda(g, *f.lambda_, roots.front(), f.n_dim).potential;
}

inline Json params_json(const PotentialParams& p) {
    Json j;
    j["g"] = json_number(p.g);
    j["alpha"] = json_number(p.alpha);
    j["beta"] = json_number(p.beta);
    j["A"] = json_number(p.bigA);
    j["N"] = p.n_dim;
    return j;
}

inline Json trial_json(const TrialParams& t) {
    Json j;
    j["a"] = json_number(t.a);
    j["c"] = json_number(t.c);
    j["m"] = json_number(t.m);
    return j;
}

inline Json residuals_json(const PotentialParams& p) {
    const auto mz = check_m_zero(p);
    const auto ze = check_zero_energy(p);
    Json j;
    j["m_zero"] = json_number(mz.residual);
    j["zero_energy"] = json_number(ze.residual);
    j["m_zero_satisfied"] = mz.satisfied;
    j["zero_energy_satisfied"] = ze.satisfied;
    return j;
}

inline Json solution_json(const PotentialParams& p, const TrialParams& t) {
    Json j;
    j["potential"] = params_json(p);
    j["trial"] = trial_json(t);
    j["e0"] = json_number(trial_split(p, t).e0);
    j["residuals"] = residuals_json(p);
    return j;
}

inline Json oracle_json(const VerificationReport& rep, const OracleOptions& opt) {
    Json j;
    j["energy"] = json_number(rep.oracle_energy);
    j["closed_form_e0"] = json_number(rep.closed_form_energy);
    j["energy_error"] = json_number(std::abs(rep.oracle_energy - rep.closed_form_energy));
    j["similarity"] = json_number(rep.similarity);
    j["similarity_gap"] = json_number(1.0 - rep.similarity);
    j["max_riccati_residual"] = json_number(rep.max_residual);
    j["r_max"] = json_number(opt.r_max);
    j["grid"] = opt.n_points;
    return j;
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write output file '" + path + "'");
    out << text;
    out.flush();
    if (!out) throw UsageError("failed while writing '" + path + "'");
}

inline void emit(std::ostream& out, const RunSummary& s, const std::string& format) {
    out << (format == "json" ? s.to_json() : s.to_human());
}

}  // namespace detail

/// Runs the command line `args` (without the program name). Returns the exit
/// code: 0 success/pass, 1 domain outcome (no root, verification failed),
/// 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;

    CLI::App app{"Zero-eigenvalue groundstates of generalized sombrero potentials", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    std::string format = "human";
    const auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"human", "json"}))
            ->capture_default_str();
    };

    // derive
    ParamFlags derive_flags;
    auto* derive = app.add_subcommand("derive", "trial exponents, h(r) and E0 for a potential");
    add_param_flags(derive, derive_flags, false);
    add_format(derive);

    // from-lambda
    ParamFlags lambda_flags;
    auto* from_lambda =
        app.add_subcommand("from-lambda", "zero-mode potentials for a given lambda");
    from_lambda->add_option("--g", lambda_flags.g, "coupling g (> 0)");
    from_lambda->add_option("--lambda", lambda_flags.lambda_, "lambda = alpha^2 / (4 beta)")
        ->required();
    from_lambda->add_option("--N", lambda_flags.n_dim, "spatial dimension N")
        ->capture_default_str();
    add_format(from_lambda);

    // scan-lambda
    int scan_n = 3;
    double scan_from = 0.0;
    double scan_to = 0.0;
    int scan_steps = 0;
    std::string scan_out;
    auto* scan = app.add_subcommand("scan-lambda", "write the eta(lambda) dataset");
    scan->add_option("--N", scan_n, "spatial dimension N")->capture_default_str();
    scan->add_option("--from", scan_from, "first lambda (> 1)")->required();
    scan->add_option("--to", scan_to, "last lambda")->required();
    scan->add_option("--steps", scan_steps, "number of lambda values (>= 2)")->required();
    scan->add_option("--out", scan_out, "output CSV path")->required();
    add_format(scan);

    // jackiw
    int jackiw_n = 3;
    auto* jackiw = app.add_subcommand("jackiw", "both exactly solvable Jackiw branches");
    jackiw->add_option("--N", jackiw_n, "spatial dimension N")->capture_default_str();
    add_format(jackiw);

    // eta-mu
    ParamFlags eta_mu_flags;
    auto* eta_mu = app.add_subcommand("eta-mu", "zero-mode potential in the (r0, mu, eta) form");
    eta_mu->add_option("--g", eta_mu_flags.g, "coupling g (> 0)")->required();
    eta_mu->add_option("--N", eta_mu_flags.n_dim, "spatial dimension N")->capture_default_str();
    double eta_mu_rmax = 8.0;
    int eta_mu_grid = 2000;
    eta_mu->add_option("--rmax", eta_mu_rmax, "oracle extent")->capture_default_str();
    eta_mu->add_option("--grid", eta_mu_grid, "oracle grid points (>= 16)")
        ->capture_default_str();
    add_format(eta_mu);

    // verify
    ParamFlags verify_flags;
    bool verify_eta_mu = false;
    double verify_rmax = 8.0;
    int verify_grid = 2000;
    auto* verify = app.add_subcommand("verify", "check a potential against the eigensolver");
    add_param_flags(verify, verify_flags, true);
    verify->add_flag("--eta-mu", verify_eta_mu, "verify the eta-mu solution for --g, --N");
    verify->add_option("--rmax", verify_rmax, "oracle extent")->capture_default_str();
    verify->add_option("--grid", verify_grid, "oracle grid points (>= 16)")
        ->capture_default_str();
    add_format(verify);

    // plot-data
    ParamFlags plot_flags;
    std::string plot_what;
    double plot_from = 0.0;
    double plot_to = 0.0;
    int plot_steps = 0;
    std::string plot_out;
    auto* plot = app.add_subcommand("plot-data", "write V(r) or psi(r) samples");
    plot->add_option("--what", plot_what, "potential | wavefunction")
        ->required()
        ->check(CLI::IsMember({"potential", "wavefunction"}));
    add_param_flags(plot, plot_flags, true);
    plot->add_option("--r-from", plot_from, "first radius (>= 0)")->capture_default_str();
    plot->add_option("--r-to", plot_to, "last radius")->required();
    plot->add_option("--steps", plot_steps, "number of samples (>= 2)")->required();
    plot->add_option("--out", plot_out, "output CSV path")->required();
    add_format(plot);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << "\n";
        return kSuccess;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (derive->parsed()) {
            const auto p = explicit_params(derive_flags);
            const auto t = derive_trial(p);
            const auto split = trial_split(p, t);
            RunSummary s("derive");
            s["inputs"] = params_json(p);
            s["trial"] = trial_json(t);
            Json h;
            h["coeff_inv_sq"] = json_number(split.inv_sq);
            h["coeff_inv"] = json_number(split.inv);
            h["sign_constant"] = h_sign_constant(split);
            s["h"] = h;
            s["e0"] = json_number(split.e0);
            s["residuals"] = residuals_json(p);
            emit(out, s, format);
            return kSuccess;
        }

        if (from_lambda->parsed()) {
            const double g = require_g(lambda_flags);
            require_n(lambda_flags.n_dim);
            const double lambda_ = *lambda_flags.lambda_;
            if (!std::isfinite(lambda_)) throw UsageError("--lambda must be finite");
            const auto roots = solve_eta(lambda_, lambda_flags.n_dim);
            RunSummary s("from-lambda");
            Json inputs;
            inputs["g"] = json_number(g);
            inputs["lambda"] = json_number(lambda_);
            inputs["N"] = lambda_flags.n_dim;
            s["inputs"] = inputs;
            Json sols = Json::array();
            for (double eta : roots) {
                const auto sol = params_from_lambda(g, lambda_, eta, lambda_flags.n_dim);
                Json j;
                j["eta"] = json_number(eta);
                const Json fields = solution_json(sol.potential, sol.trial);
                for (const auto& [k, v] : fields.items())
                    j[k] = v;
                sols.push_back(j);
            }
            s["solutions"] = sols;
            emit(out, s, format);
            if (roots.empty()) {
                err << "no eta in (0,1) for lambda = " << format_number(lambda_) << "\n";
                return kDomainFailure;
            }
            return kSuccess;
        }

        if (scan->parsed()) {
            require_n(scan_n);
            if (!(scan_from > 1.0)) throw UsageError("--from must be > 1");
            if (!(scan_to > scan_from)) throw UsageError("--to must be greater than --from");
            if (scan_steps < 2) throw UsageError("--steps must be >= 2");
            CsvTable table({"lambda", "eta"});
            int with_root = 0;
            for (int i = 0; i < scan_steps; ++i) {
                const double lambda_ =
                    i == scan_steps - 1
                        ? scan_to
                        : scan_from + (scan_to - scan_from) * i / (scan_steps - 1);
                const auto roots = solve_eta(lambda_, scan_n);
                if (roots.empty()) table.add_row({lambda_, std::nullopt});
                for (double eta : roots) table.add_row({lambda_, eta});
                with_root += roots.empty() ? 0 : 1;
            }
            write_file(scan_out, table.str());
            RunSummary s("scan-lambda");
            Json inputs;
            inputs["N"] = scan_n;
            inputs["from"] = json_number(scan_from);
            inputs["to"] = json_number(scan_to);
            inputs["steps"] = scan_steps;
            s["inputs"] = inputs;
            s["rows"] = table.rows();
            s["lambdas_with_root"] = with_root;
            s["out"] = scan_out;
            emit(out, s, format);
            return kSuccess;
        }

        if (jackiw->parsed()) {
            require_n(jackiw_n);
            const auto branches = jackiw_solutions(jackiw_n);
            RunSummary s("jackiw");
            Json inputs;
            inputs["N"] = jackiw_n;
            s["inputs"] = inputs;
            s["r0_fourth"] = json_number(jackiw_r0_fourth(jackiw_n));
            s["r0_sq"] = json_number(std::sqrt(jackiw_r0_fourth(jackiw_n)));
            Json arr = Json::array();
            for (const auto& b : branches) {
                Json j;
                j["alpha"] = json_number(b.potential.alpha);
                j["c"] = json_number(b.trial.c);
                j["e0"] = json_number(b.e0);
                const Json fields = solution_json(b.potential, b.trial);
                for (const auto& [k, v] : fields.items())
                    if (k != "e0") j[k] = v;
                arr.push_back(j);
            }
            s["branches"] = arr;
            emit(out, s, format);
            return kSuccess;
        }

        if (eta_mu->parsed()) {
            const double g = require_g(eta_mu_flags);
            require_n(eta_mu_flags.n_dim);
            const RadialGrid grid_check(eta_mu_rmax, eta_mu_grid);
            (void)grid_check;
            ZeroModeSolution sol;
            try {
                sol = solve_eta_mu(g, eta_mu_flags.n_dim);
            } catch (const SolverError& e) {
                err << e.what() << "\n";
                return kDomainFailure;
            }
            OracleOptions opt;
            opt.r_max = eta_mu_rmax;
            opt.n_points = eta_mu_grid;
            const auto rep = verify_solution(sol, {}, opt);
            RunSummary s("eta-mu");
            Json inputs;
            inputs["g"] = json_number(g);
            inputs["N"] = eta_mu_flags.n_dim;
            s["inputs"] = inputs;
            s["r0_sq"] = json_number(sol.jackiw_form->r0_sq);
            s["eta"] = json_number(sol.jackiw_form->eta);
            s["mu"] = json_number(sol.jackiw_form->mu);
            s["c"] = json_number(sol.trial.c);
            s["c_rule"] = "c = (1 - eta) g r0^2 / 2";
            s["psi_maximum_radius"] =
                json_number(maxima_radius({sol.trial, sol.potential}).maxima.front());
            const Json fields = solution_json(sol.potential, sol.trial);
            for (const auto& [k, v] : fields.items()) s[k] = v;
            s["oracle"] = oracle_json(rep, opt);
            s["verification"] = rep.passed ? "PASS" : "FAIL";
            emit(out, s, format);
            return rep.passed ? kSuccess : kDomainFailure;
        }

        if (verify->parsed()) {
            const RadialGrid grid_check(verify_rmax, verify_grid);
            (void)grid_check;
            PotentialParams p;
            if (verify_eta_mu) {
                if (verify_flags.lambda_ || verify_flags.alpha || verify_flags.beta ||
                    verify_flags.bigA)
                    throw UsageError("--eta-mu cannot be combined with other parameter flags");
                const double g = require_g(verify_flags);
                require_n(verify_flags.n_dim);
                try {
                    p = solve_eta_mu(g, verify_flags.n_dim).potential;
                } catch (const SolverError& e) {
                    err << e.what() << "\n";
                    return kDomainFailure;
                }
            } else {
                const auto resolved = resolve_params(verify_flags);
                if (!resolved) {
                    err << "no eta in (0,1) for the given lambda\n";
                    return kDomainFailure;
                }
                p = *resolved;
            }
            OracleOptions opt;
            opt.r_max = verify_rmax;
            opt.n_points = verify_grid;
            const auto t = derive_trial(p);
            const auto rep = verify_potential(p, t, {}, opt);
            RunSummary s("verify");
            s["inputs"] = params_json(p);
            s["trial"] = trial_json(t);
            s["e0"] = json_number(rep.closed_form_energy);
            s["residuals"] = residuals_json(p);
            s["oracle"] = oracle_json(rep, opt);
            Json verdicts;
            verdicts["energy_match"] = rep.energy_ok;
            verdicts["eigenvector_match"] = rep.similarity_ok;
            verdicts["m_zero"] = rep.m_zero.satisfied;
            verdicts["zero_energy"] = rep.zero_energy.satisfied;
            verdicts["passed"] = rep.passed;
            s["verdicts"] = verdicts;
            s["failed_checks"] = rep.failed_checks;
            s["verification"] = rep.passed ? "PASS" : "FAIL";
            emit(out, s, format);
            for (const auto& f : rep.failed_checks) err << "check failed: " << f << "\n";
            return rep.passed ? kSuccess : kDomainFailure;
        }

        if (plot->parsed()) {
            if (!(plot_from >= 0.0)) throw UsageError("--r-from must be >= 0");
            if (!(plot_to > plot_from)) throw UsageError("--r-to must be greater than --r-from");
            if (plot_steps < 2) throw UsageError("--steps must be >= 2");
            const auto resolved = resolve_params(plot_flags);
            if (!resolved) {
                err << "no eta in (0,1) for the given lambda\n";
                return kDomainFailure;
            }
            const PotentialParams p = *resolved;
            const bool wave = plot_what == "wavefunction";
            const TrialWavefunction w = make_wavefunction(p);
            double s_peak = 0.0;
            if (wave) s_peak = eval_s0(w, maxima_radius(w).global_maximum(w));

            CsvTable table({"r", wave ? "psi" : "V"});
            for (int i = 0; i < plot_steps; ++i) {
                const double r = i == plot_steps - 1
                                     ? plot_to
                                     : plot_from + (plot_to - plot_from) * i / (plot_steps - 1);
                const double value =
                    wave ? std::exp(-(eval_s0(w, r) - s_peak)) : eval_potential(p, r);
                table.add_row({r, value});
            }
            write_file(plot_out, table.str());
            RunSummary s("plot-data");
            Json inputs = params_json(p);
            inputs["what"] = plot_what;
            inputs["r_from"] = json_number(plot_from);
            inputs["r_to"] = json_number(plot_to);
            inputs["steps"] = plot_steps;
            s["inputs"] = inputs;
            s["rows"] = table.rows();
            s["out"] = plot_out;
            emit(out, s, format);
            return kSuccess;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "failed: " << e.what() << "\n";
        return kDomainFailure;
    }
    return kUsageError;
}

}  // namespace sombrero::cli
