// Command-line front end for the photon-pair simulator: single-point reports,
// grid sweeps, closed-form evaluation, dressed-level energies and the
// cross-engine verification suite.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 verification failure.

#include <CLI11.hpp>

#include "nopo/analytic.hpp"
#include "nopo/errors.hpp"
#include "nopo/liouvillian.hpp"
#include "nopo/minimize.hpp"
#include "nopo/observables.hpp"
#include "nopo/steady_state.hpp"
#include "nopo/sweep.hpp"
#include "nopo/weak_drive.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerification = 4;

void print_value(const char* name, const std::optional<double>& v) {
    if (v.has_value()) {
        std::printf("%-10s %.12g\n", name, *v);
    } else {
        std::printf("%-10s undefined\n", name);
    }
}

struct PointArgs {
    nopo::SystemParams params;
    nopo::ModeCutoffs cutoffs;
    std::string engine = "master-equation";
};

void add_param_options(CLI::App* cmd, nopo::SystemParams& p) {
    cmd->add_option("--delta-a", p.delta_a, "Detuning of the fundamental mode");
    cmd->add_option("--delta-b", p.delta_b, "Detuning of subharmonic mode b");
    cmd->add_option("--delta-c", p.delta_c, "Detuning of subharmonic mode c");
    cmd->add_option("--g", p.g, "Pair-conversion coupling");
    cmd->add_option("--E", p.E, "Drive amplitude");
    cmd->add_option("--kappa-a", p.kappa_a, "Decay rate of the fundamental mode");
    cmd->add_option("--kappa-b", p.kappa_b, "Decay rate of mode b");
    cmd->add_option("--kappa-c", p.kappa_c, "Decay rate of mode c");
}

void add_cutoff_options(CLI::App* cmd, nopo::ModeCutoffs& cut) {
    cmd->add_option("--na-max", cut.n_a_max, "Fock cutoff of mode a");
    cmd->add_option("--nb-max", cut.n_b_max, "Fock cutoff of mode b");
    cmd->add_option("--nc-max", cut.n_c_max, "Fock cutoff of mode c");
}

int run_point_command(const PointArgs& args) {
    const nopo::Engine engine = nopo::parse_engine(args.engine);
    if (engine == nopo::Engine::weak_drive) {
        const auto amps = nopo::solve_amplitudes(args.params);
        if (amps.regime_warning) {
            std::fprintf(stderr, "warning: E exceeds 0.1*min(kappa); the weak-drive "
                                 "hierarchy is outside its validity regime\n");
        }
    }
    const nopo::CorrelationReport r =
        nopo::run_point(args.params, engine, args.cutoffs);
    print_value("n_a", r.n_a);
    print_value("n_b", r.n_b);
    print_value("n_c", r.n_c);
    print_value("n_D", r.n_D);
    print_value("g2_a", r.g2_a);
    print_value("g2_b", r.g2_b);
    print_value("g2_c", r.g2_c);
    print_value("g2_D", r.g2_D);
    print_value("g2_bc", r.g2_bc);
    print_value("g2_ab", r.g2_ab);
    print_value("g2_ac", r.g2_ac);
    return kExitOk;
}

int run_sweep_command(const std::string& config_path, const std::string& out_path,
                      const std::string& format, int workers,
                      const std::string& engine_override) {
    std::ifstream file(config_path);
    if (!file) {
        std::fprintf(stderr, "error: cannot read config \"%s\"\n", config_path.c_str());
        return kExitConfig;
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    nopo::SweepConfig config = nopo::parse_config(buffer.str());
    if (!engine_override.empty()) {
        config.engine = nopo::parse_engine(engine_override);
        nopo::validate(config);
    }
    const nopo::SweepResult result = nopo::run_sweep(config, workers);
    if (out_path.empty()) {
        if (format == "csv") {
            nopo::emit_csv(result, std::cout);
        } else {
            nopo::emit_json(result, std::cout);
        }
    } else {
        nopo::emit_to_file(result, format, out_path);
    }
    return kExitOk;
}

int run_analytic_command(const nopo::SystemParams& params, double kappa_pair) {
    const double kd = (kappa_pair > 0.0) ? kappa_pair : params.kappa_b + params.kappa_c;
    std::printf("g2_D       %.12g\n", nopo::g2_pair_analytic(params));
    std::printf("n_D        %.12g\n", nopo::pair_number_analytic(params));
    std::printf("delta_opt  %.12g\n", nopo::optimal_delta(params.delta_a, params.g));
    std::printf("g2_D_curve %.12g\n",
                nopo::g2_on_optimal_curve(params.delta_a, params.g, params.kappa_a, kd));
    std::printf("delta_a_opt %.12g\n",
                nopo::optimal_delta_a(params.g, params.kappa_a,
                                      0.5 * (params.kappa_b + params.kappa_c)));
    return kExitOk;
}

int run_dressed_command(double omega_a, double omega_b, double omega_c, double g) {
    const nopo::DressedLevels levels = nopo::dressed_energies(omega_a, omega_b, omega_c, g);
    std::printf("E_1+  %.12g\n", levels.e1_plus);
    std::printf("E_1-  %.12g\n", levels.e1_minus);
    if (levels.e2_plus.has_value()) {
        std::printf("E_2+  %.12g\n", *levels.e2_plus);
        std::printf("E_20  %.12g\n", *levels.e2_zero);
        std::printf("E_2-  %.12g\n", *levels.e2_minus);
    } else {
        std::printf("E_2   unavailable (omega_b + omega_c != omega_a)\n");
    }
    return kExitOk;
}

// Cross-engine oracle suite: master equation vs weak-drive hierarchy vs
// closed forms on a deterministic pseudo-random parameter set drawn on the
// resonant-drive curve.
int run_verify_command(int points, bool quiet) {
    std::mt19937 rng(20240901u); // fixed seed: the product path has no randomness
    std::uniform_real_distribution<double> g_draw(1.0, 20.0);
    std::uniform_real_distribution<double> da_draw(0.5, 5.0);

    const nopo::ModeCutoffs cutoffs{3, 4, 4};
    double worst_pair = 0.0, worst_exact = 0.0;
    int failures = 0;
    for (int i = 0; i < points; ++i) {
        nopo::SystemParams p;
        p.g = g_draw(rng);
        p.delta_a = da_draw(rng) * p.g;
        p.delta_b = p.delta_c = nopo::optimal_delta(p.delta_a, p.g);
        p.E = 0.01;
        p.kappa_a = 1.0;
        p.kappa_b = p.kappa_c = 0.5;

        const nopo::CorrelationReport meq =
            nopo::run_point(p, nopo::Engine::master_equation, cutoffs);
        const auto wd = nopo::observables_from_amplitudes(nopo::solve_amplitudes(p));
        const double an_n = nopo::pair_number_analytic(p);
        const double an_g2 = nopo::g2_pair_analytic(p);

        const auto rel = [](double x, double y) {
            return std::abs(x - y) / std::max(std::abs(y), 1e-300);
        };
        const double meq_nd = meq.n_D.value();
        const double meq_g2 = meq.g2_D.value();
        const double pair_dev =
            std::max({rel(meq_nd, wd.n_D), rel(meq_nd, an_n),
                      rel(meq_g2, wd.g2_D), rel(meq_g2, an_g2)});
        const double exact_dev = std::max(rel(wd.n_D, an_n), rel(wd.g2_D, an_g2));
        worst_pair = std::max(worst_pair, pair_dev);
        worst_exact = std::max(worst_exact, exact_dev);
        const bool ok = pair_dev <= 0.10 && exact_dev <= 1e-10;
        if (!ok) {
            ++failures;
            std::fprintf(stderr,
                         "disagreement at g=%.6g delta_a=%.6g: engine dev %.3g, "
                         "hierarchy-vs-closed-form dev %.3g\n",
                         p.g, p.delta_a, pair_dev, exact_dev);
        } else if (!quiet) {
            std::printf("point %3d: g=%7.4f delta_a=%8.4f dev=%.2e exact=%.2e ok\n",
                        i, p.g, p.delta_a, pair_dev, exact_dev);
        }
    }
    std::printf("verify: %d/%d points agree; worst engine deviation %.3g "
                "(tolerance 0.1), worst hierarchy-vs-closed-form %.3g "
                "(tolerance 1e-10)\n",
                points - failures, points, worst_pair, worst_exact);
    return failures == 0 ? kExitOk : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon-pair blockade simulator for a driven nondegenerate "
                 "optical parametric oscillator"};
    app.require_subcommand(1);

    PointArgs point_args;
    CLI::App* point = app.add_subcommand("point", "Evaluate one parameter point");
    add_param_options(point, point_args.params);
    add_cutoff_options(point, point_args.cutoffs);
    point->add_option("--engine", point_args.engine,
                      "master-equation|weak-drive|analytic");

    std::string config_path, out_path, format = "csv", sweep_engine;
    int workers = 0;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a grid sweep from a JSON config");
    sweep->add_option("config", config_path, "JSON sweep configuration")->required();
    sweep->add_option("--out", out_path, "Output path (stdout when omitted)");
    sweep->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--workers", workers, "Worker threads (0 = all cores)");
    sweep->add_option("--engine", sweep_engine, "Override the config's engine");

    nopo::SystemParams analytic_params;
    double kappa_pair = 0.0;
    CLI::App* analytic = app.add_subcommand("analytic", "Evaluate the closed forms");
    add_param_options(analytic, analytic_params);
    analytic->add_option("--kappa-pair", kappa_pair,
                         "Pair decay rate in the curve formula "
                         "(default kappa_b + kappa_c)");

    double omega_a = 0.0, omega_b = 0.0, omega_c = 0.0, dressed_g = 0.0;
    CLI::App* dressed = app.add_subcommand("dressed", "Print dressed-level energies");
    dressed->add_option("--omega-a", omega_a, "Bare frequency of mode a")->required();
    dressed->add_option("--omega-b", omega_b, "Bare frequency of mode b")->required();
    dressed->add_option("--omega-c", omega_c, "Bare frequency of mode c")->required();
    dressed->add_option("--g", dressed_g, "Coupling strength")->required();

    int verify_points = 100;
    bool verify_quiet = false;
    CLI::App* verify = app.add_subcommand("verify", "Cross-engine oracle suite");
    verify->add_option("--points", verify_points, "Number of parameter draws");
    verify->add_flag("--quiet", verify_quiet, "Print only the summary line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (point->parsed()) {
            return run_point_command(point_args);
        }
        if (sweep->parsed()) {
            return run_sweep_command(config_path, out_path, format, workers, sweep_engine);
        }
        if (analytic->parsed()) {
            return run_analytic_command(analytic_params, kappa_pair);
        }
        if (dressed->parsed()) {
            return run_dressed_command(omega_a, omega_b, omega_c, dressed_g);
        }
        if (verify->parsed()) {
            return run_verify_command(verify_points, verify_quiet);
        }
    } catch (const nopo::InvalidConfig& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return kExitConfig;
    } catch (const nopo::DimensionMismatch& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return kExitConfig;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "numerical failure: %s\n", err.what());
        return kExitNumerical;
    }
    return kExitConfig;
}
