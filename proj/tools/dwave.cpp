#include "dwave/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

template <typename T>
CLI::Option* env_option(CLI::App& app, const std::string& name, T& target, const std::string& help,
                        const std::string& env) {
    return app.add_option(name, target, help)->envname(env)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    dwave::cli::RunConfig config;
    CLI::App app{"Diffusion-wave asymptotics: exact coefficients, identity checks and decay-rate experiments"};
    app.require_subcommand(1);

    env_option(app, "--n", config.n, "space dimension", "DWAVE_N");
    env_option(app, "--b", config.b, "wave profile order", "DWAVE_B");
    env_option(app, "--l", config.l, "diffusive profile order", "DWAVE_L");
    env_option(app, "--i", config.i, "remainder piece: 1, 2, or 0 for both", "DWAVE_I");
    env_option(app, "--region", config.region, "frequency region: L, M, H or ALL", "DWAVE_REGION");
    env_option(app, "--m", config.m, "expansion order for coeffs and equiv", "DWAVE_M");
    env_option(app, "--max-k", config.max_k, "highest derivative order", "DWAVE_MAX_K");
    env_option(app, "--data", config.data, "initial data: gaussian[(s)], box[(R)], cauchy-like, ring(c,w)",
               "DWAVE_DATA");
    double sigma = 1.0;
    auto* sigma_opt = app.add_option("--sigma", sigma, "gaussian width")->envname("DWAVE_SIGMA");
    env_option(app, "--R", config.R, "radial quadrature cutoff", "DWAVE_R");
    env_option(app, "--nodes", config.nodes, "Gauss-Legendre nodes per panel", "DWAVE_NODES");
    env_option(app, "--tmin", config.tmin, "fit window start", "DWAVE_TMIN");
    env_option(app, "--tmax", config.tmax, "fit window end", "DWAVE_TMAX");
    env_option(app, "--samples", config.samples, "geometric samples in the window", "DWAVE_SAMPLES");
    env_option(app, "--format", config.format, "table, json or csv", "DWAVE_FORMAT");
    env_option(app, "--out", config.out, "output file (decompose: output directory)", "DWAVE_OUT");
    env_option(app, "--seed", config.seed, "sampling seed", "DWAVE_SEED");
    app.add_flag("--theorem1", config.theorem1, "rates: run the full decay check (needs b > n/2)")
        ->envname("DWAVE_THEOREM1");

    int table_L = 0, table_alpha = 0, table_beta = 0, table_sing = 0, table_ik = 0;
    auto* L_opt = app.add_option("--L", table_L, "coeffs: L_j for j <= value");
    auto* alpha_opt = app.add_option("--alpha", table_alpha, "coeffs: alpha_{j,k} for j + k <= value");
    auto* beta_opt = app.add_option("--beta", table_beta, "coeffs: beta_l for l <= value");
    auto* sing_opt = app.add_option("--sing", table_sing, "coeffs: singular limits for k <= value");
    auto* ik_opt = app.add_option("--ik", table_ik, "coeffs: I_k for k <= value");
    app.add_flag("--corrupt", config.corrupt, "lemmas: corrupt one coefficient to exercise the failure path");
    env_option(app, "--t", config.t, "decompose: snapshot time", "DWAVE_T");
    env_option(app, "--grid", config.grid, "decompose: grid points per axis (0 = default)", "DWAVE_GRID");
    env_option(app, "--length", config.length, "decompose: box side (0 = default)", "DWAVE_LENGTH");

    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"coeffs", "print exact expansion coefficients"},
             {"lemmas", "run the identity and bound checks"},
             {"equiv", "compare the profile and double-sum diffusive expansions"},
             {"rates", "fit remainder decay rates"},
             {"decompose", "snapshot the wave/heat decomposition at one time"}}) {
        app.add_subcommand(name, help)->fallthrough()->callback([&config, n = name] { config.subcommand = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return dwave::cli::kExitUsage;
    }

    if (sigma_opt->count() > 0) config.sigma = sigma;
    if (L_opt->count() > 0) config.L = table_L;
    if (alpha_opt->count() > 0) config.alpha = table_alpha;
    if (beta_opt->count() > 0) config.beta = table_beta;
    if (sing_opt->count() > 0) config.sing = table_sing;
    if (ik_opt->count() > 0) config.ik = table_ik;
    return dwave::cli::run(config, std::cout, std::cerr);
}
