#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "zpfbell/runner.hpp"
#include "zpfbell/source.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Simulates polarization-entangled beam pairs through a partial Bell-state "
                 "analyzer: coincidence tables, Monte Carlo estimates, and a two-photon "
                 "oracle check."};

    std::string state_text;
    double beta = 0.0;
    double kappa = 0.0;
    std::string engine_text = "exact";
    std::uint64_t samples = 200000;
    std::uint64_t seed = 1;
    double coupling = 0.1;
    double epsilon = 0.0;
    std::string format_text = "json";
    std::string sweep_text;

    auto* state_opt =
        app.add_option("--state", state_text, "Bell state: psi+, psi-, phi+ or phi-");
    auto* beta_opt = app.add_option("--beta", beta, "Rotator angle in radians");
    auto* kappa_opt = app.add_option("--kappa", kappa, "Retarder phase in radians");
    app.add_option("--engine", engine_text, "Engine: exact, mc, oracle or all")
        ->capture_default_str();
    app.add_option("--samples", samples, "Monte Carlo sample count")->capture_default_str();
    app.add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--coupling", coupling, "Crystal coupling strength g")->capture_default_str();
    auto* epsilon_opt =
        app.add_option("--epsilon", epsilon,
                       "Classification threshold in (0, 1); defaults to 1e-9, or 0.05 for mc");
    app.add_option("--format", format_text, "Output format: json or csv")->capture_default_str();
    auto* sweep_opt = app.add_option(
        "--sweep", sweep_text, "Grid sweep: beta=start:stop:steps,kappa=start:stop:steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        zpfbell::RunConfig config;
        if (state_opt->count() > 0) {
            const auto state = zpfbell::parse_bell_state(state_text);
            if (!state) {
                throw zpfbell::UsageError("unknown state '" + state_text + "'");
            }
            config.state = *state;
        }
        if (beta_opt->count() > 0) config.beta = beta;
        if (kappa_opt->count() > 0) config.kappa = kappa;
        const auto engine = zpfbell::parse_engine(engine_text);
        if (!engine) {
            throw zpfbell::UsageError("unknown engine '" + engine_text + "'");
        }
        config.engine = *engine;
        const auto format = zpfbell::parse_format(format_text);
        if (!format) {
            throw zpfbell::UsageError("unknown format '" + format_text + "'");
        }
        config.format = *format;
        config.samples = samples;
        config.seed = seed;
        config.coupling = coupling;
        if (epsilon_opt->count() > 0) config.epsilon = epsilon;
        if (sweep_opt->count() > 0) {
            const auto axes = zpfbell::parse_sweep_spec(sweep_text);
            config.sweep_beta = axes.first;
            config.sweep_kappa = axes.second;
        }
        std::cout << zpfbell::execute(config);
    } catch (const zpfbell::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
