// Command-line driver: `verify` runs the exhaustive invariant suite,
// `run <experiment>` writes CSV series, a JSON manifest and a plot script.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include <semipred/experiments.hpp>

namespace {

// Fill unset flags from a JSON config file; explicit flags win.
void apply_config_file(const std::string& path, CLI::App& cmd,
                       semipred::ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    auto take = [&](const char* flag, const char* key, auto& field) {
        if (cmd.count(flag) == 0 && doc.contains(key))
            field = doc.at(key).get<std::decay_t<decltype(field)>>();
    };
    take("--registry", "registry", cfg.registry_path);
    take("--horizon", "horizon", cfg.horizon);
    take("--stages", "stages", cfg.stages);
    take("--depth", "depth", cfg.depth);
    take("--precision", "precision", cfg.precision);
    take("--seed", "seed", cfg.seed);
    take("--out", "out", cfg.out_dir);
}

void add_common_flags(CLI::App& cmd, semipred::ExperimentConfig& cfg,
                      std::string& config_path) {
    cmd.add_option("--config", config_path, "JSON config file; flags override it");
    cmd.add_option("--registry", cfg.registry_path, "registry manifest path");
    cmd.add_option("--horizon", cfg.horizon, "horizon n (0: experiment default)");
    cmd.add_option("--stages", cfg.stages, "stage cap T (0: experiment default)");
    cmd.add_option("--depth", cfg.depth, "depth cap (0: experiment default)");
    cmd.add_option("--precision", cfg.precision, "working precision in bits");
    cmd.add_option("--seed", cfg.seed, "master seed for sequence sampling");
    cmd.add_option("--out", cfg.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semimeasure prediction lab"};
    app.require_subcommand(1);

    semipred::ExperimentConfig cfg;
    std::string config_path;

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    add_common_flags(*verify, cfg, config_path);

    std::string experiment;
    CLI::App* run = app.add_subcommand("run", "run a named experiment");
    run->add_option("experiment", experiment, "experiment name")->required();
    add_common_flags(*run, cfg, config_path);

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App& active = *app.get_subcommands().front();
        if (!config_path.empty()) apply_config_file(config_path, active, cfg);
        semipred::set_precision_bits(cfg.precision);
        if (cfg.precision < 50)
            std::cerr << "warning: precision " << cfg.precision
                      << " bits widens the comparison tolerance\n";

        if (verify->parsed()) {
            semipred::ModelRegistry reg =
                cfg.registry_path.empty()
                    ? semipred::default_registry()
                    : semipred::load_registry_manifest(cfg.registry_path);
            unsigned depth = cfg.depth ? cfg.depth : 8;
            unsigned horizon = cfg.horizon ? cfg.horizon : 10;
            semipred::VerifyResult res =
                semipred::run_verification(reg, depth, horizon);
            for (const auto& line : res.lines) {
                std::cout << line.name << ": " << (line.ok ? "pass" : "FAIL");
                if (!line.detail.empty()) std::cout << " (" << line.detail << ")";
                std::cout << "\n";
            }
            return res.ok ? 0 : 1;
        }

        semipred::run_experiment(experiment, cfg);
        std::cout << "wrote " << cfg.out_dir << "/" << experiment
                  << "_manifest.json\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
