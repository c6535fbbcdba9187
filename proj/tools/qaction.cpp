// qaction: run the computation models from the command line.
//
//   qaction grover-h1 --N 16 --E 1
//   qaction shor-phase --n 3 --alpha pi --format json
//   qaction cavity --target 12 --window 8:16 --seed 7 --out cavity.csv
//   qaction sweep --model grover-h1 --param N --values 4,16,64
//
// Exit codes: 0 success, 2 configuration error, 3 numerical contract violation.

#include <map>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "qaction/cli/runner.hpp"

namespace {

using qaction::cli::ExperimentConfig;

struct Overrides {
    std::string config_file;
    std::map<std::string, std::string> values;
};

void add_key_options(CLI::App* app, Overrides& ov, const std::vector<qaction::cli::KeySpec>& keys) {
    for (const auto& k : keys) {
        const std::string key(k.key);
        std::string help(k.help);
        if (!k.fallback.empty()) help += " [" + std::string(k.fallback) + "]";
        app->add_option_function<std::string>(
            "--" + key, [&ov, key](const std::string& v) { ov.values[key] = v; }, help);
    }
}

ExperimentConfig assemble(const std::string& model, const Overrides& ov) {
    ExperimentConfig cfg;
    if (!ov.config_file.empty()) cfg = qaction::cli::load_config_file(ov.config_file);
    if (!model.empty()) {
        if (!cfg.model.empty() && cfg.model != model)
            throw qaction::ConfigError("config file is for model '" + cfg.model + "', not '" + model + "'");
        cfg.model = model;
    }
    for (const auto& [k, v] : ov.values) cfg.set(k, v);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-time computation models: evolution, timing and energy-time reports"};
    app.require_subcommand(1);

    std::map<std::string, Overrides> per_model;
    for (auto model : qaction::cli::kModels) {
        const std::string name(model);
        auto* sub = app.add_subcommand(name, "run the " + name + " model");
        auto& ov = per_model[name];
        sub->add_option("--config", ov.config_file, "flat key = value config file");
        add_key_options(sub, ov, qaction::cli::common_keys());
        add_key_options(sub, ov, qaction::cli::model_keys(model));
    }

    // A sweep accepts every key any model knows; the template model validates them.
    Overrides sweep_ov;
    std::string sweep_model, sweep_param, sweep_values, sweep_metric, sweep_fit;
    unsigned sweep_jobs = 1;
    auto* sweep = app.add_subcommand("sweep", "run one model over a parameter grid and fit a line through the origin");
    sweep->add_option("--config", sweep_ov.config_file, "flat key = value template config");
    sweep->add_option("--model", sweep_model, "model to sweep");
    sweep->add_option("--param", sweep_param, "parameter to vary")->required();
    sweep->add_option("--values", sweep_values, "comma-separated grid values")->required();
    sweep->add_option("--metric", sweep_metric, "output column to fit (default per model)");
    sweep->add_option("--fit-x", sweep_fit, "abscissa transform: value, sqrt, log2, pow2");
    sweep->add_option("--jobs", sweep_jobs, "concurrent cells")->check(CLI::PositiveNumber);
    {
        std::set<std::string> seen;
        std::vector<qaction::cli::KeySpec> all;
        for (const auto& k : qaction::cli::common_keys())
            if (seen.insert(std::string(k.key)).second) all.push_back(k);
        for (auto model : qaction::cli::kModels)
            for (const auto& k : qaction::cli::model_keys(model))
                if (seen.insert(std::string(k.key)).second) all.push_back({k.key, "", k.help});
        add_key_options(sweep, sweep_ov, all);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : qaction::cli::kExitConfig;
    }

    if (sweep->parsed()) {
        return qaction::cli::guarded(
            [&] {
                qaction::cli::SweepConfig sc;
                sc.base = assemble(sweep_model, sweep_ov);
                sc.param = sweep_param;
                sc.values = qaction::cli::split_list(sweep_values);
                sc.metric = sweep_metric;
                sc.fit_x = sweep_fit;
                sc.jobs = sweep_jobs;
                return qaction::cli::sweep(sc);
            },
            std::cerr);
    }
    for (auto model : qaction::cli::kModels) {
        const std::string name(model);
        if (app.got_subcommand(name))
            return qaction::cli::guarded([&] { return qaction::cli::run(assemble(name, per_model[name])); }, std::cerr);
    }
    return qaction::cli::kExitConfig;
}
