// Command-line front-end.
//
//   moevcs run --set 1 --pop 100 --gens 500 --seed 7 --out results/
//   moevcs scenario export --set 2 --seed 0 --out set2.json
//   moevcs scenario validate set2.json

#include <algorithm>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "moevcs/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Coordinated EV charging/discharging scheduling under a "
                 "load-dependent time-of-use tariff"};
    app.require_subcommand(1);

    moevcs::RunOptions run_opt;
    std::string scenario_file;
    std::vector<std::string> baselines;
    CLI::App* run = app.add_subcommand("run", "Optimize a scenario and export the results");
    auto* set_opt = run->add_option("--set", run_opt.set_id, "Built-in problem set (1-4)")
                        ->check(CLI::Range(1, 4));
    auto* file_opt = run->add_option("--scenario", scenario_file, "Scenario JSON file")
                         ->check(CLI::ExistingFile)
                         ->excludes(set_opt);
    set_opt->excludes(file_opt);
    run->add_option("--pop", run_opt.params.population_size, "Population size")
        ->capture_default_str();
    run->add_option("--gens", run_opt.params.max_generations, "Generation budget")
        ->capture_default_str();
    run->add_option("--seed", run_opt.params.seed, "RNG seed")->capture_default_str();
    run->add_option("--out", run_opt.out_dir, "Output directory")->required();
    run->add_option("--baselines", baselines,
                    "Comma-separated baselines to run (b1,b2,b3,b4,b5)")
        ->delimiter(',');
    run->add_option("--threads", run_opt.params.threads,
                    "Evaluation worker threads (0 = all cores)")
        ->capture_default_str();

    moevcs::ScenarioExportOptions export_opt;
    std::string validate_file;
    CLI::App* scenario = app.add_subcommand("scenario", "Export or validate scenario files");
    scenario->require_subcommand(1);
    CLI::App* exp = scenario->add_subcommand("export", "Write a built-in scenario to JSON");
    exp->add_option("--set", export_opt.set_id, "Built-in problem set (1-4)")
        ->check(CLI::Range(1, 4))
        ->required();
    exp->add_option("--seed", export_opt.seed, "RNG seed")->capture_default_str();
    exp->add_option("--out", export_opt.out_file, "Output file")->required();
    CLI::App* val = scenario->add_subcommand("validate", "Check a scenario file");
    val->add_option("file", validate_file, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (run->parsed()) {
        if (run_opt.set_id == 0 && scenario_file.empty()) {
            std::cerr << "run: either --set or --scenario is required\n";
            return 1;
        }
        if (!scenario_file.empty()) run_opt.scenario_file = scenario_file;
        for (auto& b : baselines) {
            std::transform(b.begin(), b.end(), b.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        }
        run_opt.baselines = std::move(baselines);
        return moevcs::cmd_run(run_opt);
    }
    if (exp->parsed()) return moevcs::cmd_scenario_export(export_opt);
    return moevcs::cmd_scenario_validate(validate_file);
}
