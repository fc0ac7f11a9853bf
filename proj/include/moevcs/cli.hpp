// Batch front-end: run the optimizer and baselines on a scenario and
// export fronts, schedules, load profiles, and tariff series.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "moevcs/baselines.hpp"
#include "moevcs/moea.hpp"

namespace moevcs {

struct RunOptions {
    int set_id = 0;                       // 1..4, or 0 when scenario_file is given
    std::optional<std::filesystem::path> scenario_file;
    MoeaParams params;
    std::filesystem::path out_dir;
    std::vector<std::string> baselines;   // subset of {"b1".."b5"}
};

struct ScenarioExportOptions {
    int set_id = 1;
    std::uint64_t seed = 0;
    std::filesystem::path out_file;
};

// Exit codes: 0 success, 1 usage error, 2 runtime error.
int cmd_run(const RunOptions& opt);
int cmd_scenario_export(const ScenarioExportOptions& opt);
int cmd_scenario_validate(const std::filesystem::path& file);

// Exporters shared by cmd_run and the tests.
void write_pareto_csv(std::span<const EvaluatedSolution> front, std::ostream& out);
void write_load_profile_csv(const Schedule& sch, const Scenario& s, std::ostream& out);
void write_tariff_csv(const Schedule& sch, const Scenario& s, std::ostream& out);

}  // namespace moevcs
