#include "moevcs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>

#include <json.hpp>

#include "moevcs/csv.hpp"
#include "moevcs/metrics.hpp"
#include "moevcs/scenarios.hpp"

namespace moevcs {

namespace {

using json = nlohmann::ordered_json;

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
    return out;
}

json objectives_json(const ObjectiveVector& v, double cv) {
    return json{{"f1", v.user_cost},
                {"f2", v.evcs_cost},
                {"f3", v.load_variation},
                {"cv", cv}};
}

void export_solution_files(const std::string& label, const Schedule& sch, const Scenario& s,
                           const std::filesystem::path& dir) {
    {
        auto out = open_out(dir / ("schedule_" + label + ".csv"));
        write_schedule_csv(sch, s, out);
    }
    {
        auto out = open_out(dir / ("load_profile_" + label + ".csv"));
        write_load_profile_csv(sch, s, out);
    }
    {
        auto out = open_out(dir / ("tou_tariff_" + label + ".csv"));
        write_tariff_csv(sch, s, out);
    }
}

}  // namespace

void write_pareto_csv(std::span<const EvaluatedSolution> front, std::ostream& out) {
    std::vector<const EvaluatedSolution*> sorted;
    sorted.reserve(front.size());
    for (const auto& sol : front) sorted.push_back(&sol);
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        for (int m = 0; m < 3; ++m) {
            if (a->objectives[m] != b->objectives[m]) return a->objectives[m] < b->objectives[m];
        }
        return a->cv < b->cv;
    });
    out << "f1,f2,f3,cv\n";
    for (const auto* sol : sorted) {
        out << format_double(sol->objectives.user_cost) << ','
            << format_double(sol->objectives.evcs_cost) << ','
            << format_double(sol->objectives.load_variation) << ',' << format_double(sol->cv)
            << '\n';
    }
}

void write_load_profile_csv(const Schedule& sch, const Scenario& s, std::ostream& out) {
    std::vector<SlotLoads> loads = aggregate_loads(sch, s);
    out << "slot,base,ev_charge,ev_discharge,total\n";
    for (size_t t = 0; t < loads.size(); ++t) {
        double total = s.base_load_kw[t] + loads[t].charge_kw + loads[t].discharge_kw;
        out << (t + 1) << ',' << format_double(s.base_load_kw[t]) << ','
            << format_double(loads[t].charge_kw) << ',' << format_double(loads[t].discharge_kw)
            << ',' << format_double(total) << '\n';
    }
}

void write_tariff_csv(const Schedule& sch, const Scenario& s, std::ostream& out) {
    std::vector<double> prices = prices_for(sch, s);
    out << "slot,price\n";
    for (size_t t = 0; t < prices.size(); ++t) {
        out << (t + 1) << ',' << format_double(prices[t]) << '\n';
    }
}

int cmd_run(const RunOptions& opt) {
    try {
        auto started = std::chrono::steady_clock::now();

        Scenario scenario = opt.scenario_file ? load_scenario(*opt.scenario_file)
                                              : build_problem_set(opt.set_id, opt.params.seed);
        ValidationReport report = validate_scenario(scenario);
        if (!report.valid()) {
            std::cerr << "scenario is invalid:\n";
            for (const auto& v : report.violations) std::cerr << "  - " << v << '\n';
            return 2;
        }

        std::filesystem::create_directories(opt.out_dir);

        long milestone = std::max(1L, opt.params.max_generations / 10);
        ParetoArchive archive = evolve(scenario, opt.params, [&](const GenerationStats& st) {
            if (st.generation == 1 || st.generation % milestone == 0 ||
                st.generation == opt.params.max_generations) {
                std::cout << "gen " << st.generation << "  feasible " << st.n_feasible
                          << "  best f1 " << st.best_f1 << "  f2 " << st.best_f2 << "  f3 "
                          << st.best_f3 << "  hv " << st.hypervolume << '\n';
            }
        });

        {
            auto out = open_out(opt.out_dir / "pareto_front.csv");
            write_pareto_csv(archive.front, out);
        }
        {
            auto out = open_out(opt.out_dir / "progress.csv");
            out << "gen,n_feasible,best_f1,best_f2,best_f3,hypervolume\n";
            for (const auto& st : archive.history) {
                out << st.generation << ',' << st.n_feasible << ',' << format_double(st.best_f1)
                    << ',' << format_double(st.best_f2) << ',' << format_double(st.best_f3)
                    << ',' << format_double(st.hypervolume) << '\n';
            }
        }

        GenomeLayout layout = layout_of(scenario);
        const EvaluatedSolution& min_obj2 = select_extreme(archive.front, 1);
        const EvaluatedSolution& min_obj13 = select_extreme(archive.front, 0);
        json extremes;
        for (const auto& [label, sol] :
             {std::pair<std::string, const EvaluatedSolution*>{"MOMinObj2", &min_obj2},
              {"MOMinObj1_3", &min_obj13}}) {
            Schedule sch = decode(sol->genome, layout);
            export_solution_files(label, sch, scenario, opt.out_dir);
            extremes[label] = objectives_json(sol->objectives, sol->cv);
        }

        json baseline_summary;
        for (const std::string& name : opt.baselines) {
            BaselineResult result;
            if (name == "b1") {
                result = baseline_avg(scenario);
            } else if (name == "b2") {
                result = baseline_fcfs(scenario);
            } else if (name == "b3") {
                result = baseline_soga(scenario, 2, opt.params);
            } else if (name == "b4") {
                result = baseline_soga(scenario, 1, opt.params);
            } else if (name == "b5") {
                result = baseline_soga(scenario, 0, opt.params);
            } else {
                std::cerr << "unknown baseline '" << name << "' (expected b1..b5)\n";
                return 1;
            }
            export_solution_files(result.label, result.schedule, scenario, opt.out_dir);
            json entry = objectives_json(result.objectives, result.cv);
            entry["feasible"] = result.feasible;
            baseline_summary[result.label] = std::move(entry);
        }

        bool all_feasible = std::all_of(archive.front.begin(), archive.front.end(),
                                        [](const auto& sol) { return sol.feasible(); });
        auto ranges = objective_ranges(archive.front);
        double wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

        json summary;
        summary["scenario"] = json{{"name", scenario.name},
                                   {"n_requests", scenario.requests.size()},
                                   {"n_slots", scenario.grid.n_slots},
                                   {"genome_dim", layout.total_dim}};
        summary["params"] = json{{"population_size", opt.params.population_size},
                                 {"max_generations", opt.params.max_generations},
                                 {"crossover_rate", opt.params.crossover_rate},
                                 {"mutation_probability", opt.params.mutation_probability},
                                 {"sbx_eta", opt.params.sbx_eta},
                                 {"pm_eta", opt.params.pm_eta},
                                 {"epsilon", opt.params.epsilon},
                                 {"seed", opt.params.seed}};
        summary["front"] = json{
            {"size", archive.front.size()},
            {"all_feasible", all_feasible},
            {"objective_ranges", json{{"f1", {ranges[0].lo, ranges[0].hi}},
                                      {"f2", {ranges[1].lo, ranges[1].hi}},
                                      {"f3", {ranges[2].lo, ranges[2].hi}}}}};
        summary["extremes"] = std::move(extremes);
        if (!baseline_summary.is_null()) summary["baselines"] = std::move(baseline_summary);
        json hv_history = json::array();
        for (const auto& st : archive.history) hv_history.push_back(st.hypervolume);
        summary["hypervolume"] = json{{"reference",
                                       {archive.hv_reference.user_cost,
                                        archive.hv_reference.evcs_cost,
                                        archive.hv_reference.load_variation}},
                                      {"history", std::move(hv_history)}};
        summary["total_evaluations"] = archive.total_evaluations;
        summary["wall_time_seconds"] = wall_seconds;
        {
            auto out = open_out(opt.out_dir / "summary.json");
            out << summary.dump(2) << '\n';
        }

        std::cout << "front size " << archive.front.size() << (all_feasible ? "" : " (infeasible)")
                  << ", results in " << opt.out_dir.string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int cmd_scenario_export(const ScenarioExportOptions& opt) {
    try {
        Scenario s = build_problem_set(opt.set_id, opt.seed);
        if (opt.out_file.has_parent_path()) {
            std::filesystem::create_directories(opt.out_file.parent_path());
        }
        save_scenario(s, opt.out_file);
        std::cout << "wrote " << opt.out_file.string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int cmd_scenario_validate(const std::filesystem::path& file) {
    try {
        Scenario s = load_scenario(file);
        ValidationReport report = validate_scenario(s);
        if (report.valid()) {
            std::cout << "valid: " << s.requests.size() << " requests, genome dimension "
                      << report.total_dim << '\n';
            return 0;
        }
        std::cout << "invalid:\n";
        for (const auto& v : report.violations) std::cout << "  - " << v << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace moevcs
