#include "moevcs/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace moevcs {

namespace {

// Largest power <= want whose SoC step stays within the pack in floating
// point; rounding may otherwise overshoot the capacity by a few ulps.
double capped_charge(double want, double soc, const BatteryParams& battery) {
    double power = std::min(want, (battery.capacity_kwh - soc) / battery.efficiency_phi);
    if (power <= 0.0) return 0.0;
    while (power > 0.0 && soc + battery.efficiency_phi * power > battery.capacity_kwh) {
        power = std::nextafter(power, 0.0);
    }
    return power;
}

BaselineResult finish(Schedule sch, const Scenario& s, const GenomeLayout& layout,
                      std::string label) {
    EvaluatedSolution eval = evaluate(encode(sch, layout), s, layout);
    BaselineResult result;
    result.schedule = std::move(sch);
    result.objectives = eval.objectives;
    result.cv = eval.cv;
    result.label = std::move(label);
    result.feasible = eval.feasible();
    return result;
}

}  // namespace

BaselineResult baseline_avg(const Scenario& s) {
    Schedule sch;
    sch.rows.resize(s.requests.size());
    for (size_t req = 0; req < s.requests.size(); ++req) {
        const EvRequest& r = s.requests[req];
        int span = r.span();
        double rate = (r.soc_required_kwh - r.soc_arrival_kwh) /
                      (r.battery.efficiency_phi * static_cast<double>(span));
        if (rate > r.battery.max_power_kw) {
            throw std::runtime_error("baseline_avg: EV " + std::to_string(r.id) +
                                     " needs " + std::to_string(rate) +
                                     " kW, above its " +
                                     std::to_string(r.battery.max_power_kw) + " kW limit");
        }
        sch.rows[req].assign(static_cast<size_t>(span), SlotAction{});
        if (rate > 0.0) {
            double soc = r.soc_arrival_kwh;
            for (auto& action : sch.rows[req]) {
                double power = capped_charge(rate, soc, r.battery);
                if (power <= 0.0) continue;
                action.state = 1;
                action.charge_kw = power;
                soc += r.battery.efficiency_phi * power;
            }
        }
    }
    return finish(std::move(sch), s, layout_of(s), "B1");
}

BaselineResult baseline_fcfs(const Scenario& s) {
    Schedule sch;
    sch.rows.resize(s.requests.size());
    for (size_t req = 0; req < s.requests.size(); ++req) {
        const EvRequest& r = s.requests[req];
        int span = r.span();
        double max_kw = r.battery.max_power_kw;
        // Power-hours to deliver; the final slot takes the remainder.
        double demand = (r.soc_required_kwh - r.soc_arrival_kwh) / r.battery.efficiency_phi;
        if (demand > max_kw * static_cast<double>(span)) {
            throw std::runtime_error("baseline_fcfs: EV " + std::to_string(r.id) +
                                     " cannot meet its demand within the parking window");
        }
        sch.rows[req].assign(static_cast<size_t>(span), SlotAction{});
        double soc = r.soc_arrival_kwh;
        for (auto& action : sch.rows[req]) {
            double want = (r.soc_required_kwh - soc) / r.battery.efficiency_phi;
            if (want <= 1e-12) break;
            double power = capped_charge(std::min(max_kw, want), soc, r.battery);
            if (power <= 0.0) break;
            action.state = 1;
            action.charge_kw = power;
            soc += r.battery.efficiency_phi * power;
        }
    }
    return finish(std::move(sch), s, layout_of(s), "B2");
}

BaselineResult baseline_soga(const Scenario& s, int objective_index, const MoeaParams& params) {
    if (objective_index < 0 || objective_index > 2) {
        throw std::invalid_argument("baseline_soga: objective_index must be 0, 1, or 2");
    }
    validate_params(params);
    GenomeLayout layout = layout_of(s);
    const size_t ps = static_cast<size_t>(params.population_size);
    Rng rng(params.seed);

    // Feasibility first, then the chosen objective.
    auto better = [objective_index](const EvaluatedSolution& a, const EvaluatedSolution& b) {
        if (a.cv != b.cv) return a.cv < b.cv;
        return a.objectives[objective_index] < b.objectives[objective_index];
    };

    std::vector<Genome> genomes(ps);
    for (size_t i = 0; i < ps; ++i) {
        genomes[i].values.resize(static_cast<size_t>(layout.total_dim));
        for (size_t g = 0; g < genomes[i].values.size(); ++g) {
            genomes[i].values[g] = rng.uniform(layout.lower[g], layout.upper[g]);
        }
    }
    std::vector<EvaluatedSolution> pop =
        evaluate_population(std::move(genomes), s, layout, params.epsilon, params.threads);

    auto pick_parent = [&]() -> const EvaluatedSolution& {
        int n = static_cast<int>(pop.size());
        int a = rng.next_below(n);
        int b = rng.next_below(n - 1);
        if (b >= a) ++b;
        const EvaluatedSolution& sa = pop[static_cast<size_t>(a)];
        const EvaluatedSolution& sb = pop[static_cast<size_t>(b)];
        if (better(sa, sb)) return sa;
        if (better(sb, sa)) return sb;
        return rng.next_double() < 0.5 ? sa : sb;
    };

    long gen = 1;
    while (gen < params.max_generations) {
        std::vector<Genome> children;
        children.reserve(ps);
        while (children.size() < ps) {
            const Genome& p1 = pick_parent().genome;
            const Genome& p2 = pick_parent().genome;
            auto [c1, c2] = sbx_crossover(p1, p2, layout, params, rng);
            children.push_back(polynomial_mutation(c1, layout, params, rng));
            if (children.size() < ps) {
                children.push_back(polynomial_mutation(c2, layout, params, rng));
            }
        }
        std::vector<EvaluatedSolution> child_evals =
            evaluate_population(std::move(children), s, layout, params.epsilon, params.threads);

        // (mu+lambda) truncation by (cv, objective). Distinct genomes fill
        // first so the pool cannot collapse into copies of one individual.
        for (auto& e : child_evals) pop.push_back(std::move(e));
        std::stable_sort(pop.begin(), pop.end(), better);
        std::vector<EvaluatedSolution> survivors;
        survivors.reserve(ps);
        std::vector<const EvaluatedSolution*> skipped;
        for (auto& e : pop) {
            if (survivors.size() == ps) break;
            bool duplicate = false;
            for (const auto& kept : survivors) {
                if (kept.cv == e.cv &&
                    kept.objectives[objective_index] == e.objectives[objective_index] &&
                    kept.genome.values == e.genome.values) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) {
                skipped.push_back(&e);
            } else {
                survivors.push_back(std::move(e));
            }
        }
        for (const auto* e : skipped) {
            if (survivors.size() == ps) break;
            survivors.push_back(*e);
        }
        pop = std::move(survivors);
        ++gen;
    }

    std::stable_sort(pop.begin(), pop.end(), better);
    const EvaluatedSolution& best = pop.front();

    BaselineResult result;
    result.schedule = decode(best.genome, layout);
    result.objectives = best.objectives;
    result.cv = best.cv;
    result.feasible = best.feasible();
    result.label = objective_index == 0 ? "B5" : objective_index == 1 ? "B4" : "B3";
    return result;
}

}  // namespace moevcs
