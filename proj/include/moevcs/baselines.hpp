// The five comparison strategies: uniform-rate charging (B1), greedy
// first-come-first-served charging (B2), and single-objective GA runs on
// f3/f2/f1 (B3/B4/B5).

#pragma once

#include <string>

#include "moevcs/moea.hpp"

namespace moevcs {

struct BaselineResult {
    Schedule schedule;
    ObjectiveVector objectives;  // computed via the same evaluate path as MOEA solutions
    double cv = 0.0;
    std::string label;           // "B1".."B5"
    bool feasible = false;
};

// B1: each EV charges (required - arrival SoC) / (phi * span) in every
// parking slot. Throws if the rate exceeds the EV's power limit.
BaselineResult baseline_avg(const Scenario& s);

// B2: each EV charges at max power from arrival until the requirement is
// met (partial final slot). Throws if the demand cannot be met in time.
BaselineResult baseline_fcfs(const Scenario& s);

// B3/B4/B5: single-objective GA on one objective (0 = f1, 1 = f2, 2 = f3)
// with lexicographic (cv, objective) fitness and the same ps/MaxGen/CR/MP
// as the multi-objective run. If no feasible individual is found the
// result is flagged infeasible and carries the best cv reached.
BaselineResult baseline_soga(const Scenario& s, int objective_index, const MoeaParams& params);

}  // namespace moevcs
