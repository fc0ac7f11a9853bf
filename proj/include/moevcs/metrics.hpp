// Pareto-front analytics: hypervolume, extreme-solution picks, and
// per-objective ranges.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "moevcs/objectives.hpp"

namespace moevcs {

// Lebesgue measure of the union of boxes [point, ref] for minimization,
// exact for up to three objectives. Points that do not dominate the
// reference are excluded; n_excluded reports how many, when non-null.
double hypervolume(const std::vector<std::vector<double>>& front,
                   const std::vector<double>& ref, int* n_excluded = nullptr);

double hypervolume(std::span<const ObjectiveVector> front, const ObjectiveVector& ref,
                   int* n_excluded = nullptr);

// Reference point for a run's hypervolume series: the nadir of the first
// evaluated generation pushed 10% outward per objective.
ObjectiveVector hv_reference_from(std::span<const EvaluatedSolution> population);

// The front member minimizing (or maximizing) objective 0/1/2, ties
// broken by smaller f3 then smaller f1.
const EvaluatedSolution& select_extreme(std::span<const EvaluatedSolution> front,
                                        int objective_index, bool minimize = true);

struct ObjectiveRange {
    double lo = 0.0, hi = 0.0;
};

std::array<ObjectiveRange, 3> objective_ranges(std::span<const EvaluatedSolution> front);

}  // namespace moevcs
