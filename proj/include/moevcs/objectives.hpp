// Pricing model, SoC dynamics, the three objectives, and constraint
// violation for a decoded schedule. Prices are endogenous: the candidate
// schedule's own load sets the per-slot tariff.

#pragma once

#include <span>
#include <vector>

#include "moevcs/encoding.hpp"
#include "moevcs/model.hpp"

namespace moevcs {

inline constexpr double kDefaultEqualityTolerance = 0.1;

struct ObjectiveVector {
    double user_cost = 0.0;       // f1, currency
    double evcs_cost = 0.0;       // f2, currency (negative = profit)
    double load_variation = 0.0;  // f3, kW^2

    double operator[](int i) const {
        return i == 0 ? user_cost : i == 1 ? evcs_cost : load_variation;
    }
};

struct EvaluatedSolution {
    Genome genome;
    ObjectiveVector objectives;
    double cv = 0.0;  // total constraint violation; 0 iff feasible

    bool feasible() const { return cv == 0.0; }
};

// Aggregated EV load in one slot: charge_kw >= 0, discharge_kw <= 0.
struct SlotLoads {
    double charge_kw = 0.0;
    double discharge_kw = 0.0;
};

// Per-slot aggregation over all EVs (size n_slots).
std::vector<SlotLoads> aggregate_loads(const Schedule& sch, const Scenario& s);

// Single-slot variant (slot is 1-based).
SlotLoads aggregate_ev_load(const Schedule& sch, const Scenario& s, int slot);

// Tariff at total load L = base + charge + discharge:
//   spot + fixed + linear*L + quad*L^2.
double price_at(double base_kw, double charge_kw, double discharge_kw,
                const TariffParams& tariff);

// Per-slot prices for a whole schedule.
std::vector<double> prices_for(const Schedule& sch, const Scenario& s);

// SoC walk over one EV's parking slots; element 0 is the arrival SoC, so
// the result has row.size() + 1 entries.
std::vector<double> soc_trajectory(const EvRequest& r, std::span<const SlotAction> row);

// f1: charge cost minus discharge revenue plus battery wear, summed over
// all EVs and their parking slots.
double user_cost(const Schedule& sch, const Scenario& s, std::span<const double> prices);

// f2: station energy purchases (grid + discharging EVs) minus charging
// revenue; negative values are profit.
double evcs_cost(const Schedule& sch, const Scenario& s, std::span<const double> prices);

// f3: sum of squared per-slot total loads.
double network_impact(const Schedule& sch, const Scenario& s);

struct ConstraintTerm {
    enum class Kind { soc_target, soc_lower, soc_upper, grid_lower, grid_upper };
    Kind kind;
    int ev_id;      // -1 for grid terms
    int slot;       // 1-based; 0 for the per-EV equality
    double violation;
};

struct ConstraintReport {
    double cv = 0.0;
    std::vector<ConstraintTerm> terms;  // every constraint, violated or not
};

// One equality per EV (final SoC hits the requirement, relaxed by eps),
// two SoC-bound inequalities per (EV, parking slot), two transmission
// bounds per grid slot.
ConstraintReport constraint_violation(const Schedule& sch, const Scenario& s, double eps);

// Decode, price, and score a genome. Pure and deterministic.
EvaluatedSolution evaluate(const Genome& g, const Scenario& s, const GenomeLayout& layout,
                           double eps = kDefaultEqualityTolerance);

}  // namespace moevcs
