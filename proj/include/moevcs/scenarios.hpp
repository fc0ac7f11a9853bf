// Built-in problem sets 1-4 (29-hour occupancy profiles with 8-hour
// stays) and the synthetic base-load profile.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "moevcs/model.hpp"

namespace moevcs {

inline constexpr int kBuiltinSlots = 29;
inline constexpr int kBuiltinStayHours = 8;

struct OccupancyProfile {
    std::vector<int> counts;  // EVs present per slot
    int stay_length = kBuiltinStayHours;
};

struct ArrivalPlan {
    std::vector<int> per_slot;   // arrivals per slot, sums to N_user
    std::vector<int> residuals;  // occupancy shortfall per slot after clamping
};

// The four built-in occupancy profiles (set_id in 1..4).
OccupancyProfile builtin_profile(int set_id);

// Invert occupancy to arrivals under fixed-length stays by the recurrence
// a_t = o_t - o_{t-1} + a_{t-stay}. Negative arrivals clamp to zero and
// show up as residuals; arrivals that would overrun the grid throw.
ArrivalPlan arrivals_from_occupancy(const OccupancyProfile& p);

// Deterministic weekday office profile: 30 kW overnight, 100 kW plateau
// 09:00-18:00, linear ramps in between.
std::vector<double> default_base_load(const TimeGrid& grid);

// Read a base-load CSV with columns slot,kw (header required).
std::vector<double> load_base_load_csv(const std::filesystem::path& file);

// Assemble a full problem set: arrivals from the built-in profile,
// 50 kWh batteries charged to full, arrival SoC uniform in
// [0.2, 0.8] * capacity drawn from the seed.
Scenario build_problem_set(int set_id, std::uint64_t seed,
                           std::optional<std::vector<double>> base_load = std::nullopt);

}  // namespace moevcs
