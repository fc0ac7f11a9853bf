// Problem-instance types for coordinated EV charging/discharging:
// time grid, EV requests, tariff structure, and scenario validation.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace moevcs {

// Hourly scheduling horizon. Slots are 1-based; slot 1 carries start_label
// as its clock label (default "01:00", 29 slots ending 05:00 next day).
struct TimeGrid {
    int n_slots = 29;
    double slot_duration_hours = 1.0;
    std::string start_label = "01:00";

    // Hour of day (0..23) for a 1-based slot index.
    int hour_of_day(int slot) const;
};

struct BatteryParams {
    double capacity_kwh = 50.0;          // usable energy, kWh
    double replacement_cost = 120000.0;  // currency
    double degradation_k = -1.0 / 64.0;  // per-cycle wear coefficient
    double efficiency_phi = 1.0;         // charge/discharge efficiency, (0,1]
    double max_power_kw = 10.0;          // symmetric charge/discharge limit
};

// One EV's stay at the station. departure_slot is inclusive: an 8-hour
// stay spans 8 slots.
struct EvRequest {
    int id = 0;
    int arrival_slot = 1;
    int departure_slot = 1;
    double soc_arrival_kwh = 0.0;
    double soc_required_kwh = 0.0;
    BatteryParams battery;

    int span() const { return departure_slot - arrival_slot + 1; }
};

// Load-dependent time-of-use tariff: price(L) = spot + fixed + linear*L + quad*L^2
// where L is the total station load in a slot.
struct TariffParams {
    double spot_price = 0.2084;  // currency/kWh, grid spot price
    double fixed_coeff = 0.0;    // optional constant offset
    double linear_coeff = 5e-5;
    double quad_coeff = 5e-5;
    double x_min_kw = 0.0;       // grid transmission lower bound
    double x_max_kw = 1000.0;    // grid transmission upper bound
};

// Immutable problem instance.
struct Scenario {
    TimeGrid grid;
    std::vector<double> base_load_kw;  // one entry per slot
    std::vector<EvRequest> requests;
    TariffParams tariff;
    std::string name;
};

struct ValidationReport {
    std::vector<std::string> violations;  // empty means valid
    std::vector<int> occupancy;           // EVs present per slot
    long total_dim = 0;                   // 3 * sum(occupancy)

    bool valid() const { return violations.empty(); }
};

// Report-style check of every scenario invariant; never throws.
ValidationReport validate_scenario(const Scenario& s);

// Contiguous inclusive 1-based slot range [arrival, departure].
std::vector<int> parking_slots(const EvRequest& r);

// JSON (de)serialization; scenarios round-trip bit-exactly.
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);
void save_scenario(const Scenario& s, const std::filesystem::path& file);
Scenario load_scenario(const std::filesystem::path& file);

}  // namespace moevcs
