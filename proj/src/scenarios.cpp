#include "moevcs/scenarios.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "moevcs/csv.hpp"
#include "moevcs/rng.hpp"

namespace moevcs {

OccupancyProfile builtin_profile(int set_id) {
    // Hourly EV occupancy, hours 01:00 .. 05:00 next day.
    static const std::vector<std::vector<int>> profiles = {
        {10, 10, 10, 10, 10, 10, 10, 13, 10, 10, 10, 10, 10, 10, 10,
         10, 10, 10, 10, 10, 10, 20, 20, 17, 10, 10, 10, 10, 10},
        {15, 15, 20, 20, 20, 20, 20, 23, 15, 15, 10, 10, 10, 10, 10,
         10, 10, 10, 10, 10, 10, 20, 20, 17, 10, 10, 10, 10, 10},
        {10, 10, 10, 10, 10, 10, 10, 13, 10, 15, 15, 15, 15, 15, 15,
         15, 15, 15, 15, 15, 15, 25, 25, 22, 15, 10, 10, 10, 10},
        {10, 10, 10, 10, 10, 10, 10, 20, 10, 10, 10, 10, 10, 10, 10,
         10, 15, 15, 15, 15, 15, 30, 30, 20, 15, 15, 15, 15, 15},
    };
    if (set_id < 1 || set_id > 4) {
        throw std::invalid_argument("builtin_profile: set_id must be in 1..4");
    }
    return {profiles[static_cast<size_t>(set_id - 1)], kBuiltinStayHours};
}

ArrivalPlan arrivals_from_occupancy(const OccupancyProfile& p) {
    int n = static_cast<int>(p.counts.size());
    int stay = p.stay_length;
    if (stay < 1) throw std::invalid_argument("arrivals_from_occupancy: stay_length must be >= 1");

    ArrivalPlan plan;
    plan.per_slot.assign(static_cast<size_t>(n), 0);
    int last_arrival_slot = n - stay + 1;
    std::vector<int> late_slots;

    auto arrivals_at = [&plan](int t) {  // 1-based, 0 outside the grid
        return t >= 1 ? plan.per_slot[static_cast<size_t>(t - 1)] : 0;
    };
    for (int t = 1; t <= n; ++t) {
        int prev_occ = t >= 2 ? p.counts[static_cast<size_t>(t - 2)] : 0;
        int raw = p.counts[static_cast<size_t>(t - 1)] - prev_occ + arrivals_at(t - stay);
        int a = std::max(0, raw);
        if (a > 0 && t > last_arrival_slot) {
            late_slots.push_back(t);
            continue;
        }
        plan.per_slot[static_cast<size_t>(t - 1)] = a;
    }
    if (!late_slots.empty()) {
        std::ostringstream os;
        os << "arrivals_from_occupancy: profile infeasible for " << stay
           << "h stays; arrivals required past slot " << last_arrival_slot << " at slot(s)";
        for (int t : late_slots) os << ' ' << t;
        throw std::runtime_error(os.str());
    }

    // Residual = occupancy the clamped arrivals cannot reproduce.
    plan.residuals.assign(static_cast<size_t>(n), 0);
    for (int t = 1; t <= n; ++t) {
        int reconstructed = 0;
        for (int k = std::max(1, t - stay + 1); k <= t; ++k) reconstructed += arrivals_at(k);
        plan.residuals[static_cast<size_t>(t - 1)] =
            p.counts[static_cast<size_t>(t - 1)] - reconstructed;
    }
    return plan;
}

std::vector<double> default_base_load(const TimeGrid& grid) {
    std::vector<double> load(static_cast<size_t>(grid.n_slots));
    for (int t = 1; t <= grid.n_slots; ++t) {
        int h = grid.hour_of_day(t);
        double kw;
        if (h >= 9 && h <= 18) {
            kw = 100.0;                                   // office plateau
        } else if (h >= 6 && h <= 8) {
            kw = 30.0 + 70.0 * (h - 5) / 4.0;             // morning ramp
        } else if (h >= 19 && h <= 21) {
            kw = 100.0 - 70.0 * (h - 18) / 4.0;           // evening ramp
        } else {
            kw = 30.0;                                    // overnight
        }
        load[static_cast<size_t>(t - 1)] = kw;
    }
    return load;
}

std::vector<double> load_base_load_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open: " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty base-load file");
    std::vector<std::pair<int, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 2) throw std::runtime_error("base-load row needs 2 columns: " + line);
        rows.emplace_back(static_cast<int>(parse_double(fields[0])), parse_double(fields[1]));
    }
    std::vector<double> load(rows.size(), -1.0);
    for (const auto& [slot, kw] : rows) {
        if (slot < 1 || slot > static_cast<int>(rows.size())) {
            throw std::runtime_error("base-load slots must be contiguous from 1");
        }
        load[static_cast<size_t>(slot - 1)] = kw;
    }
    for (double kw : load) {
        if (kw < 0.0) throw std::runtime_error("base-load slots must be contiguous from 1");
    }
    return load;
}

Scenario build_problem_set(int set_id, std::uint64_t seed,
                           std::optional<std::vector<double>> base_load) {
    OccupancyProfile profile = builtin_profile(set_id);
    ArrivalPlan plan = arrivals_from_occupancy(profile);

    Scenario s;
    s.name = "set" + std::to_string(set_id);
    s.grid.n_slots = kBuiltinSlots;
    s.base_load_kw = base_load ? std::move(*base_load) : default_base_load(s.grid);
    if (static_cast<int>(s.base_load_kw.size()) != s.grid.n_slots) {
        throw std::invalid_argument("build_problem_set: base load must have " +
                                    std::to_string(s.grid.n_slots) + " entries");
    }

    Rng rng(seed);
    int next_id = 1;
    for (int t = 1; t <= s.grid.n_slots; ++t) {
        for (int k = 0; k < plan.per_slot[static_cast<size_t>(t - 1)]; ++k) {
            EvRequest r;
            r.id = next_id++;
            r.arrival_slot = t;
            r.departure_slot = t + profile.stay_length - 1;
            r.soc_required_kwh = r.battery.capacity_kwh;  // leave fully charged
            r.soc_arrival_kwh =
                rng.uniform(0.2 * r.battery.capacity_kwh, 0.8 * r.battery.capacity_kwh);
            s.requests.push_back(r);
        }
    }
    return s;
}

}  // namespace moevcs
