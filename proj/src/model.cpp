#include "moevcs/model.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace moevcs {

int TimeGrid::hour_of_day(int slot) const {
    int start_hour = 0;
    if (start_label.size() >= 2) {
        start_hour = std::atoi(start_label.substr(0, 2).c_str());
    }
    return (start_hour + slot - 1) % 24;
}

std::vector<int> parking_slots(const EvRequest& r) {
    std::vector<int> slots;
    slots.reserve(static_cast<size_t>(r.span()));
    for (int t = r.arrival_slot; t <= r.departure_slot; ++t) {
        slots.push_back(t);
    }
    return slots;
}

namespace {

std::string describe(int id, const char* what) {
    std::ostringstream os;
    os << "request " << id << ": " << what;
    return os.str();
}

}  // namespace

ValidationReport validate_scenario(const Scenario& s) {
    ValidationReport report;
    auto fail = [&report](const std::string& msg) { report.violations.push_back(msg); };

    if (s.grid.n_slots < 1) fail("grid: n_slots must be >= 1");
    if (!(s.grid.slot_duration_hours > 0.0)) fail("grid: slot_duration must be > 0");

    if (static_cast<int>(s.base_load_kw.size()) != s.grid.n_slots) {
        fail("base_load: length must equal n_slots");
    }
    for (size_t i = 0; i < s.base_load_kw.size(); ++i) {
        if (s.base_load_kw[i] < 0.0) {
            fail("base_load: slot " + std::to_string(i + 1) + " is negative");
            break;
        }
    }

    const TariffParams& tf = s.tariff;
    if (tf.spot_price < 0.0 || tf.fixed_coeff < 0.0 || tf.linear_coeff < 0.0 ||
        tf.quad_coeff < 0.0) {
        fail("tariff: coefficients must be >= 0");
    }
    if (tf.x_min_kw > tf.x_max_kw) fail("tariff: x_min must be <= x_max");

    std::set<int> seen_ids;
    for (const EvRequest& r : s.requests) {
        if (!seen_ids.insert(r.id).second) fail(describe(r.id, "duplicate id"));
        if (r.arrival_slot < 1 || r.arrival_slot > r.departure_slot ||
            r.departure_slot > s.grid.n_slots) {
            fail(describe(r.id, "parking window must satisfy 1 <= arrival <= departure <= n_slots"));
        }
        if (r.soc_arrival_kwh < 0.0) fail(describe(r.id, "soc_arrival must be >= 0"));
        if (r.soc_arrival_kwh > r.soc_required_kwh) {
            fail(describe(r.id, "soc_arrival must be <= soc_required"));
        }
        if (r.soc_required_kwh > r.battery.capacity_kwh) {
            fail(describe(r.id, "soc_required exceeds battery capacity"));
        }
        if (!(r.battery.capacity_kwh > 0.0)) fail(describe(r.id, "battery capacity must be > 0"));
        if (r.battery.replacement_cost < 0.0) {
            fail(describe(r.id, "battery replacement_cost must be >= 0"));
        }
        if (!(r.battery.efficiency_phi > 0.0 && r.battery.efficiency_phi <= 1.0)) {
            fail(describe(r.id, "battery efficiency_phi must be in (0, 1]"));
        }
        if (!(r.battery.max_power_kw > 0.0)) fail(describe(r.id, "battery max_power must be > 0"));
    }

    if (s.grid.n_slots >= 1) {
        report.occupancy.assign(static_cast<size_t>(s.grid.n_slots), 0);
        for (const EvRequest& r : s.requests) {
            if (r.arrival_slot >= 1 && r.departure_slot <= s.grid.n_slots &&
                r.arrival_slot <= r.departure_slot) {
                for (int t = r.arrival_slot; t <= r.departure_slot; ++t) {
                    ++report.occupancy[static_cast<size_t>(t - 1)];
                }
            }
        }
        long occupied = std::accumulate(report.occupancy.begin(), report.occupancy.end(), 0L);
        report.total_dim = 3L * occupied;
    }
    return report;
}

// --- JSON serialization ---------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

json battery_to_json(const BatteryParams& b) {
    return json{{"capacity", b.capacity_kwh},
                {"replacement_cost", b.replacement_cost},
                {"degradation_k", b.degradation_k},
                {"efficiency_phi", b.efficiency_phi},
                {"max_power", b.max_power_kw}};
}

BatteryParams battery_from_json(const json& j) {
    BatteryParams b;
    b.capacity_kwh = j.at("capacity").get<double>();
    b.replacement_cost = j.at("replacement_cost").get<double>();
    b.degradation_k = j.at("degradation_k").get<double>();
    b.efficiency_phi = j.at("efficiency_phi").get<double>();
    b.max_power_kw = j.at("max_power").get<double>();
    return b;
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["grid"] = json{{"n_slots", s.grid.n_slots},
                     {"slot_duration", s.grid.slot_duration_hours},
                     {"start_label", s.grid.start_label}};
    j["base_load"] = s.base_load_kw;
    json reqs = json::array();
    for (const EvRequest& r : s.requests) {
        reqs.push_back(json{{"id", r.id},
                            {"arrival_slot", r.arrival_slot},
                            {"departure_slot", r.departure_slot},
                            {"soc_arrival", r.soc_arrival_kwh},
                            {"soc_required", r.soc_required_kwh},
                            {"battery", battery_to_json(r.battery)}});
    }
    j["requests"] = std::move(reqs);
    j["tariff"] = json{{"spot_price", s.tariff.spot_price},
                       {"fixed_coeff", s.tariff.fixed_coeff},
                       {"linear_coeff", s.tariff.linear_coeff},
                       {"quad_coeff", s.tariff.quad_coeff},
                       {"x_min", s.tariff.x_min_kw},
                       {"x_max", s.tariff.x_max_kw}};
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    json j = json::parse(text);
    Scenario s;
    s.name = j.value("name", std::string{});
    const json& grid = j.at("grid");
    s.grid.n_slots = grid.at("n_slots").get<int>();
    s.grid.slot_duration_hours = grid.at("slot_duration").get<double>();
    s.grid.start_label = grid.value("start_label", std::string("01:00"));
    s.base_load_kw = j.at("base_load").get<std::vector<double>>();
    for (const json& rj : j.at("requests")) {
        EvRequest r;
        r.id = rj.at("id").get<int>();
        r.arrival_slot = rj.at("arrival_slot").get<int>();
        r.departure_slot = rj.at("departure_slot").get<int>();
        r.soc_arrival_kwh = rj.at("soc_arrival").get<double>();
        r.soc_required_kwh = rj.at("soc_required").get<double>();
        r.battery = battery_from_json(rj.at("battery"));
        s.requests.push_back(r);
    }
    const json& tf = j.at("tariff");
    s.tariff.spot_price = tf.at("spot_price").get<double>();
    s.tariff.fixed_coeff = tf.at("fixed_coeff").get<double>();
    s.tariff.linear_coeff = tf.at("linear_coeff").get<double>();
    s.tariff.quad_coeff = tf.at("quad_coeff").get<double>();
    s.tariff.x_min_kw = tf.at("x_min").get<double>();
    s.tariff.x_max_kw = tf.at("x_max").get<double>();
    return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
    out << scenario_to_json(s);
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

}  // namespace moevcs
