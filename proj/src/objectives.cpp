#include "moevcs/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moevcs {

namespace {

// Signed energy an EV moves in one slot: positive when charging,
// negative when discharging.
inline double slot_energy(const SlotAction& a) {
    if (a.state == 1) return a.charge_kw;
    if (a.state == -1) return -a.discharge_kw;
    return 0.0;
}

}  // namespace

std::vector<SlotLoads> aggregate_loads(const Schedule& sch, const Scenario& s) {
    std::vector<SlotLoads> loads(static_cast<size_t>(s.grid.n_slots));
    for (size_t req = 0; req < sch.rows.size(); ++req) {
        int arrival = s.requests[req].arrival_slot;
        for (size_t k = 0; k < sch.rows[req].size(); ++k) {
            const SlotAction& a = sch.rows[req][k];
            SlotLoads& l = loads[static_cast<size_t>(arrival - 1 + static_cast<int>(k))];
            if (a.state == 1) {
                l.charge_kw += a.charge_kw;
            } else if (a.state == -1) {
                l.discharge_kw -= a.discharge_kw;
            }
        }
    }
    return loads;
}

SlotLoads aggregate_ev_load(const Schedule& sch, const Scenario& s, int slot) {
    SlotLoads l;
    for (size_t req = 0; req < sch.rows.size(); ++req) {
        const EvRequest& r = s.requests[req];
        if (slot < r.arrival_slot || slot > r.departure_slot) continue;
        const SlotAction& a = sch.rows[req][static_cast<size_t>(slot - r.arrival_slot)];
        if (a.state == 1) {
            l.charge_kw += a.charge_kw;
        } else if (a.state == -1) {
            l.discharge_kw -= a.discharge_kw;
        }
    }
    return l;
}

double price_at(double base_kw, double charge_kw, double discharge_kw,
                const TariffParams& tariff) {
    double load = base_kw + charge_kw + discharge_kw;
    return tariff.spot_price + tariff.fixed_coeff + tariff.linear_coeff * load +
           tariff.quad_coeff * load * load;
}

std::vector<double> prices_for(const Schedule& sch, const Scenario& s) {
    std::vector<SlotLoads> loads = aggregate_loads(sch, s);
    std::vector<double> prices(loads.size());
    for (size_t t = 0; t < loads.size(); ++t) {
        prices[t] = price_at(s.base_load_kw[t], loads[t].charge_kw, loads[t].discharge_kw,
                             s.tariff);
    }
    return prices;
}

std::vector<double> soc_trajectory(const EvRequest& r, std::span<const SlotAction> row) {
    std::vector<double> traj;
    traj.reserve(row.size() + 1);
    traj.push_back(r.soc_arrival_kwh);
    double soc = r.soc_arrival_kwh;
    for (const SlotAction& a : row) {
        soc += r.battery.efficiency_phi * slot_energy(a);
        traj.push_back(soc);
    }
    return traj;
}

double user_cost(const Schedule& sch, const Scenario& s, std::span<const double> prices) {
    double total = 0.0;
    for (size_t req = 0; req < sch.rows.size(); ++req) {
        const EvRequest& r = s.requests[req];
        double wear_rate = std::abs(r.battery.degradation_k / 100.0);
        for (size_t k = 0; k < sch.rows[req].size(); ++k) {
            const SlotAction& a = sch.rows[req][k];
            double energy = slot_energy(a);
            int slot = r.arrival_slot + static_cast<int>(k);
            total += energy * prices[static_cast<size_t>(slot - 1)];
            double soc_drop = std::max(0.0, -r.battery.efficiency_phi * energy);
            total += wear_rate * soc_drop / r.battery.capacity_kwh * r.battery.replacement_cost;
        }
    }
    return total;
}

double evcs_cost(const Schedule& sch, const Scenario& s, std::span<const double> prices) {
    std::vector<SlotLoads> loads = aggregate_loads(sch, s);
    double total = 0.0;
    for (size_t t = 0; t < loads.size(); ++t) {
        double net = s.base_load_kw[t] + loads[t].charge_kw + loads[t].discharge_kw;
        total += std::max(0.0, net) * s.tariff.spot_price;
        total -= loads[t].discharge_kw * prices[t];  // payment to discharging EVs
        total -= loads[t].charge_kw * prices[t];     // charging revenue
    }
    return total;
}

double network_impact(const Schedule& sch, const Scenario& s) {
    std::vector<SlotLoads> loads = aggregate_loads(sch, s);
    double total = 0.0;
    for (size_t t = 0; t < loads.size(); ++t) {
        double net = s.base_load_kw[t] + loads[t].charge_kw + loads[t].discharge_kw;
        total += net * net;
    }
    return total;
}

ConstraintReport constraint_violation(const Schedule& sch, const Scenario& s, double eps) {
    ConstraintReport report;
    for (size_t req = 0; req < sch.rows.size(); ++req) {
        const EvRequest& r = s.requests[req];
        double phi = r.battery.efficiency_phi;

        double soc = r.soc_arrival_kwh;
        std::vector<ConstraintTerm> bounds;
        bounds.reserve(sch.rows[req].size() * 2);
        for (size_t k = 0; k < sch.rows[req].size(); ++k) {
            int slot = r.arrival_slot + static_cast<int>(k);
            soc += phi * slot_energy(sch.rows[req][k]);
            bounds.push_back({ConstraintTerm::Kind::soc_lower, r.id, slot,
                              std::max(0.0, -soc)});
            bounds.push_back({ConstraintTerm::Kind::soc_upper, r.id, slot,
                              std::max(0.0, soc - r.battery.capacity_kwh)});
        }
        double mismatch = std::abs(soc - r.soc_required_kwh);
        report.terms.push_back({ConstraintTerm::Kind::soc_target, r.id, 0,
                                std::max(0.0, mismatch - eps)});
        report.terms.insert(report.terms.end(), bounds.begin(), bounds.end());
    }

    std::vector<SlotLoads> loads = aggregate_loads(sch, s);
    for (size_t t = 0; t < loads.size(); ++t) {
        double net = s.base_load_kw[t] + loads[t].charge_kw + loads[t].discharge_kw;
        double draw = std::max(0.0, net);
        int slot = static_cast<int>(t) + 1;
        report.terms.push_back({ConstraintTerm::Kind::grid_lower, -1, slot,
                                std::max(0.0, s.tariff.x_min_kw - draw)});
        report.terms.push_back({ConstraintTerm::Kind::grid_upper, -1, slot,
                                std::max(0.0, draw - s.tariff.x_max_kw)});
    }

    for (const ConstraintTerm& term : report.terms) report.cv += term.violation;
    return report;
}

EvaluatedSolution evaluate(const Genome& g, const Scenario& s, const GenomeLayout& layout,
                           double eps) {
    Schedule sch = decode(g, layout);

    std::vector<SlotLoads> loads = aggregate_loads(sch, s);
    size_t n_slots = loads.size();
    std::vector<double> prices(n_slots);
    for (size_t t = 0; t < n_slots; ++t) {
        prices[t] = price_at(s.base_load_kw[t], loads[t].charge_kw, loads[t].discharge_kw,
                             s.tariff);
    }

    double f1 = 0.0;
    double cv = 0.0;
    for (size_t req = 0; req < sch.rows.size(); ++req) {
        const EvRequest& r = s.requests[req];
        double phi = r.battery.efficiency_phi;
        double wear_rate = std::abs(r.battery.degradation_k / 100.0);
        double soc = r.soc_arrival_kwh;
        double bound_cv = 0.0;
        for (size_t k = 0; k < sch.rows[req].size(); ++k) {
            const SlotAction& a = sch.rows[req][k];
            double energy = slot_energy(a);
            int slot = r.arrival_slot + static_cast<int>(k);
            f1 += energy * prices[static_cast<size_t>(slot - 1)];
            double soc_drop = std::max(0.0, -phi * energy);
            f1 += wear_rate * soc_drop / r.battery.capacity_kwh * r.battery.replacement_cost;
            soc += phi * energy;
            bound_cv += std::max(0.0, -soc);
            bound_cv += std::max(0.0, soc - r.battery.capacity_kwh);
        }
        cv += std::max(0.0, std::abs(soc - r.soc_required_kwh) - eps);
        cv += bound_cv;
    }

    double f2 = 0.0;
    double f3 = 0.0;
    for (size_t t = 0; t < n_slots; ++t) {
        double net = s.base_load_kw[t] + loads[t].charge_kw + loads[t].discharge_kw;
        double draw = std::max(0.0, net);
        f2 += draw * s.tariff.spot_price;
        f2 -= loads[t].discharge_kw * prices[t];
        f2 -= loads[t].charge_kw * prices[t];
        f3 += net * net;
        cv += std::max(0.0, s.tariff.x_min_kw - draw);
        cv += std::max(0.0, draw - s.tariff.x_max_kw);
    }

    EvaluatedSolution result;
    result.genome = g;
    result.objectives = {f1, f2, f3};
    result.cv = cv;
    return result;
}

}  // namespace moevcs
