#include "moevcs/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "moevcs/csv.hpp"

namespace moevcs {

GenomeLayout layout_of(const Scenario& s) {
    GenomeLayout layout;
    layout.n_slots = s.grid.n_slots;
    layout.occupants.assign(static_cast<size_t>(layout.n_slots), {});

    // Occupant order within a slot is ascending EV id.
    std::vector<int> by_id(s.requests.size());
    for (size_t i = 0; i < by_id.size(); ++i) by_id[i] = static_cast<int>(i);
    std::sort(by_id.begin(), by_id.end(),
              [&s](int a, int b) { return s.requests[static_cast<size_t>(a)].id <
                                          s.requests[static_cast<size_t>(b)].id; });

    layout.request_arrival.assign(s.requests.size(), 0);
    layout.request_slot_pos.assign(s.requests.size(), {});
    for (int req : by_id) {
        const EvRequest& r = s.requests[static_cast<size_t>(req)];
        layout.request_arrival[static_cast<size_t>(req)] = r.arrival_slot;
        for (int t = r.arrival_slot; t <= r.departure_slot; ++t) {
            auto& occ = layout.occupants[static_cast<size_t>(t - 1)];
            layout.request_slot_pos[static_cast<size_t>(req)].push_back(
                static_cast<int>(occ.size()));
            occ.push_back(req);
        }
    }

    layout.block_offset.assign(static_cast<size_t>(layout.n_slots), 0);
    long offset = 0;
    for (int i = 0; i < layout.n_slots; ++i) {
        layout.block_offset[static_cast<size_t>(i)] = offset;
        offset += 3L * static_cast<long>(layout.occupants[static_cast<size_t>(i)].size());
    }
    layout.total_dim = offset;

    layout.lower.assign(static_cast<size_t>(layout.total_dim), 0.0);
    layout.upper.assign(static_cast<size_t>(layout.total_dim), 0.0);
    for (int i = 0; i < layout.n_slots; ++i) {
        const auto& occ = layout.occupants[static_cast<size_t>(i)];
        for (size_t pos = 0; pos < occ.size(); ++pos) {
            double max_kw = s.requests[static_cast<size_t>(occ[pos])].battery.max_power_kw;
            long sg = layout.state_gene(i, static_cast<int>(pos));
            long dg = layout.discharge_gene(i, static_cast<int>(pos));
            long cg = layout.charge_gene(i, static_cast<int>(pos));
            layout.lower[static_cast<size_t>(sg)] = -1.0;
            layout.upper[static_cast<size_t>(sg)] = 1.0;
            layout.lower[static_cast<size_t>(dg)] = 0.0;
            layout.upper[static_cast<size_t>(dg)] = max_kw;
            layout.lower[static_cast<size_t>(cg)] = 0.0;
            layout.upper[static_cast<size_t>(cg)] = max_kw;
        }
    }
    return layout;
}

namespace {

// Nearest integer in {-1, 0, 1}, thresholds at +-0.5.
int decode_state(double gene) {
    if (gene >= 0.5) return 1;
    if (gene <= -0.5) return -1;
    return 0;
}

}  // namespace

Schedule decode(const Genome& g, const GenomeLayout& layout) {
    if (g.size() != layout.total_dim) {
        throw std::invalid_argument("decode: genome dimension " + std::to_string(g.size()) +
                                    " does not match layout dimension " +
                                    std::to_string(layout.total_dim));
    }
    Schedule sch;
    sch.rows.resize(layout.request_arrival.size());
    for (size_t req = 0; req < sch.rows.size(); ++req) {
        sch.rows[req].resize(layout.request_slot_pos[req].size());
    }
    for (int i = 0; i < layout.n_slots; ++i) {
        const auto& occ = layout.occupants[static_cast<size_t>(i)];
        for (size_t pos = 0; pos < occ.size(); ++pos) {
            size_t req = static_cast<size_t>(occ[pos]);
            int k = i + 1 - layout.request_arrival[req];  // k-th parking slot
            SlotAction& action = sch.rows[req][static_cast<size_t>(k)];
            action.state =
                decode_state(g.values[static_cast<size_t>(layout.state_gene(i, static_cast<int>(pos)))]);
            if (action.state == 1) {
                action.charge_kw =
                    g.values[static_cast<size_t>(layout.charge_gene(i, static_cast<int>(pos)))];
            } else if (action.state == -1) {
                action.discharge_kw =
                    g.values[static_cast<size_t>(layout.discharge_gene(i, static_cast<int>(pos)))];
            }
        }
    }
    return sch;
}

Genome encode(const Schedule& sch, const GenomeLayout& layout) {
    if (sch.rows.size() != layout.request_slot_pos.size()) {
        throw std::invalid_argument("encode: schedule has " + std::to_string(sch.rows.size()) +
                                    " rows, layout expects " +
                                    std::to_string(layout.request_slot_pos.size()));
    }
    Genome g;
    g.values.assign(static_cast<size_t>(layout.total_dim), 0.0);
    for (size_t req = 0; req < sch.rows.size(); ++req) {
        if (sch.rows[req].size() != layout.request_slot_pos[req].size()) {
            throw std::invalid_argument("encode: request " + std::to_string(req) +
                                        " row length does not match its parking span");
        }
        int arrival = layout.request_arrival[req];
        for (size_t k = 0; k < sch.rows[req].size(); ++k) {
            const SlotAction& action = sch.rows[req][k];
            int slot0 = arrival - 1 + static_cast<int>(k);
            int pos = layout.request_slot_pos[req][k];
            g.values[static_cast<size_t>(layout.state_gene(slot0, pos))] =
                static_cast<double>(action.state);
            g.values[static_cast<size_t>(layout.discharge_gene(slot0, pos))] = action.discharge_kw;
            g.values[static_cast<size_t>(layout.charge_gene(slot0, pos))] = action.charge_kw;
        }
    }
    return g;
}

void write_schedule_csv(const Schedule& sch, const Scenario& s, std::ostream& out) {
    out << "ev_id,slot,state,charge_kw,discharge_kw\n";
    for (size_t req = 0; req < sch.rows.size(); ++req) {
        const EvRequest& r = s.requests[req];
        for (size_t k = 0; k < sch.rows[req].size(); ++k) {
            const SlotAction& action = sch.rows[req][k];
            out << r.id << ',' << (r.arrival_slot + static_cast<int>(k)) << ',' << action.state
                << ',' << format_double(action.charge_kw) << ','
                << format_double(action.discharge_kw) << '\n';
        }
    }
}

}  // namespace moevcs
