// Genome layout and mixed-variable encode/decode.
//
// A solution is a flat continuous vector. For each slot i with n_i parked
// EVs the genome holds a block of 3*n_i genes: first the n_i state genes
// in [-1,1], then n_i discharge-power genes, then n_i charge-power genes,
// each power gene bounded [0, max_power] of its EV. State genes are
// thresholded to {-1,0,1} at decode time; power genes pass through.

#pragma once

#include <span>
#include <vector>

#include "moevcs/model.hpp"

namespace moevcs {

struct Genome {
    std::vector<double> values;

    long size() const { return static_cast<long>(values.size()); }
};

struct GenomeLayout {
    int n_slots = 0;
    long total_dim = 0;
    std::vector<std::vector<int>> occupants;  // per slot (0-based): request indices, ascending EV id
    std::vector<long> block_offset;           // gene offset of each slot's block
    std::vector<double> lower, upper;         // per-gene bounds

    // Per request: arrival slot and this EV's position inside each of its
    // slot blocks, so encode/decode need no scenario lookup.
    std::vector<int> request_arrival;
    std::vector<std::vector<int>> request_slot_pos;

    long state_gene(int slot0, int pos) const {
        return block_offset[slot0] + pos;
    }
    long discharge_gene(int slot0, int pos) const {
        return block_offset[slot0] + static_cast<long>(occupants[slot0].size()) + pos;
    }
    long charge_gene(int slot0, int pos) const {
        return block_offset[slot0] + 2L * static_cast<long>(occupants[slot0].size()) + pos;
    }
};

// What one EV does in one of its parking slots. Powers are magnitudes;
// the power opposite to the active state is held at zero.
struct SlotAction {
    int state = 0;             // -1 discharge, 0 idle, 1 charge
    double charge_kw = 0.0;
    double discharge_kw = 0.0;
};

// Decoded phenotype: rows[r][k] is request r's action in its k-th parking
// slot (absolute slot = arrival_slot + k).
struct Schedule {
    std::vector<std::vector<SlotAction>> rows;
};

// Deterministic layout for a scenario; occupant order within a slot is
// ascending EV id.
GenomeLayout layout_of(const Scenario& s);

// Threshold state genes at +-0.5 and copy active powers through.
// Throws std::invalid_argument on dimension mismatch.
Schedule decode(const Genome& g, const GenomeLayout& layout);

// Write states/powers back into gene positions (state s maps to gene value
// s exactly). Inactive power genes are written as the schedule stores them
// (zero for a decoded schedule). Throws std::invalid_argument if the
// schedule shape does not match the layout.
Genome encode(const Schedule& sch, const GenomeLayout& layout);

// CSV dump, columns: ev_id, slot, state, charge_kw, discharge_kw.
void write_schedule_csv(const Schedule& sch, const Scenario& s, std::ostream& out);

}  // namespace moevcs
