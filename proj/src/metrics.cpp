#include "moevcs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace moevcs {

namespace {

// Area of the union of [x_i, ref_x] x [y_i, ref_y] boxes (minimization).
// Points must already dominate (ref_x, ref_y).
class Staircase {
public:
    // Returns true if the point changed the staircase.
    bool insert(double x, double y) {
        for (const auto& p : points_) {
            if (p.first <= x && p.second <= y) return false;  // dominated
        }
        std::erase_if(points_, [&](const auto& p) { return x <= p.first && y <= p.second; });
        points_.insert(std::upper_bound(points_.begin(), points_.end(), std::pair{x, y}),
                       {x, y});
        return true;
    }

    double area(double ref_x, double ref_y) const {
        double total = 0.0;
        for (size_t i = 0; i < points_.size(); ++i) {
            double next_x = i + 1 < points_.size() ? points_[i + 1].first : ref_x;
            total += (next_x - points_[i].first) * (ref_y - points_[i].second);
        }
        return total;
    }

private:
    std::vector<std::pair<double, double>> points_;  // sorted by x, y strictly decreasing
};

}  // namespace

double hypervolume(const std::vector<std::vector<double>>& front,
                   const std::vector<double>& ref, int* n_excluded) {
    size_t m = ref.size();
    if (m == 0 || m > 3) {
        throw std::invalid_argument("hypervolume: supports 1 to 3 objectives");
    }
    std::vector<std::vector<double>> pts;
    int excluded = 0;
    for (const auto& p : front) {
        if (p.size() != m) throw std::invalid_argument("hypervolume: dimension mismatch");
        bool dominates_ref = true;
        for (size_t j = 0; j < m; ++j) {
            if (p[j] > ref[j]) {
                dominates_ref = false;
                break;
            }
        }
        if (dominates_ref) {
            pts.push_back(p);
        } else {
            ++excluded;
        }
    }
    if (n_excluded) *n_excluded = excluded;
    if (pts.empty()) return 0.0;

    if (m == 1) {
        double best = ref[0];
        for (const auto& p : pts) best = std::min(best, p[0]);
        return ref[0] - best;
    }
    if (m == 2) {
        Staircase stair;
        for (const auto& p : pts) stair.insert(p[0], p[1]);
        return stair.area(ref[0], ref[1]);
    }

    // m == 3: sweep ascending in the third objective, accumulating slabs of
    // the 2D staircase area between consecutive levels.
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a[2] != b[2] ? a[2] < b[2] : (a[0] != b[0] ? a[0] < b[0] : a[1] < b[1]);
    });
    Staircase stair;
    double volume = 0.0;
    size_t i = 0;
    while (i < pts.size()) {
        double z = pts[i][2];
        while (i < pts.size() && pts[i][2] == z) {
            stair.insert(pts[i][0], pts[i][1]);
            ++i;
        }
        double next_z = i < pts.size() ? pts[i][2] : ref[2];
        volume += stair.area(ref[0], ref[1]) * (next_z - z);
    }
    return volume;
}

double hypervolume(std::span<const ObjectiveVector> front, const ObjectiveVector& ref,
                   int* n_excluded) {
    std::vector<std::vector<double>> pts;
    pts.reserve(front.size());
    for (const auto& v : front) {
        pts.push_back({v.user_cost, v.evcs_cost, v.load_variation});
    }
    return hypervolume(pts, {ref.user_cost, ref.evcs_cost, ref.load_variation}, n_excluded);
}

ObjectiveVector hv_reference_from(std::span<const EvaluatedSolution> population) {
    ObjectiveVector ref;
    if (population.empty()) return ref;
    double nadir[3];
    for (int m = 0; m < 3; ++m) nadir[m] = population[0].objectives[m];
    for (const auto& sol : population) {
        for (int m = 0; m < 3; ++m) nadir[m] = std::max(nadir[m], sol.objectives[m]);
    }
    // Push 10% outward; for a positive nadir this is 1.1x, for a negative
    // one it still moves away from the front.
    double shifted[3];
    for (int m = 0; m < 3; ++m) {
        double scale = std::abs(nadir[m]) > 0.0 ? std::abs(nadir[m]) : 1.0;
        shifted[m] = nadir[m] + 0.1 * scale;
    }
    ref.user_cost = shifted[0];
    ref.evcs_cost = shifted[1];
    ref.load_variation = shifted[2];
    return ref;
}

const EvaluatedSolution& select_extreme(std::span<const EvaluatedSolution> front,
                                        int objective_index, bool minimize) {
    if (front.empty()) throw std::invalid_argument("select_extreme: empty front");
    if (objective_index < 0 || objective_index > 2) {
        throw std::invalid_argument("select_extreme: objective_index must be 0, 1, or 2");
    }
    auto key = [&](const EvaluatedSolution& sol) {
        double v = sol.objectives[objective_index];
        return minimize ? v : -v;
    };
    const EvaluatedSolution* best = &front[0];
    for (const auto& sol : front) {
        double a = key(sol);
        double b = key(*best);
        if (a < b ||
            (a == b && (sol.objectives.load_variation < best->objectives.load_variation ||
                        (sol.objectives.load_variation == best->objectives.load_variation &&
                         sol.objectives.user_cost < best->objectives.user_cost)))) {
            best = &sol;
        }
    }
    return *best;
}

std::array<ObjectiveRange, 3> objective_ranges(std::span<const EvaluatedSolution> front) {
    if (front.empty()) throw std::invalid_argument("objective_ranges: empty front");
    std::array<ObjectiveRange, 3> ranges;
    for (int m = 0; m < 3; ++m) {
        ranges[static_cast<size_t>(m)] = {front[0].objectives[m], front[0].objectives[m]};
    }
    for (const auto& sol : front) {
        for (int m = 0; m < 3; ++m) {
            auto& r = ranges[static_cast<size_t>(m)];
            r.lo = std::min(r.lo, sol.objectives[m]);
            r.hi = std::max(r.hi, sol.objectives[m]);
        }
    }
    return ranges;
}

}  // namespace moevcs
