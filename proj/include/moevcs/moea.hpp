// Constrained mixed-variable NSGA-II: feasibility-first dominance, fast
// non-dominated sorting with crowding, binary tournaments, SBX crossover,
// polynomial mutation, elitist (mu+lambda) survival.
//
// K. Deb, A. Pratap, S. Agarwal and T. Meyarivan, "A fast and elitist
// multiobjective genetic algorithm: NSGA-II", IEEE TEC 6(2), 2002.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "moevcs/objectives.hpp"
#include "moevcs/rng.hpp"

namespace moevcs {

struct MoeaParams {
    int population_size = 1000;
    long max_generations = 20000;
    double crossover_rate = 0.95;       // per parent pair
    double mutation_probability = 0.01; // per gene
    double sbx_eta = 15.0;
    double pm_eta = 20.0;
    double epsilon = 0.1;               // equality-constraint tolerance
    std::uint64_t seed = 0;
    int threads = 0;                    // 0 = all hardware threads
};

// Throws std::invalid_argument on any bad parameter.
void validate_params(const MoeaParams& p);

// Feasibility first (smaller cv wins), then Pareto dominance at equal cv.
bool constrained_dominates(const EvaluatedSolution& a, const EvaluatedSolution& b);

// Fronts of indices into pop; front k is non-dominated among the
// population minus fronts < k.
std::vector<std::vector<int>> fast_nondominated_sort(std::span<const EvaluatedSolution> pop);

// NSGA-II cuboid density over the three objectives. Boundary members per
// objective get +inf; a zero objective range contributes nothing.
std::vector<double> crowding_distance(std::span<const EvaluatedSolution> front);

// Binary tournament over two distinct members: constrained dominance,
// then larger crowding distance, then a coin flip. Returns the index.
int tournament_select(std::span<const EvaluatedSolution> pop,
                      std::span<const double> crowding, Rng& rng);

// SBX applied gene-wise with probability crossover_rate per pair;
// children are clipped to the per-gene bounds.
std::pair<Genome, Genome> sbx_crossover(const Genome& p1, const Genome& p2,
                                        const GenomeLayout& layout,
                                        const MoeaParams& params, Rng& rng);

// Each gene mutates independently with mutation_probability.
Genome polynomial_mutation(const Genome& g, const GenomeLayout& layout,
                           const MoeaParams& params, Rng& rng);

struct GenerationStats {
    long generation = 0;
    int n_feasible = 0;
    // Best objective values over feasible members (over the whole
    // population when none is feasible yet).
    double best_f1 = 0.0, best_f2 = 0.0, best_f3 = 0.0;
    double hypervolume = 0.0;
};

struct ParetoArchive {
    std::vector<EvaluatedSolution> front;   // final first front
    std::vector<GenerationStats> history;   // one entry per generation
    ObjectiveVector hv_reference;           // fixed at generation 1
    long total_evaluations = 0;
};

using ProgressFn = std::function<void(const GenerationStats&)>;

// Run the full loop: uniform initialization, evaluation, then
// max_generations - 1 rounds of selection/SBX/PM/evaluation and elitist
// truncation. Deterministic for a fixed seed regardless of thread count.
ParetoArchive evolve(const Scenario& s, const MoeaParams& params, ProgressFn progress = {});

// Shared helper: evaluate genomes in index order, fanning out across
// worker threads; results match serial evaluation exactly.
std::vector<EvaluatedSolution> evaluate_population(std::vector<Genome> genomes,
                                                   const Scenario& s,
                                                   const GenomeLayout& layout,
                                                   double eps, int threads);

}  // namespace moevcs
