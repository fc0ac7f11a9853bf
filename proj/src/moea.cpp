#include "moevcs/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "moevcs/metrics.hpp"

namespace moevcs {

void validate_params(const MoeaParams& p) {
    if (p.population_size < 4 || p.population_size % 2 != 0) {
        throw std::invalid_argument("population_size must be even and >= 4");
    }
    if (p.max_generations < 1) throw std::invalid_argument("max_generations must be >= 1");
    if (p.crossover_rate < 0.0 || p.crossover_rate > 1.0) {
        throw std::invalid_argument("crossover_rate must be in [0, 1]");
    }
    if (p.mutation_probability < 0.0 || p.mutation_probability > 1.0) {
        throw std::invalid_argument("mutation_probability must be in [0, 1]");
    }
    if (!(p.sbx_eta > 0.0) || !(p.pm_eta > 0.0)) {
        throw std::invalid_argument("distribution indices must be > 0");
    }
    if (p.epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
    if (p.threads < 0) throw std::invalid_argument("threads must be >= 0");
}

bool constrained_dominates(const EvaluatedSolution& a, const EvaluatedSolution& b) {
    if (a.cv != b.cv) return a.cv < b.cv;
    bool strictly_better = false;
    for (int i = 0; i < 3; ++i) {
        if (a.objectives[i] > b.objectives[i]) return false;
        if (a.objectives[i] < b.objectives[i]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<std::vector<int>> fast_nondominated_sort(std::span<const EvaluatedSolution> pop) {
    int n = static_cast<int>(pop.size());
    std::vector<std::vector<int>> dominated(static_cast<size_t>(n));
    std::vector<int> domination_count(static_cast<size_t>(n), 0);

    std::vector<std::vector<int>> fronts(1);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (constrained_dominates(pop[static_cast<size_t>(p)], pop[static_cast<size_t>(q)])) {
                dominated[static_cast<size_t>(p)].push_back(q);
            } else if (constrained_dominates(pop[static_cast<size_t>(q)],
                                             pop[static_cast<size_t>(p)])) {
                ++domination_count[static_cast<size_t>(p)];
            }
        }
        if (domination_count[static_cast<size_t>(p)] == 0) fronts[0].push_back(p);
    }

    size_t k = 0;
    while (!fronts[k].empty()) {
        std::vector<int> next;
        for (int p : fronts[k]) {
            for (int q : dominated[static_cast<size_t>(p)]) {
                if (--domination_count[static_cast<size_t>(q)] == 0) next.push_back(q);
            }
        }
        ++k;
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();
    return fronts;
}

namespace {

std::vector<double> crowding_of_indices(std::span<const EvaluatedSolution> pop,
                                        std::span<const int> front) {
    size_t n = front.size();
    std::vector<double> dist(n, 0.0);
    if (n == 0) return dist;
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    std::vector<int> order(n);
    for (int m = 0; m < 3; ++m) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return pop[static_cast<size_t>(front[static_cast<size_t>(a)])].objectives[m] <
                   pop[static_cast<size_t>(front[static_cast<size_t>(b)])].objectives[m];
        });
        auto value = [&](size_t rank) {
            return pop[static_cast<size_t>(front[static_cast<size_t>(order[rank])])].objectives[m];
        };
        double range = value(n - 1) - value(0);
        dist[static_cast<size_t>(order[0])] = inf;
        dist[static_cast<size_t>(order[n - 1])] = inf;
        if (range == 0.0) continue;  // degenerate objective adds nothing
        for (size_t r = 1; r + 1 < n; ++r) {
            size_t idx = static_cast<size_t>(order[r]);
            if (dist[idx] != inf) dist[idx] += (value(r + 1) - value(r - 1)) / range;
        }
    }
    return dist;
}

}  // namespace

std::vector<double> crowding_distance(std::span<const EvaluatedSolution> front) {
    std::vector<int> idx(front.size());
    std::iota(idx.begin(), idx.end(), 0);
    return crowding_of_indices(front, idx);
}

int tournament_select(std::span<const EvaluatedSolution> pop,
                      std::span<const double> crowding, Rng& rng) {
    int n = static_cast<int>(pop.size());
    int a = rng.next_below(n);
    int b = rng.next_below(n - 1);
    if (b >= a) ++b;  // distinct pair
    if (constrained_dominates(pop[static_cast<size_t>(a)], pop[static_cast<size_t>(b)])) return a;
    if (constrained_dominates(pop[static_cast<size_t>(b)], pop[static_cast<size_t>(a)])) return b;
    if (crowding[static_cast<size_t>(a)] > crowding[static_cast<size_t>(b)]) return a;
    if (crowding[static_cast<size_t>(b)] > crowding[static_cast<size_t>(a)]) return b;
    return rng.next_double() < 0.5 ? a : b;
}

std::pair<Genome, Genome> sbx_crossover(const Genome& p1, const Genome& p2,
                                        const GenomeLayout& layout,
                                        const MoeaParams& params, Rng& rng) {
    if (p1.size() != p2.size() || p1.size() != layout.total_dim) {
        throw std::invalid_argument("sbx_crossover: dimension mismatch");
    }
    Genome c1 = p1;
    Genome c2 = p2;
    if (rng.next_double() > params.crossover_rate) return {std::move(c1), std::move(c2)};

    const double eta = params.sbx_eta;
    constexpr double kMinGap = 1e-14;
    for (size_t i = 0; i < p1.values.size(); ++i) {
        if (rng.next_double() > 0.5) continue;
        double x1 = p1.values[i];
        double x2 = p2.values[i];
        if (std::abs(x1 - x2) <= kMinGap) continue;
        double y1 = std::min(x1, x2);
        double y2 = std::max(x1, x2);
        double lo = layout.lower[i];
        double hi = layout.upper[i];
        double u = rng.next_double();

        auto spread = [&](double beta) {
            double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
            if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
            return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
        };
        double betaq = spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
        double v1 = 0.5 * ((y1 + y2) - betaq * (y2 - y1));
        betaq = spread(1.0 + 2.0 * (hi - y2) / (y2 - y1));
        double v2 = 0.5 * ((y1 + y2) + betaq * (y2 - y1));
        v1 = std::clamp(v1, lo, hi);
        v2 = std::clamp(v2, lo, hi);
        if (rng.next_double() <= 0.5) std::swap(v1, v2);
        c1.values[i] = v1;
        c2.values[i] = v2;
    }
    return {std::move(c1), std::move(c2)};
}

Genome polynomial_mutation(const Genome& g, const GenomeLayout& layout,
                           const MoeaParams& params, Rng& rng) {
    if (g.size() != layout.total_dim) {
        throw std::invalid_argument("polynomial_mutation: dimension mismatch");
    }
    Genome out = g;
    const double eta = params.pm_eta;
    const double mut_pow = 1.0 / (eta + 1.0);
    for (size_t i = 0; i < out.values.size(); ++i) {
        if (rng.next_double() >= params.mutation_probability) continue;
        double lo = layout.lower[i];
        double hi = layout.upper[i];
        double span = hi - lo;
        if (span <= 0.0) continue;
        double y = out.values[i];
        double u = rng.next_double();
        double deltaq;
        if (u <= 0.5) {
            double xy = 1.0 - (y - lo) / span;
            double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
            deltaq = std::pow(val, mut_pow) - 1.0;
        } else {
            double xy = 1.0 - (hi - y) / span;
            double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
            deltaq = 1.0 - std::pow(val, mut_pow);
        }
        out.values[i] = std::clamp(y + deltaq * span, lo, hi);
    }
    return out;
}

std::vector<EvaluatedSolution> evaluate_population(std::vector<Genome> genomes,
                                                   const Scenario& s,
                                                   const GenomeLayout& layout,
                                                   double eps, int threads) {
    size_t n = genomes.size();
    std::vector<EvaluatedSolution> result(n);
    int n_workers = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    n_workers = std::max(1, std::min<int>(n_workers, static_cast<int>(n)));

    auto work = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            result[i] = evaluate(genomes[i], s, layout, eps);
        }
    };
    if (n_workers == 1 || n < 2) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_workers));
        size_t chunk = (n + static_cast<size_t>(n_workers) - 1) / static_cast<size_t>(n_workers);
        for (int w = 0; w < n_workers; ++w) {
            size_t begin = static_cast<size_t>(w) * chunk;
            size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    return result;
}

namespace {

bool same_solution(const EvaluatedSolution& a, const EvaluatedSolution& b) {
    return a.cv == b.cv && a.objectives.user_cost == b.objectives.user_cost &&
           a.objectives.evcs_cost == b.objectives.evcs_cost &&
           a.objectives.load_variation == b.objectives.load_variation &&
           a.genome.values == b.genome.values;
}

struct RankedPopulation {
    std::vector<std::vector<int>> fronts;
    std::vector<double> crowding;  // aligned with the population
};

RankedPopulation rank_population(std::span<const EvaluatedSolution> pop) {
    RankedPopulation ranked;
    ranked.fronts = fast_nondominated_sort(pop);
    ranked.crowding.assign(pop.size(), 0.0);
    for (const auto& front : ranked.fronts) {
        std::vector<double> dist = crowding_of_indices(pop, front);
        for (size_t i = 0; i < front.size(); ++i) {
            ranked.crowding[static_cast<size_t>(front[i])] = dist[i];
        }
    }
    return ranked;
}

GenerationStats make_stats(long gen, std::span<const EvaluatedSolution> pop,
                           std::span<const int> first_front, const ObjectiveVector& ref) {
    GenerationStats st;
    st.generation = gen;
    for (const auto& sol : pop) {
        if (sol.feasible()) ++st.n_feasible;
    }
    bool use_feasible = st.n_feasible > 0;
    bool first = true;
    for (const auto& sol : pop) {
        if (use_feasible && !sol.feasible()) continue;
        if (first) {
            st.best_f1 = sol.objectives.user_cost;
            st.best_f2 = sol.objectives.evcs_cost;
            st.best_f3 = sol.objectives.load_variation;
            first = false;
        } else {
            st.best_f1 = std::min(st.best_f1, sol.objectives.user_cost);
            st.best_f2 = std::min(st.best_f2, sol.objectives.evcs_cost);
            st.best_f3 = std::min(st.best_f3, sol.objectives.load_variation);
        }
    }
    std::vector<ObjectiveVector> feasible_front;
    for (int idx : first_front) {
        if (pop[static_cast<size_t>(idx)].feasible()) {
            feasible_front.push_back(pop[static_cast<size_t>(idx)].objectives);
        }
    }
    st.hypervolume = hypervolume(std::span<const ObjectiveVector>(feasible_front), ref);
    return st;
}

}  // namespace

ParetoArchive evolve(const Scenario& s, const MoeaParams& params, ProgressFn progress) {
    validate_params(params);
    GenomeLayout layout = layout_of(s);
    const size_t ps = static_cast<size_t>(params.population_size);
    Rng rng(params.seed);

    // Step 1: uniform initialization inside the per-gene bounds.
    std::vector<Genome> genomes(ps);
    for (size_t i = 0; i < ps; ++i) {
        genomes[i].values.resize(static_cast<size_t>(layout.total_dim));
        for (size_t g = 0; g < genomes[i].values.size(); ++g) {
            genomes[i].values[g] = rng.uniform(layout.lower[g], layout.upper[g]);
        }
    }
    std::vector<EvaluatedSolution> pop =
        evaluate_population(std::move(genomes), s, layout, params.epsilon, params.threads);

    ParetoArchive archive;
    archive.total_evaluations = static_cast<long>(ps);
    long gen = 1;

    RankedPopulation ranked = rank_population(pop);
    archive.hv_reference = hv_reference_from(pop);

    GenerationStats st = make_stats(gen, pop, ranked.fronts[0], archive.hv_reference);
    archive.history.push_back(st);
    if (progress) progress(st);

    while (gen < params.max_generations) {
        // Selection + variation.
        std::vector<Genome> children;
        children.reserve(ps);
        while (children.size() < ps) {
            int a = tournament_select(pop, ranked.crowding, rng);
            int b = tournament_select(pop, ranked.crowding, rng);
            auto [c1, c2] = sbx_crossover(pop[static_cast<size_t>(a)].genome,
                                          pop[static_cast<size_t>(b)].genome, layout, params, rng);
            children.push_back(polynomial_mutation(c1, layout, params, rng));
            if (children.size() < ps) {
                children.push_back(polynomial_mutation(c2, layout, params, rng));
            }
        }
        std::vector<EvaluatedSolution> child_evals =
            evaluate_population(std::move(children), s, layout, params.epsilon, params.threads);
        archive.total_evaluations += static_cast<long>(ps);

        // (mu+lambda) elitist truncation: fronts in order, crowding order
        // within each front, distinct genomes first so clones of one
        // individual cannot crowd the survivors out (duplicate elimination
        // as in common NSGA-II implementations).
        std::vector<EvaluatedSolution> combined;
        combined.reserve(pop.size() + child_evals.size());
        for (auto& e : pop) combined.push_back(std::move(e));
        for (auto& e : child_evals) combined.push_back(std::move(e));

        std::vector<std::vector<int>> fronts = fast_nondominated_sort(combined);
        std::vector<int> priority;
        priority.reserve(combined.size());
        for (const auto& front : fronts) {
            std::vector<double> dist = crowding_of_indices(combined, front);
            std::vector<int> order(front.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&dist](int x, int y) { return dist[static_cast<size_t>(x)] >
                                                            dist[static_cast<size_t>(y)]; });
            // exact duplicates can only live in the same front; push them
            // behind that front's distinct members
            std::vector<int> distinct, clones;
            for (int r : order) {
                int idx = front[static_cast<size_t>(r)];
                bool duplicate = false;
                for (int kept : distinct) {
                    if (same_solution(combined[static_cast<size_t>(kept)],
                                      combined[static_cast<size_t>(idx)])) {
                        duplicate = true;
                        break;
                    }
                }
                (duplicate ? clones : distinct).push_back(idx);
            }
            priority.insert(priority.end(), distinct.begin(), distinct.end());
            priority.insert(priority.end(), clones.begin(), clones.end());
        }

        std::vector<EvaluatedSolution> next;
        next.reserve(ps);
        for (int idx : priority) {
            if (next.size() == ps) break;
            next.push_back(std::move(combined[static_cast<size_t>(idx)]));
        }
        pop = std::move(next);
        ranked = rank_population(pop);
        ++gen;

        st = make_stats(gen, pop, ranked.fronts[0], archive.hv_reference);
        archive.history.push_back(st);
        if (progress) progress(st);
    }

    for (int idx : ranked.fronts[0]) {
        archive.front.push_back(pop[static_cast<size_t>(idx)]);
    }
    return archive;
}

}  // namespace moevcs
