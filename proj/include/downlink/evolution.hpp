// The two-stage evolutionary solver: random initialization, the four
// bi-stage operators (insert / reorder / mutation / swap), NSGA-II elitist
// selection with a crude-random baseline, and the box-method acceptance
// filter over the combined pool.

#pragma once

#include <cstdint>
#include <utility>

#include "downlink/objectives.hpp"
#include "downlink/rng.hpp"
#include "downlink/schedule.hpp"

namespace downlink {

enum class SelectionMode { NSGA2, CREM };

const char* to_string(SelectionMode mode);
SelectionMode parse_selection(const std::string& s);

struct EvolutionConfig {
    int pop_size = 100;
    int archive_size = 100;
    int max_iter = 50;
    double insert_rate = 0.4;    // IR
    double mutation_rate = 0.8;  // MR, also gates the swap operators
    std::uint64_t seed = 0;
    SelectionMode selection = SelectionMode::NSGA2;
    int box_grid = 100;          // boxes per objective axis
    ObjectiveVector ref = {1.0, 1.0};
    int threads = 1;             // per-individual parallelism inside run()
};

struct Individual {
    Chromosome chrom;
    Schedule sched;
    ObjectiveVector obj;
};

// Deterministic even under parallel execution (summed in index order).
struct OperatorCounters {
    long insert_considered = 0;
    long insert_fired = 0;
    long insert_applied = 0;
    long mutation_considered = 0;
    long mutation_fired = 0;
    long swap_within_fired = 0;
    long swap_within_applied = 0;
    long swap_between_fired = 0;
    long reorder_moves = 0;

    void merge(const OperatorCounters& o);
};

struct RunTrace {
    double initial_hv = 0.0;
    std::vector<double> hv;            // one entry per executed iteration
    std::vector<Individual> archive;   // final elite set
    OperatorCounters counters;
    double wall_time_s = 0.0;          // never serialized
};

// Table-1 footnote semantics: draw u ~ U(0,1), fire iff u > threshold
// (threshold 0 fires always, 1 never). threshold outside [0,1] throws.
bool trigger(Rng& rng, double threshold);

// One feasible individual: each OID scheduled with probability 1/2, segments
// assigned uniformly random candidate windows, then decode-with-repair.
Individual initialize_individual(const DecodeContext& ctx, Rng& rng);

std::vector<Individual> initialize(const DecodeContext& ctx, int pop_size, std::uint64_t seed,
                                   int threads = 1);

// Tries to place whole unscheduled families (random order, per-OID trigger
// on ir) first-fit into residual window capacity. FR never increases.
void insert_operator(Individual& ind, const DecodeContext& ctx, double ir, Rng& rng,
                     OperatorCounters* counters = nullptr);

// Consolidates each scheduled family into its fullest-used window while
// capacity allows. ST never increases, FR is unchanged.
void reorder_operator(Individual& ind, const DecodeContext& ctx,
                      OperatorCounters* counters = nullptr);

// Unschedules each scheduled family when the per-OID trigger on mr fires.
void mutation_operator(Individual& ind, const DecodeContext& ctx, double mr, Rng& rng,
                       OperatorCounters* counters = nullptr);

// Picks two assigned segments from different families and exchanges their
// windows when memberships and capacities allow; otherwise a no-op.
void swap_within(Individual& ind, const DecodeContext& ctx, Rng& rng,
                 OperatorCounters* counters = nullptr);

// One-point family-aligned crossover of the two-stage genes; both offspring
// decoded with repair.
std::pair<Individual, Individual> swap_between(const Individual& a, const Individual& b,
                                               const DecodeContext& ctx, Rng& rng);

// Fast nondominated sorting into fronts of indices (minimization).
std::vector<std::vector<int>> nondominated_sort(const std::vector<ObjectiveVector>& points);

// Standard crowding distances within one front (infinite at the boundary).
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front);

// Survivor indices: NSGA2 fills by fronts and truncates the last one by
// descending crowding distance; CREM samples uniformly without replacement.
std::vector<int> elitist_select(const std::vector<ObjectiveVector>& pool, int k,
                                SelectionMode mode, Rng& rng);

// Box-method acceptance over [0,1]^2: kept positions, first the surviving
// members of `best` (positions 0..), then admitted offspring (positions
// best.size()..). An offspring is admitted iff it is not dominated and its
// box is free among current nondominated members or it dominates that box's
// incumbent (which is then dropped).
std::vector<int> box_combine_filter(const std::vector<ObjectiveVector>& best,
                                    const std::vector<ObjectiveVector>& offspring, int grid);

std::vector<Individual> box_combine(const std::vector<Individual>& best,
                                    const std::vector<Individual>& offspring, int grid);

// Full optimization loop; bit-deterministic for a fixed (ctx, cfg) and
// independent of the thread count.
RunTrace run(const DecodeContext& ctx, const EvolutionConfig& cfg);

// Effective worker count: requested (>0) capped by the DOWNLINK_SCHED_THREADS
// environment variable; requested <= 0 means "env var or hardware".
int resolve_threads(int requested);

}  // namespace downlink
