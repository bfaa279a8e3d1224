#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "mogar/apriori.hpp"
#include "mogar/metrics.hpp"
#include "mogar/rng.hpp"

namespace mogar {

// One rule per individual: two disjoint bit masks over the item catalog.
struct Chromosome {
    RowBitmap antecedent;
    RowBitmap consequent;

    bool operator==(const Chromosome&) const = default;
};

Chromosome rule_to_chromosome(const Rule& r, std::size_t n_items);
Rule chromosome_to_rule(const Chromosome& ch);

struct GAConfig {
    std::size_t population_size = 50;
    double mutation_rate = 0.5;
    double crossover_rate = 0.8;
    std::size_t min_generations = 20;
    std::size_t stall_generations = 10;
    std::uint64_t rng_seed = 1;
    std::size_t max_rule_items = 0; // 0 = unbounded; otherwise >= 2
    // Probability that a mutation picks the interval widen/narrow variant when
    // an interval condition is present; the rest splits uniformly over value
    // substitution, drop condition and add condition.
    double specialize_generalize_probability = 0.25;
    ComprehensibilityVariant comprehensibility = ComprehensibilityVariant::eq4;
    std::size_t archive_capacity = 0; // 0 = unbounded

    bool operator==(const GAConfig&) const = default;
};

void validate(const GAConfig& cfg); // throws ContractError

struct ArchiveEntry {
    Rule rule;
    RuleMetrics metrics;

    bool operator==(const ArchiveEntry&) const = default;
};

// Mutually non-dominated set of evaluated rules; the algorithm's output set.
class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t capacity = 0) : capacity_(capacity) {}

    // Returns true when the archive content changed. A candidate dominated by
    // (or identical to) an existing entry is rejected; an accepted candidate
    // evicts every entry it dominates.
    bool insert(Rule rule, RuleMetrics metrics);

    const std::vector<ArchiveEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    void evict_most_crowded();

    std::vector<ArchiveEntry> entries_;
    std::size_t capacity_ = 0;
};

enum class CrossoverMode { standard, generalize, specialize };

// population_size chromosomes, each built by drawing a frequent itemset of
// cardinality >= 2 with probability proportional to its support and splitting
// it into non-empty antecedent/consequent uniformly at random.
std::vector<Chromosome> seed_population(const std::vector<FrequentItemset>& frequent,
                                        const ItemCatalog& catalog, const GAConfig& cfg, Rng& rng);

// Reciprocal Pareto rank: 1/(1+rank) with rank 0 the non-dominated front of
// the population; infeasible members sit below the worst feasible rank.
std::vector<double> pareto_rank_fitness(const std::vector<RuleMetrics>& metrics);

// Two independent fitness-proportional draws (they may coincide).
std::pair<std::size_t, std::size_t> roulette_select(const std::vector<double>& fitness, Rng& rng);

// standard: single cut point over the concatenated antecedent|consequent
// masks. generalize/specialize: offspring antecedents are the AND / OR of the
// parents' antecedents (fewer conditions cover more rows), consequents are
// inherited one from each parent. Offspring are repaired; an irreparable
// child is replaced by a copy of the corresponding parent.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1, const Chromosome& p2,
                                            CrossoverMode mode, const ItemCatalog& catalog,
                                            std::size_t max_rule_items, Rng& rng);

// With probability cfg.mutation_rate applies exactly one applicable variant:
// value substitution, drop condition, add condition, or interval
// widen/narrow; then repairs.
Chromosome mutate(const Chromosome& ch, const ItemCatalog& catalog, const GAConfig& cfg, Rng& rng);

// Drops consequent bits that also occur in the antecedent, keeps one item per
// attribute per side (uniform choice), enforces max_rule_items. Returns
// nullopt when either side ends up empty.
std::optional<Chromosome> repair(const Chromosome& ch, const ItemCatalog& catalog,
                                 std::size_t max_rule_items, Rng& rng);

// Full generational loop; pure function of its arguments including the seed.
// When progress is given, one line per generation is written to it.
ParetoArchive evolve(const BinaryTransactionDB& db, const ItemCatalog& catalog,
                     const std::vector<FrequentItemset>& frequent, const GAConfig& cfg,
                     std::ostream* progress = nullptr);

// Archive entries sorted by descending (interestingness, comprehensibility),
// ties broken by rule item order; first k (k = 0 means all).
std::vector<ArchiveEntry> select_final(const ParetoArchive& archive, std::size_t k = 0);

} // namespace mogar
