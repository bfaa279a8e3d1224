#pragma once

#include <cstddef>
#include <vector>

#include "mogar/dataset.hpp"
#include "mogar/ga.hpp"
#include "mogar/metrics.hpp"

namespace mogar {

// Brute-force ground truth. Counting here walks dataset rows directly and
// re-derives item membership from the schema, sharing no code with the
// bitmap store, so agreement between the two paths is meaningful.

struct OracleEval {
    Rule rule;
    RuleMetrics metrics;
};

struct FrontReport {
    std::vector<OracleEval> true_front;
    double coverage = 0.0; // distinct front objective vectors found
    std::vector<ArchiveEntry> spurious; // archive entries dominated by the front
};

// Every rule with disjoint non-empty sides, at most one item per attribute
// (an attribute appears on at most one side), and |A| + |C| <= max_items.
// Refuses catalogs/bounds whose enumeration would be intractable.
std::vector<Rule> enumerate_rules(const CategoricalDataset& ds, const ItemCatalog& catalog,
                                  std::size_t max_items);

// Independent metric path: per-row scans with integer tallies.
RuleMetrics oracle_evaluate(const CategoricalDataset& ds, const ItemCatalog& catalog,
                            const Rule& r,
                            ComprehensibilityVariant variant = ComprehensibilityVariant::eq4);

// Indices of the maximal (pairwise non-dominated) subset; entries with equal
// objective vectors are all kept.
std::vector<std::size_t> exact_pareto_front(const std::vector<RuleMetrics>& metrics);

// enumerate + evaluate + front, keeping only feasible rules.
std::vector<OracleEval> oracle_front(const CategoricalDataset& ds, const ItemCatalog& catalog,
                                     std::size_t max_items,
                                     ComprehensibilityVariant variant = ComprehensibilityVariant::eq4);

// coverage = |archive vectors among front vectors| / |distinct front vectors|;
// spurious lists archive entries strictly dominated by a front point.
FrontReport verify_archive(const std::vector<ArchiveEntry>& archive,
                           const std::vector<OracleEval>& true_front);

} // namespace mogar
