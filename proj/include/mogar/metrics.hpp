#pragma once

#include <array>
#include <compare>

#include "mogar/transactions.hpp"

namespace mogar {

// Antecedent => consequent over catalog items. Both sides non-empty, disjoint.
struct Rule {
    Itemset antecedent;
    Itemset consequent;

    bool operator==(const Rule&) const = default;
    auto operator<=>(const Rule&) const = default;
};

// Validates and normalizes (sorts) both sides.
Rule make_rule(Itemset antecedent, Itemset consequent);

enum class ComprehensibilityVariant {
    eq4,             // log(1+|C|) / log(1+|A&C|) over example counts
    attribute_count, // log(1+#consequent conditions) / log(1+#all conditions)
};

struct RuleMetrics {
    double cf = 0.0;                // |A&C| / |A|
    double completeness = 0.0;      // |A&C| / |C|
    double interestingness = 0.0;   // |A&C| - |A|*|C|/N
    double comprehensibility = 0.0;
    JointCounts counts;
    bool feasible = false;

    std::array<double, 4> objectives() const {
        return {cf, completeness, interestingness, comprehensibility};
    }
    bool operator==(const RuleMetrics&) const = default;
};

double confidence_factor(const JointCounts& c); // requires n_a > 0
double completeness(const JointCounts& c);      // requires n_c > 0
double interestingness(const JointCounts& c);   // requires n > 0
double comprehensibility(const JointCounts& c); // requires n_ac >= 1

// Bundles joint counts with all four objectives. A rule whose counts make any
// metric undefined (zero coverage on either side or no joint examples) comes
// back with feasible = false instead of an error, so the GA can discard it.
RuleMetrics evaluate_rule(const BinaryTransactionDB& db, const Rule& r,
                          ComprehensibilityVariant variant = ComprehensibilityVariant::eq4);

// Pareto dominance, all four objectives maximized: never worse, better at
// least once. Both operands must be feasible.
bool dominates(const RuleMetrics& a, const RuleMetrics& b);

} // namespace mogar
