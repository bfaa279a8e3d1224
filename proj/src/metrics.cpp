#include "mogar/metrics.hpp"

#include <cmath>

#include "mogar/errors.hpp"

namespace mogar {

Rule make_rule(Itemset antecedent, Itemset consequent) {
    antecedent = make_itemset(std::move(antecedent));
    consequent = make_itemset(std::move(consequent));
    if (antecedent.empty() || consequent.empty())
        throw ContractError("rule sides must be non-empty");
    if (!itemsets_disjoint(antecedent, consequent))
        throw ContractError("rule sides must be disjoint");
    return Rule{std::move(antecedent), std::move(consequent)};
}

double confidence_factor(const JointCounts& c) {
    if (c.n_a == 0) throw UndefinedMetricError("confidence factor undefined: rule covers no rows");
    return static_cast<double>(c.n_ac) / static_cast<double>(c.n_a);
}

double completeness(const JointCounts& c) {
    if (c.n_c == 0) throw UndefinedMetricError("completeness undefined: consequent covers no rows");
    return static_cast<double>(c.n_ac) / static_cast<double>(c.n_c);
}

double interestingness(const JointCounts& c) {
    if (c.n == 0) throw UndefinedMetricError("interestingness undefined: empty database");
    // Only the product term is divided by N.
    return static_cast<double>(c.n_ac) -
           static_cast<double>(c.n_a) * static_cast<double>(c.n_c) / static_cast<double>(c.n);
}

double comprehensibility(const JointCounts& c) {
    if (c.n_ac == 0)
        throw UndefinedMetricError("comprehensibility undefined: no jointly covered rows");
    return std::log(1.0 + static_cast<double>(c.n_c)) /
           std::log(1.0 + static_cast<double>(c.n_ac));
}

RuleMetrics evaluate_rule(const BinaryTransactionDB& db, const Rule& r,
                          ComprehensibilityVariant variant) {
    RuleMetrics m;
    m.counts = joint_counts(db, r.antecedent, r.consequent);
    m.feasible = m.counts.n > 0 && m.counts.n_a > 0 && m.counts.n_c > 0 && m.counts.n_ac > 0;
    if (!m.feasible) return m;
    m.cf = confidence_factor(m.counts);
    m.completeness = completeness(m.counts);
    m.interestingness = interestingness(m.counts);
    if (variant == ComprehensibilityVariant::attribute_count) {
        m.comprehensibility =
            std::log(1.0 + static_cast<double>(r.consequent.size())) /
            std::log(1.0 + static_cast<double>(r.antecedent.size() + r.consequent.size()));
    } else {
        m.comprehensibility = comprehensibility(m.counts);
    }
    return m;
}

bool dominates(const RuleMetrics& a, const RuleMetrics& b) {
    if (!a.feasible || !b.feasible)
        throw ContractError("dominates requires feasible metrics on both sides");
    auto va = a.objectives();
    auto vb = b.objectives();
    bool strictly_better = false;
    for (std::size_t i = 0; i < va.size(); ++i) {
        if (va[i] < vb[i]) return false;
        if (va[i] > vb[i]) strictly_better = true;
    }
    return strictly_better;
}

} // namespace mogar
