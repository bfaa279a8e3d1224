#include "mogar/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "mogar/errors.hpp"

namespace mogar {

namespace {

// Membership straight from the dataset cells; no bitmap involved.
bool row_has_item(const CategoricalDataset& ds, const CatalogItem& item, std::size_t row) {
    int cell = ds.rows[row][static_cast<std::size_t>(item.attr_index)];
    return cell != kMissingCell && cell >= item.bin_lo && cell <= item.bin_hi;
}

struct Enumerator {
    const ItemCatalog& catalog;
    std::size_t max_items;
    std::size_t budget;
    std::size_t visited = 0;
    std::vector<std::vector<int>> attr_items; // catalog ids grouped by attribute
    Itemset antecedent, consequent;
    std::vector<Rule> out;

    void run() {
        step(0);
    }

    void step(std::size_t attr) {
        if (++visited > budget)
            throw ContractError("enumerate_rules: rule space too large for exhaustive "
                                "enumeration; lower max_items");
        if (antecedent.size() + consequent.size() > max_items) return;
        if (attr == attr_items.size()) {
            if (!antecedent.empty() && !consequent.empty())
                out.push_back(Rule{make_itemset(antecedent), make_itemset(consequent)});
            return;
        }
        step(attr + 1); // attribute unused
        if (antecedent.size() + consequent.size() == max_items) return;
        for (int id : attr_items[attr]) {
            antecedent.push_back(id);
            step(attr + 1);
            antecedent.pop_back();
            consequent.push_back(id);
            step(attr + 1);
            consequent.pop_back();
        }
    }
};

} // namespace

std::vector<Rule> enumerate_rules(const CategoricalDataset& ds, const ItemCatalog& catalog,
                                  std::size_t max_items) {
    if (max_items < 1) throw ContractError("enumerate_rules: max_items must be >= 1");
    if (catalog.size() > 24 && max_items > 24)
        throw ContractError("enumerate_rules: catalog too large for unbounded enumeration");

    Enumerator e{catalog, max_items, 50'000'000, 0, {}, {}, {}, {}};
    e.attr_items.resize(ds.schema.size());
    for (std::size_t id = 0; id < catalog.size(); ++id)
        e.attr_items[static_cast<std::size_t>(catalog.item(static_cast<int>(id)).attr_index)]
            .push_back(static_cast<int>(id));
    e.run();

    std::sort(e.out.begin(), e.out.end());
    return e.out;
}

RuleMetrics oracle_evaluate(const CategoricalDataset& ds, const ItemCatalog& catalog,
                            const Rule& r, ComprehensibilityVariant variant) {
    std::size_t n_a = 0, n_c = 0, n_ac = 0;
    for (std::size_t row = 0; row < ds.rows.size(); ++row) {
        bool sat_a = true, sat_c = true;
        for (ItemId id : r.antecedent)
            if (!row_has_item(ds, catalog.item(id), row)) {
                sat_a = false;
                break;
            }
        for (ItemId id : r.consequent)
            if (!row_has_item(ds, catalog.item(id), row)) {
                sat_c = false;
                break;
            }
        if (sat_a) ++n_a;
        if (sat_c) ++n_c;
        if (sat_a && sat_c) ++n_ac;
    }

    RuleMetrics m;
    m.counts = JointCounts{n_a, n_c, n_ac, ds.rows.size()};
    m.feasible = ds.rows.size() > 0 && n_a > 0 && n_c > 0 && n_ac > 0;
    if (!m.feasible) return m;
    double a = static_cast<double>(n_a), c = static_cast<double>(n_c),
           ac = static_cast<double>(n_ac), n = static_cast<double>(ds.rows.size());
    m.cf = ac / a;
    m.completeness = ac / c;
    m.interestingness = ac - a * c / n;
    m.comprehensibility =
        variant == ComprehensibilityVariant::attribute_count
            ? std::log1p(static_cast<double>(r.consequent.size())) /
                  std::log1p(static_cast<double>(r.antecedent.size() + r.consequent.size()))
            : std::log1p(c) / std::log1p(ac);
    return m;
}

std::vector<std::size_t> exact_pareto_front(const std::vector<RuleMetrics>& metrics) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        bool dominated = false;
        for (std::size_t j : front)
            if (dominates(metrics[j], metrics[i])) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        std::erase_if(front, [&](std::size_t j) { return dominates(metrics[i], metrics[j]); });
        front.push_back(i);
    }
    std::sort(front.begin(), front.end());
    return front;
}

std::vector<OracleEval> oracle_front(const CategoricalDataset& ds, const ItemCatalog& catalog,
                                     std::size_t max_items, ComprehensibilityVariant variant) {
    std::vector<OracleEval> feasible;
    for (Rule& r : enumerate_rules(ds, catalog, max_items)) {
        RuleMetrics m = oracle_evaluate(ds, catalog, r, variant);
        if (m.feasible) feasible.push_back(OracleEval{std::move(r), m});
    }
    std::vector<RuleMetrics> metrics;
    metrics.reserve(feasible.size());
    for (const OracleEval& fe : feasible) metrics.push_back(fe.metrics);

    std::vector<OracleEval> front;
    for (std::size_t i : exact_pareto_front(metrics)) front.push_back(feasible[i]);
    return front;
}

FrontReport verify_archive(const std::vector<ArchiveEntry>& archive,
                           const std::vector<OracleEval>& true_front) {
    FrontReport report;
    report.true_front = true_front;

    std::vector<std::array<double, 4>> front_vectors;
    for (const OracleEval& fe : true_front) front_vectors.push_back(fe.metrics.objectives());
    std::sort(front_vectors.begin(), front_vectors.end());
    front_vectors.erase(std::unique(front_vectors.begin(), front_vectors.end()),
                        front_vectors.end());

    std::vector<std::array<double, 4>> hit;
    for (const ArchiveEntry& e : archive) {
        auto v = e.metrics.objectives();
        if (std::binary_search(front_vectors.begin(), front_vectors.end(), v)) hit.push_back(v);
        for (const OracleEval& fe : true_front)
            if (dominates(fe.metrics, e.metrics)) {
                report.spurious.push_back(e);
                break;
            }
    }
    std::sort(hit.begin(), hit.end());
    hit.erase(std::unique(hit.begin(), hit.end()), hit.end());

    report.coverage = front_vectors.empty()
                          ? 1.0
                          : static_cast<double>(hit.size()) / static_cast<double>(front_vectors.size());
    return report;
}

} // namespace mogar
