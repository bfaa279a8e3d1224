#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mogar/oracle.hpp"
#include "test_support.hpp"

using namespace mogar;

namespace {

RuleMetrics metrics_of(double cf, double completeness, double interestingness,
                       double comprehensibility) {
    RuleMetrics m;
    m.cf = cf;
    m.completeness = completeness;
    m.interestingness = interestingness;
    m.comprehensibility = comprehensibility;
    m.feasible = true;
    return m;
}

} // namespace

TEST_CASE("enumerate_rules on a two-item catalog") {
    CategoricalDataset ds = parse_csv(std::string("a,b\nx,y\n"));
    BinarizedData bd = binarize(ds);
    auto rules = enumerate_rules(ds, bd.catalog, 2);
    REQUIRE(rules.size() == 2);
    CHECK(rules[0] == make_rule({0}, {1}));
    CHECK(rules[1] == make_rule({1}, {0}));

    CHECK(enumerate_rules(ds, bd.catalog, 1).empty());
}

TEST_CASE("enumerate_rules counts cross-attribute rules on the web catalog") {
    CategoricalDataset ds = testsupport::web_sessions();
    BinarizedData bd = testsupport::web_binarized();
    auto rules = enumerate_rules(ds, bd.catalog, 2);

    // Cross-attribute ordered pairs: country x gender (3*2), country x browser
    // (3*3), gender x browser (2*3), two orientations each.
    CHECK(rules.size() == 2 * (6 + 9 + 6));

    std::map<std::pair<int, int>, int> by_attrs;
    for (const Rule& r : rules) {
        REQUIRE(r.antecedent.size() == 1);
        REQUIRE(r.consequent.size() == 1);
        int a = bd.catalog.item(r.antecedent[0]).attr_index;
        int c = bd.catalog.item(r.consequent[0]).attr_index;
        CHECK(a != c); // never the same attribute on both sides
        by_attrs[{std::min(a, c), std::max(a, c)}]++;
    }
    CHECK(by_attrs[{1, 2}] == 12); // gender x browser, both directions

    // every rule exactly once
    std::set<Rule> unique(rules.begin(), rules.end());
    CHECK(unique.size() == rules.size());
}

TEST_CASE("enumerate_rules respects the size bound and the guard") {
    CategoricalDataset ds = testsupport::web_sessions();
    BinarizedData bd = testsupport::web_binarized();
    auto bounded = enumerate_rules(ds, bd.catalog, 3);
    for (const Rule& r : bounded) CHECK(r.antecedent.size() + r.consequent.size() <= 3);
    // all three attributes used: 2^3 - 2 side assignments times the value products
    std::size_t full = 0;
    for (const Rule& r : bounded)
        if (r.antecedent.size() + r.consequent.size() == 3) ++full;
    CHECK(full == 6 * 18);

    // 30 two-value attributes: far beyond exhaustive reach without a bound
    std::string header, row;
    for (int i = 0; i < 30; ++i) {
        header += (i ? "," : "");
        header += "a" + std::to_string(i);
        row += (i ? "," : "");
        row += "x";
    }
    CategoricalDataset wide = parse_csv(header + "\n" + row + "\n" + row + "\n");
    BinarizedData wbd = binarize(wide);
    CHECK_THROWS_AS(enumerate_rules(wide, wbd.catalog, 30), ContractError);
}

TEST_CASE("oracle metrics agree with the bitmap path on every web rule") {
    CategoricalDataset ds = testsupport::web_sessions();
    BinarizedData bd = testsupport::web_binarized();
    for (const Rule& r : enumerate_rules(ds, bd.catalog, 3)) {
        RuleMetrics oracle = oracle_evaluate(ds, bd.catalog, r);
        RuleMetrics fast = evaluate_rule(bd.db, r);
        REQUIRE(oracle.feasible == fast.feasible);
        CHECK(oracle.counts.n_a == fast.counts.n_a);
        CHECK(oracle.counts.n_c == fast.counts.n_c);
        CHECK(oracle.counts.n_ac == fast.counts.n_ac);
        if (!oracle.feasible) continue;
        auto vo = oracle.objectives();
        auto vf = fast.objectives();
        for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(vo[k] - vf[k]) <= 1e-12);
    }
}

TEST_CASE("exact_pareto_front basics") {
    CHECK(exact_pareto_front({metrics_of(1, 1, 1, 1)}) == std::vector<std::size_t>{0});

    // chain: only the top survives
    auto chain = exact_pareto_front(
        {metrics_of(0.1, 0.1, 0.1, 1), metrics_of(0.5, 0.5, 0.5, 2), metrics_of(1, 1, 1, 3)});
    CHECK(chain == std::vector<std::size_t>{2});

    // antichain: everything survives
    auto anti = exact_pareto_front(
        {metrics_of(1, 0, 0, 1), metrics_of(0, 1, 0, 1), metrics_of(0, 0, 1, 1)});
    CHECK(anti == std::vector<std::size_t>{0, 1, 2});

    // equal vectors all stay
    auto equal = exact_pareto_front({metrics_of(1, 1, 1, 1), metrics_of(1, 1, 1, 1)});
    CHECK(equal.size() == 2);
}

TEST_CASE("the true front is enumeration-order invariant") {
    CategoricalDataset ds = testsupport::web_sessions();
    BinarizedData bd = testsupport::web_binarized();
    std::vector<RuleMetrics> metrics;
    for (const Rule& r : enumerate_rules(ds, bd.catalog, 3)) {
        RuleMetrics m = oracle_evaluate(ds, bd.catalog, r);
        if (m.feasible) metrics.push_back(m);
    }
    auto front = exact_pareto_front(metrics);
    std::set<std::array<double, 4>> vectors;
    for (std::size_t i : front) vectors.insert(metrics[i].objectives());

    std::vector<RuleMetrics> reversed(metrics.rbegin(), metrics.rend());
    std::set<std::array<double, 4>> vectors_rev;
    for (std::size_t i : exact_pareto_front(reversed)) vectors_rev.insert(reversed[i].objectives());
    CHECK(vectors == vectors_rev);

    // every excluded rule has a dominating witness on the front
    std::set<std::size_t> on_front(front.begin(), front.end());
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        if (on_front.count(i)) continue;
        bool witnessed = false;
        for (std::size_t j : front)
            if (dominates(metrics[j], metrics[i])) {
                witnessed = true;
                break;
            }
        CHECK(witnessed);
    }
}

TEST_CASE("verify_archive coverage and spurious detection") {
    CategoricalDataset ds = testsupport::web_sessions();
    BinarizedData bd = testsupport::web_binarized();
    auto front = oracle_front(ds, bd.catalog, 3);
    REQUIRE(!front.empty());

    std::vector<ArchiveEntry> as_archive;
    for (const OracleEval& fe : front) as_archive.push_back({fe.rule, fe.metrics});

    FrontReport perfect = verify_archive(as_archive, front);
    CHECK(perfect.coverage == 1.0);
    CHECK(perfect.spurious.empty());

    FrontReport empty = verify_archive({}, front);
    CHECK(empty.coverage == 0.0);
    CHECK(empty.spurious.empty());

    // add one rule strictly dominated by a front member
    int ns = bd.catalog.find("Browser", "Netscape");
    int china = bd.catalog.find("Country", "China");
    Rule dominated = make_rule({ns}, {china});
    RuleMetrics dm = oracle_evaluate(ds, bd.catalog, dominated);
    REQUIRE(dm.feasible);
    std::vector<ArchiveEntry> with_bad = as_archive;
    with_bad.push_back({dominated, dm});
    FrontReport flagged = verify_archive(with_bad, front);
    CHECK(flagged.spurious.size() == 1);
    CHECK(flagged.spurious[0].rule == dominated);
    CHECK(flagged.coverage == 1.0);
}
