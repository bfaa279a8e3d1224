#include <doctest.h>

#include <random>

#include "mogar/apriori.hpp"
#include "test_support.hpp"

using namespace mogar;

TEST_CASE("candidate generation joins and prunes") {
    CHECK(generate_candidates({{0}, {1}, {2}}) ==
          std::vector<Itemset>{{0, 1}, {0, 2}, {1, 2}});

    // {0,1,2} requires {1,2} to be frequent
    CHECK(generate_candidates({{0, 1}, {0, 2}}).empty());
    CHECK(generate_candidates({{0, 1}, {0, 2}, {1, 2}}) == std::vector<Itemset>{{0, 1, 2}});

    CHECK_THROWS_AS(generate_candidates({{0}, {1, 2}}), ContractError);
    CHECK_THROWS_AS(generate_candidates({{2, 1}}), ContractError);
    CHECK(generate_candidates({}).empty());
}

TEST_CASE("mine_frequent on the web sessions at minsup 0.5") {
    BinarizedData bd = testsupport::web_binarized();
    auto frequent = mine_frequent(bd.db, 0.5);

    std::vector<Itemset> expect = {
        {bd.catalog.find("Country", "USA")},
        {bd.catalog.find("Gender", "Male")},
        {bd.catalog.find("Gender", "Female")},
        {bd.catalog.find("Browser", "Internet Explorer")},
        make_itemset({bd.catalog.find("Gender", "Male"),
                      bd.catalog.find("Browser", "Internet Explorer")}),
    };
    std::sort(expect.begin(), expect.end(), [](const Itemset& a, const Itemset& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    REQUIRE(frequent.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(frequent[i].items == expect[i]);
        CHECK(frequent[i].support_count == 2);
        CHECK(frequent[i].support_fraction == doctest::Approx(0.5));
    }
}

TEST_CASE("mine_frequent threshold edges") {
    BinarizedData bd = testsupport::web_binarized();
    CHECK(mine_frequent(bd.db, 1.0).empty()); // nothing holds in all four rows

    auto everything = mine_frequent(bd.db, 1e-9);
    Itemset row3 = make_itemset({bd.catalog.find("Country", "USA"),
                                 bd.catalog.find("Gender", "Female"),
                                 bd.catalog.find("Browser", "Mozilla")});
    bool found = false;
    for (const auto& fs : everything) found = found || fs.items == row3;
    CHECK(found);

    CHECK_THROWS_AS(mine_frequent(bd.db, 0.0), ContractError);
    CHECK_THROWS_AS(mine_frequent(bd.db, 1.5), ContractError);
    BinaryTransactionDB empty(0, 3);
    CHECK_THROWS_AS(mine_frequent(empty, 0.5), ContractError);
}

TEST_CASE("mine_frequent equals exhaustive enumeration on random DBs") {
    std::mt19937_64 gen(42);
    for (int round = 0; round < 30; ++round) {
        testsupport::RandomDb rdb = testsupport::random_db(gen, 12, 40);
        double minsup = 0.05 + 0.9 * static_cast<double>(gen() % 1000) / 1000.0;
        auto mined = mine_frequent(rdb.db, minsup);
        auto expect = testsupport::brute_force_frequent(rdb.rows, rdb.db.n_items(), minsup);
        CHECK(testsupport::same_frequent(mined, expect));
    }
}

TEST_CASE("downward closure and max length") {
    std::mt19937_64 gen(3);
    testsupport::RandomDb rdb = testsupport::random_db(gen, 10, 32);
    auto frequent = mine_frequent(rdb.db, 0.2);

    std::vector<Itemset> seen;
    for (const auto& fs : frequent) seen.push_back(fs.items);
    std::sort(seen.begin(), seen.end());
    for (const auto& fs : frequent) {
        for (std::size_t drop = 0; drop < fs.items.size(); ++drop) {
            if (fs.items.size() == 1) continue;
            Itemset sub;
            for (std::size_t i = 0; i < fs.items.size(); ++i)
                if (i != drop) sub.push_back(fs.items[i]);
            CHECK(std::binary_search(seen.begin(), seen.end(), sub));
        }
    }

    auto bounded = mine_frequent(rdb.db, 0.2, 2);
    auto expect = testsupport::brute_force_frequent(rdb.rows, rdb.db.n_items(), 0.2, 2);
    CHECK(testsupport::same_frequent(bounded, expect));
}

TEST_CASE("frequent itemset dump format") {
    BinarizedData bd = testsupport::web_binarized();
    auto frequent = mine_frequent(bd.db, 0.5);
    std::string dump = dump_frequent(frequent, bd.catalog);
    CHECK(dump.find("Country=USA\t2\t0.5\n") != std::string::npos);
    CHECK(dump.find("Gender=Male,Browser=Internet Explorer\t2\t0.5\n") != std::string::npos);
}
