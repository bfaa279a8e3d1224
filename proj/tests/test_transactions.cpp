#include <doctest.h>

#include <random>

#include "mogar/transactions.hpp"
#include "test_support.hpp"

using namespace mogar;

TEST_CASE("cover intersects item columns") {
    BinarizedData bd = testsupport::web_binarized();
    int ie = bd.catalog.find("Browser", "Internet Explorer");
    CHECK(cover(bd.db, {ie}).to_indices() == std::vector<std::size_t>{0, 3});

    CHECK(cover(bd.db, {}).count() == 4); // empty conjunction is true everywhere

    int usa = bd.catalog.find("Country", "USA");
    int female = bd.catalog.find("Gender", "Female");
    CHECK(cover(bd.db, make_itemset({usa, female})).to_indices() == std::vector<std::size_t>{2});

    CHECK_THROWS_AS(cover(bd.db, {99}), ContractError);
}

TEST_CASE("support counts on the web sessions") {
    BinarizedData bd = testsupport::web_binarized();
    CHECK(support_count(bd.db, {bd.catalog.find("Gender", "Male")}) == 2);
    CHECK(support_count(bd.db, {}) == 4);
    Itemset impossible = make_itemset(
        {bd.catalog.find("Country", "China"), bd.catalog.find("Country", "Germany")});
    CHECK(support_count(bd.db, impossible) == 0);
}

TEST_CASE("joint_counts against hand-derived values") {
    BinarizedData bd = testsupport::web_binarized();
    auto counts = [&](const char* a_attr, const char* a_val, const char* c_attr,
                      const char* c_val) {
        return joint_counts(bd.db, {bd.catalog.find(a_attr, a_val)},
                            {bd.catalog.find(c_attr, c_val)});
    };
    JointCounts usa_male = counts("Country", "USA", "Gender", "Male");
    CHECK(usa_male.n_a == 2);
    CHECK(usa_male.n_c == 2);
    CHECK(usa_male.n_ac == 1);
    CHECK(usa_male.n == 4);

    JointCounts ie_male = counts("Browser", "Internet Explorer", "Gender", "Male");
    CHECK(ie_male.n_ac == 2);

    JointCounts china_female = counts("Country", "China", "Gender", "Female");
    CHECK(china_female.n_a == 1);
    CHECK(china_female.n_c == 2);
    CHECK(china_female.n_ac == 1);
}

TEST_CASE("joint_counts rejects empty or overlapping sides") {
    BinarizedData bd = testsupport::web_binarized();
    CHECK_THROWS_AS(joint_counts(bd.db, {}, {0}), ContractError);
    CHECK_THROWS_AS(joint_counts(bd.db, {0}, {}), ContractError);
    CHECK_THROWS_AS(joint_counts(bd.db, {0, 1}, {1, 2}), ContractError);
}

TEST_CASE("support is anti-monotone and covers decompose") {
    std::mt19937_64 gen(7);
    for (int round = 0; round < 50; ++round) {
        testsupport::RandomDb rdb = testsupport::random_db(gen);
        std::size_t k = rdb.db.n_items();

        Itemset t;
        for (std::size_t i = 0; i < k; ++i)
            if (gen() % 2) t.push_back(static_cast<ItemId>(i));
        Itemset s;
        for (ItemId id : t)
            if (gen() % 2) s.push_back(id);

        CHECK(support_count(rdb.db, s) >= support_count(rdb.db, t));

        RowBitmap expected = RowBitmap::all_set(rdb.db.n_rows());
        for (ItemId id : t) expected &= cover(rdb.db, {id});
        CHECK(cover(rdb.db, t) == expected);

        // n_ac equals the union's support exactly
        if (s.size() >= 1 && t.size() > s.size()) {
            Itemset rest;
            for (ItemId id : t)
                if (!std::binary_search(s.begin(), s.end(), id)) rest.push_back(id);
            if (!rest.empty() && !s.empty()) {
                JointCounts jc = joint_counts(rdb.db, s, rest);
                CHECK(jc.n_ac == support_count(rdb.db, itemset_union(s, rest)));
            }
        }
    }
}

TEST_CASE("bitmap basics") {
    RowBitmap b(70);
    b.set(0);
    b.set(69);
    CHECK(b.count() == 2);
    CHECK(b.test(69));
    b.clear(69);
    CHECK_FALSE(b.test(69));
    CHECK(RowBitmap::all_set(70).count() == 70);
    CHECK(RowBitmap::all_set(0).count() == 0);

    RowBitmap c(70);
    c.set(0);
    c.set(5);
    RowBitmap d = c;
    d.and_not(b);
    CHECK(d.to_indices() == std::vector<std::size_t>{5});
}
