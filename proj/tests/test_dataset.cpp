#include <doctest.h>

#include <set>

#include "mogar/binarize.hpp"
#include "mogar/dataset.hpp"
#include "mogar/errors.hpp"
#include "test_support.hpp"

using namespace mogar;

TEST_CASE("parse_csv builds domains in first-appearance order") {
    CategoricalDataset ds = testsupport::web_sessions();
    REQUIRE(ds.schema.size() == 3);
    CHECK(ds.schema[0].name == "Country");
    CHECK(ds.schema[0].domain == std::vector<std::string>{"USA", "China", "Germany"});
    CHECK(ds.schema[1].domain == std::vector<std::string>{"Male", "Female"});
    CHECK(ds.schema[2].domain ==
          std::vector<std::string>{"Internet Explorer", "Netscape", "Mozilla"});
    REQUIRE(ds.n_rows() == 4);
    CHECK(ds.rows[3] == std::vector<int>{2, 0, 0});
}

TEST_CASE("parse_csv header-only input keeps schema with zero rows") {
    CategoricalDataset ds = parse_csv(std::string("a,b,c\n"));
    CHECK(ds.schema.size() == 3);
    CHECK(ds.n_rows() == 0);
}

TEST_CASE("parse_csv records the missing token as a missing cell") {
    CategoricalDataset ds = parse_csv(std::string("a,b\nx,?\n?,y\n"));
    CHECK(ds.rows[0][1] == kMissingCell);
    CHECK(ds.rows[1][0] == kMissingCell);
    CHECK(ds.schema[0].domain == std::vector<std::string>{"x"});
}

TEST_CASE("parse_csv rejects ragged and empty input") {
    CHECK_THROWS_AS(parse_csv(std::string("")), ParseError);
    CHECK_THROWS_WITH_AS(parse_csv(std::string("a,b\nx\n")),
                         doctest::Contains("row 2"), ParseError);
    CHECK_THROWS_AS(parse_csv(std::string("a,a\n")), ParseError);
}

TEST_CASE("parse_csv honors a custom delimiter") {
    CategoricalDataset ds = parse_csv(std::string("a;b\nx;y\n"), CsvOptions{';', "?"});
    CHECK(ds.schema[1].domain == std::vector<std::string>{"y"});
}

TEST_CASE("discretize bins ages into half-open intervals") {
    CategoricalDataset ds = parse_csv(std::string("age\n18\n19\n20\n21\n"));
    CategoricalDataset out = discretize(ds, "age", {18, 20, 22});
    REQUIRE(out.schema[0].domain == std::vector<std::string>{"18..19", "20..21"});
    CHECK(out.schema[0].kind == AttributeKind::interval);
    CHECK(out.rows[0][0] == 0); // 18
    CHECK(out.rows[1][0] == 0); // 19
    CHECK(out.rows[2][0] == 1); // 20
    CHECK(out.rows[3][0] == 1); // 21
}

TEST_CASE("discretize with one bin yields a constant column") {
    CategoricalDataset ds = parse_csv(std::string("age\n18\n19\n20\n21\n"));
    CategoricalDataset out = discretize(ds, "age", {18, 22});
    REQUIRE(out.schema[0].domain == std::vector<std::string>{"18..21"});
    for (const auto& row : out.rows) CHECK(row[0] == 0);
}

TEST_CASE("discretize error paths") {
    CategoricalDataset ds = parse_csv(std::string("age\n18\nold\n"));
    CHECK_THROWS_WITH_AS(discretize(ds, "age", {18, 22}), doctest::Contains("old"), ParseError);

    CategoricalDataset numeric = parse_csv(std::string("age\n18\n25\n"));
    CHECK_THROWS_WITH_AS(discretize(numeric, "age", {18, 22}),
                         doctest::Contains("outside"), ParseError);
    CHECK_THROWS_AS(discretize(numeric, "age", {22, 18}), ContractError);
    CHECK_THROWS_AS(discretize(numeric, "missing", {18, 22}), ContractError);
    // missing cells pass through untouched
    CategoricalDataset with_missing = parse_csv(std::string("age\n18\n?\n"));
    CategoricalDataset out = discretize(with_missing, "age", {18, 22});
    CHECK(out.rows[1][0] == kMissingCell);
}

namespace {

// Reference for the block mapping: for x = 0, 1, ... the 1-based values
// {x*c+1, ..., x*c+c} collapse to group x+1, with c = ceil(|D| / M).
std::vector<int> reference_groups(std::size_t domain, std::size_t max_values) {
    std::size_t c = (domain + max_values - 1) / max_values;
    std::vector<int> group(domain + 1, 0);
    for (std::size_t x = 0; x * c + 1 <= domain; ++x)
        for (std::size_t i = x * c + 1; i <= std::min(domain, x * c + c); ++i)
            group[i] = static_cast<int>(x) + 1;
    return group;
}

CategoricalDataset one_column_values(std::size_t domain) {
    std::string csv = "v\n";
    for (std::size_t i = 1; i <= domain; ++i) csv += "x" + std::to_string(i) + "\n";
    return parse_csv(csv);
}

} // namespace

TEST_CASE("compress_domain matches the block-mapping reference") {
    for (auto [domain, max_values] : {std::pair<std::size_t, std::size_t>{10, 5}, {5, 2}, {7, 3}}) {
        CategoricalDataset ds = one_column_values(domain);
        CategoricalDataset out = compress_domain(ds, "v", max_values);
        std::vector<int> expect = reference_groups(domain, max_values);
        CHECK(out.schema[0].domain.size() <= max_values);
        for (std::size_t i = 1; i <= domain; ++i)
            CHECK(out.rows[i - 1][0] == expect[i] - 1); // rows hold 0-based groups
    }
    // f(3) = 2 for |D| = 10, M = 5
    CategoricalDataset out = compress_domain(one_column_values(10), "v", 5);
    CHECK(out.rows[2][0] == 1);
}

TEST_CASE("compress_domain with M >= |D| is the identity") {
    CategoricalDataset ds = one_column_values(4);
    CategoricalDataset out = compress_domain(ds, "v", 9);
    CHECK(out.schema[0].domain == ds.schema[0].domain);
    CHECK(out.rows == ds.rows);
    CHECK_THROWS_AS(compress_domain(ds, "nope", 2), ContractError);
    CHECK_THROWS_AS(compress_domain(ds, "v", 0), ContractError);
}

TEST_CASE("compress_domain is surjective and order-preserving") {
    for (std::size_t domain : {3u, 6u, 11u, 17u}) {
        for (std::size_t max_values : {1u, 2u, 4u, 7u}) {
            CategoricalDataset out = compress_domain(one_column_values(domain), "v", max_values);
            std::set<int> seen;
            int previous = -1;
            for (std::size_t r = 0; r < domain; ++r) {
                int g = out.rows[r][0];
                CHECK(g >= previous); // order-preserving on 1-based indices
                previous = g;
                seen.insert(g);
            }
            CHECK(seen.size() == out.schema[0].domain.size()); // surjective
        }
    }
}

TEST_CASE("aggregate_low_support merges rare country values into OTHER") {
    CategoricalDataset ds = testsupport::web_sessions();
    CategoricalDataset out = aggregate_low_support(ds, "Country", 2);
    CHECK(out.schema[0].domain == std::vector<std::string>{"USA", "OTHER"});
    CHECK(out.rows[0][0] == 0);
    CHECK(out.rows[1][0] == 1); // China
    CHECK(out.rows[3][0] == 1); // Germany
}

TEST_CASE("aggregate_low_support edge cases") {
    CategoricalDataset ds = testsupport::web_sessions();
    CHECK(aggregate_low_support(ds, "Country", 0).schema[0].domain == ds.schema[0].domain);
    CategoricalDataset all = aggregate_low_support(ds, "Country", 10);
    CHECK(all.schema[0].domain == std::vector<std::string>{"OTHER"});
    CHECK_THROWS_AS(aggregate_low_support(ds, "nope", 1), ContractError);
    // row count and untouched columns preserved
    CategoricalDataset out = aggregate_low_support(ds, "Country", 2);
    CHECK(out.n_rows() == ds.n_rows());
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        CHECK(out.rows[r][1] == ds.rows[r][1]);
        CHECK(out.rows[r][2] == ds.rows[r][2]);
    }
}

TEST_CASE("binarize reproduces the web-session 0/1 matrix") {
    BinarizedData bd = testsupport::web_binarized();
    REQUIRE(bd.catalog.size() == 8);
    CHECK(bd.catalog.token(0) == "Country=USA");
    CHECK(bd.catalog.token(5) == "Browser=Internet Explorer");

    std::string matrix = dump_matrix_csv(bd);
    CHECK(matrix == "USA,China,Germany,Male,Female,Internet Explorer,Netscape,Mozilla\n"
                    "1,0,0,1,0,1,0,0\n"
                    "0,1,0,0,1,0,1,0\n"
                    "1,0,0,0,1,0,0,1\n"
                    "0,0,1,1,0,1,0,0\n");
}

TEST_CASE("binarize keeps one bit per attribute per transaction") {
    BinarizedData bd = testsupport::web_binarized();
    for (std::size_t r = 0; r < bd.db.n_rows(); ++r) {
        std::size_t bits = 0;
        for (std::size_t id = 0; id < bd.catalog.size(); ++id)
            if (bd.db.column(static_cast<ItemId>(id)).test(r)) ++bits;
        CHECK(bits == 3);
    }
    CHECK(bd.db.n_rows() == 4); // transaction count unchanged
}

TEST_CASE("binarize handles missing cells and empty datasets") {
    CategoricalDataset ds = parse_csv(std::string("a,b\nx,?\n"));
    BinarizedData bd = binarize(ds);
    REQUIRE(bd.catalog.size() == 1);
    CHECK(bd.db.column(0).test(0));

    BinarizedData empty = binarize(parse_csv(std::string("a,b\n")));
    CHECK(empty.db.n_rows() == 0);
    CHECK(empty.catalog.size() == 0);
}

TEST_CASE("binarize is deterministic over identical text") {
    BinarizedData a = binarize(parse_csv(std::string(testsupport::kWebSessionsCsv)));
    BinarizedData b = binarize(parse_csv(std::string(testsupport::kWebSessionsCsv)));
    REQUIRE(a.catalog == b.catalog);
    for (std::size_t id = 0; id < a.catalog.size(); ++id)
        CHECK(a.db.column(static_cast<ItemId>(id)) == b.db.column(static_cast<ItemId>(id)));
}

TEST_CASE("binarize drops highly frequent items when asked") {
    // Gender=Male/Female each cover half; Browser=IE covers half as well.
    BinarizedData bd = binarize(testsupport::web_sessions(), BinarizeOptions{0.4});
    for (std::size_t id = 0; id < bd.catalog.size(); ++id)
        CHECK(bd.db.column(static_cast<ItemId>(id)).count() <= 1);
    CHECK(bd.catalog.find("Gender", "Male") == -1);
    CHECK(bd.catalog.find("Country", "China") != -1);
}

TEST_CASE("binarize extends interval attributes with merged-bin items") {
    CategoricalDataset ds = parse_csv(std::string("age,town\n18,L\n19,L\n20,B\n21,L\n"));
    ds = discretize(ds, "age", {18, 20, 22});
    BinarizedData bd = binarize(ds);
    // base: two bins + two towns; derived: the merged range
    int merged = bd.catalog.find("age", "18..21");
    REQUIRE(merged >= 0);
    CHECK(bd.catalog.item(merged).is_merged());
    CHECK(bd.db.column(merged).count() == 4);
    CHECK(bd.catalog.find_range(0, 0, 1) == merged);
    // merged column is the union of its base bins
    RowBitmap expect = bd.db.column(bd.catalog.find("age", "18..19"));
    expect |= bd.db.column(bd.catalog.find("age", "20..21"));
    CHECK(bd.db.column(merged) == expect);
}
