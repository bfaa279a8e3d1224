#pragma once

#include <optional>
#include <string>

#include "mogar/dataset.hpp"
#include "mogar/transactions.hpp"

namespace mogar {

struct BinarizeOptions {
    // When set, items whose support fraction exceeds this are dropped.
    std::optional<double> drop_items_above;
};

struct BinarizedData {
    ItemCatalog catalog;
    BinaryTransactionDB db;
};

// One asymmetric binary item per (attribute, value) pair, in schema order and
// first-appearance value order, so the column layout of the source table is
// reproduced exactly. Missing cells set no bit. For interval attributes the
// catalog is extended with merged-bin items (appended after all base items).
BinarizedData binarize(const CategoricalDataset& ds, const BinarizeOptions& opts = {});

// 0/1 CSV of the base-item columns, one header line of value labels followed
// by one line per transaction.
std::string dump_matrix_csv(const BinarizedData& bd);

} // namespace mogar
