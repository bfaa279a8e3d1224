#pragma once

#include <string>
#include <vector>

#include "mogar/dataset.hpp"
#include "mogar/transactions.hpp"

namespace mogar {

struct FrequentItemset {
    Itemset items;
    std::size_t support_count = 0;
    double support_fraction = 0.0;
};

// Join itemsets of equal cardinality k sharing a (k-1)-prefix, then prune
// candidates having an infrequent k-subset. Inputs must be sorted itemsets of
// one cardinality.
std::vector<Itemset> generate_candidates(const std::vector<Itemset>& level);

// Classic levelwise Apriori. Returns exactly the itemsets whose support
// fraction is >= minsup (inclusive), sorted by (cardinality, item ids), with
// every subset of every result also present. max_length = 0 means unbounded.
std::vector<FrequentItemset> mine_frequent(const BinaryTransactionDB& db, double minsup,
                                           std::size_t max_length = 0);

// One itemset per line: comma-joined attribute=value tokens, tab, support
// count, tab, support fraction.
std::string dump_frequent(const std::vector<FrequentItemset>& sets, const ItemCatalog& catalog);

} // namespace mogar
