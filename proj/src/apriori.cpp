#include "mogar/apriori.hpp"

#include <algorithm>
#include <sstream>

#include "mogar/errors.hpp"

namespace mogar {

std::vector<Itemset> generate_candidates(const std::vector<Itemset>& level) {
    if (level.empty()) return {};
    std::size_t k = level.front().size();
    for (const Itemset& s : level) {
        if (s.size() != k) throw ContractError("generate_candidates: mixed cardinalities");
        if (!std::is_sorted(s.begin(), s.end()))
            throw ContractError("generate_candidates: unsorted itemset");
    }

    std::vector<Itemset> sorted = level;
    std::sort(sorted.begin(), sorted.end());

    std::vector<Itemset> candidates;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            // join step: equal (k-1)-prefix, distinct last items
            if (!std::equal(sorted[i].begin(), sorted[i].end() - 1, sorted[j].begin(),
                            sorted[j].end() - 1))
                break; // sorted order: once the prefix changes it never matches again
            Itemset cand = sorted[i];
            cand.push_back(sorted[j].back());

            // prune step: every k-subset must be frequent
            bool keep = true;
            Itemset subset(cand.size() - 1);
            for (std::size_t drop = 0; keep && drop < cand.size(); ++drop) {
                subset.clear();
                for (std::size_t m = 0; m < cand.size(); ++m)
                    if (m != drop) subset.push_back(cand[m]);
                keep = std::binary_search(sorted.begin(), sorted.end(), subset);
            }
            if (keep) candidates.push_back(std::move(cand));
        }
    }
    return candidates;
}

std::vector<FrequentItemset> mine_frequent(const BinaryTransactionDB& db, double minsup,
                                           std::size_t max_length) {
    if (db.n_rows() == 0) throw ContractError("mine_frequent: empty transaction database");
    if (!(minsup > 0.0) || minsup > 1.0) throw ContractError("minsup must be in (0, 1]");

    double n = static_cast<double>(db.n_rows());
    auto frequent_enough = [&](std::size_t count) {
        return static_cast<double>(count) / n >= minsup;
    };

    std::vector<FrequentItemset> result;
    std::vector<Itemset> current;
    for (ItemId item = 0; item < static_cast<ItemId>(db.n_items()); ++item) {
        std::size_t count = db.column(item).count();
        if (frequent_enough(count)) {
            result.push_back({Itemset{item}, count, static_cast<double>(count) / n});
            current.push_back(Itemset{item});
        }
    }

    std::size_t k = 1;
    while (!current.empty() && (max_length == 0 || k < max_length)) {
        std::vector<Itemset> next;
        for (Itemset& cand : generate_candidates(current)) {
            std::size_t count = support_count(db, cand);
            if (frequent_enough(count)) {
                result.push_back({cand, count, static_cast<double>(count) / n});
                next.push_back(std::move(cand));
            }
        }
        current = std::move(next);
        ++k;
    }

    std::sort(result.begin(), result.end(), [](const FrequentItemset& a, const FrequentItemset& b) {
        if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
        return a.items < b.items;
    });
    return result;
}

std::string dump_frequent(const std::vector<FrequentItemset>& sets, const ItemCatalog& catalog) {
    std::ostringstream out;
    for (const FrequentItemset& fs : sets) {
        for (std::size_t i = 0; i < fs.items.size(); ++i) {
            if (i) out << ",";
            out << catalog.token(fs.items[i]);
        }
        out << "\t" << fs.support_count << "\t" << fs.support_fraction << "\n";
    }
    return out.str();
}

} // namespace mogar
