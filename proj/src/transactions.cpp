#include "mogar/transactions.hpp"

#include <algorithm>
#include <bit>

namespace mogar {

RowBitmap RowBitmap::all_set(std::size_t n_bits) {
    RowBitmap b(n_bits);
    for (auto& w : b.words_) w = ~std::uint64_t{0};
    if (n_bits & 63) b.words_.back() = (std::uint64_t{1} << (n_bits & 63)) - 1;
    if (n_bits == 0) b.words_.clear();
    return b;
}

std::size_t RowBitmap::count() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool RowBitmap::any() const {
    for (std::uint64_t w : words_)
        if (w) return true;
    return false;
}

RowBitmap& RowBitmap::operator&=(const RowBitmap& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

RowBitmap& RowBitmap::operator|=(const RowBitmap& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

RowBitmap& RowBitmap::and_not(const RowBitmap& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
}

std::vector<std::size_t> RowBitmap::to_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
        std::uint64_t w = words_[wi];
        while (w) {
            out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

Itemset make_itemset(std::vector<ItemId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

Itemset itemset_union(const Itemset& a, const Itemset& b) {
    Itemset out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool itemsets_disjoint(const Itemset& a, const Itemset& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return true;
}

bool is_subset(const Itemset& sub, const Itemset& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

const RowBitmap& BinaryTransactionDB::column(ItemId item) const {
    if (item < 0 || static_cast<std::size_t>(item) >= columns_.size())
        throw ContractError("unknown item id: " + std::to_string(item));
    return columns_[static_cast<std::size_t>(item)];
}

void BinaryTransactionDB::replace_columns(std::vector<RowBitmap> columns) {
    columns_ = std::move(columns);
}

RowBitmap cover(const BinaryTransactionDB& db, const Itemset& s) {
    RowBitmap rows = RowBitmap::all_set(db.n_rows());
    for (ItemId item : s) rows &= db.column(item);
    return rows;
}

std::size_t support_count(const BinaryTransactionDB& db, const Itemset& s) {
    return cover(db, s).count();
}

JointCounts joint_counts(const BinaryTransactionDB& db, const Itemset& antecedent,
                         const Itemset& consequent) {
    if (antecedent.empty() || consequent.empty())
        throw ContractError("joint_counts requires non-empty antecedent and consequent");
    if (!itemsets_disjoint(antecedent, consequent))
        throw ContractError("joint_counts requires disjoint antecedent and consequent");
    JointCounts c;
    c.n = db.n_rows();
    c.n_a = support_count(db, antecedent);
    c.n_c = support_count(db, consequent);
    c.n_ac = support_count(db, itemset_union(antecedent, consequent));
    return c;
}

} // namespace mogar
