#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mogar/errors.hpp"

namespace mogar {

// Fixed-width packed bitmap over row indices. Support counting is the hot
// path of everything downstream, so columns are flat word arrays and counts
// are popcounts.
class RowBitmap {
public:
    RowBitmap() = default;
    explicit RowBitmap(std::size_t n_bits)
        : n_bits_(n_bits), words_((n_bits + 63) / 64, 0) {}

    static RowBitmap all_set(std::size_t n_bits);

    std::size_t size() const { return n_bits_; }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void clear(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::size_t count() const;
    bool any() const;

    RowBitmap& operator&=(const RowBitmap& other);
    RowBitmap& operator|=(const RowBitmap& other);
    RowBitmap& and_not(const RowBitmap& other); // this &= ~other

    std::vector<std::size_t> to_indices() const;

    bool operator==(const RowBitmap&) const = default;

private:
    std::size_t n_bits_ = 0;
    std::vector<std::uint64_t> words_;
};

using ItemId = int;

// Sorted, duplicate-free list of item ids.
using Itemset = std::vector<ItemId>;

Itemset make_itemset(std::vector<ItemId> ids); // sorts + dedupes
Itemset itemset_union(const Itemset& a, const Itemset& b);
bool itemsets_disjoint(const Itemset& a, const Itemset& b);
bool is_subset(const Itemset& sub, const Itemset& super);

struct JointCounts {
    std::size_t n_a = 0;  // rows satisfying the antecedent
    std::size_t n_c = 0;  // rows satisfying the consequent
    std::size_t n_ac = 0; // rows satisfying both
    std::size_t n = 0;    // all rows

    bool operator==(const JointCounts&) const = default;
};

// Immutable per-item column store; all queries are read-only.
class BinaryTransactionDB {
public:
    BinaryTransactionDB() = default;
    BinaryTransactionDB(std::size_t n_rows, std::size_t n_items)
        : n_rows_(n_rows), columns_(n_items, RowBitmap(n_rows)) {}

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_items() const { return columns_.size(); }

    void set(std::size_t row, ItemId item) { columns_[static_cast<std::size_t>(item)].set(row); }
    const RowBitmap& column(ItemId item) const;
    void replace_columns(std::vector<RowBitmap> columns);

private:
    std::size_t n_rows_ = 0;
    std::vector<RowBitmap> columns_;
};

// Intersection of the member items' columns; the empty itemset covers all rows.
RowBitmap cover(const BinaryTransactionDB& db, const Itemset& s);

std::size_t support_count(const BinaryTransactionDB& db, const Itemset& s);

// Antecedent and consequent must be non-empty and disjoint.
JointCounts joint_counts(const BinaryTransactionDB& db, const Itemset& antecedent,
                         const Itemset& consequent);

} // namespace mogar
