#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mogar {

// Cell marker for an absent value. Missing cells never produce items.
inline constexpr int kMissingCell = -1;

enum class AttributeKind {
    categorical,
    interval, // produced by discretize(); domain values are ordered bins
};

struct AttributeSchema {
    std::string name;
    std::vector<std::string> domain; // distinct labels, first-appearance order
    AttributeKind kind = AttributeKind::categorical;
    // For interval attributes: ascending bin edges, size = domain.size() + 1.
    std::vector<double> boundaries;
};

// Rows store one value index per schema attribute (or kMissingCell).
struct CategoricalDataset {
    std::vector<AttributeSchema> schema;
    std::vector<std::vector<int>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_attributes() const { return schema.size(); }
    int attribute_index(const std::string& name) const; // -1 if absent
};

struct CsvOptions {
    char delimiter = ',';
    std::string missing_token = "?";
};

// First row is a mandatory header of attribute names; the body must be
// rectangular. Domain order is first appearance per column.
CategoricalDataset parse_csv(std::istream& in, const CsvOptions& opts = {});
CategoricalDataset parse_csv(const std::string& text, const CsvOptions& opts = {});
CategoricalDataset parse_csv_file(const std::string& path, const CsvOptions& opts = {});

// Replace a numeric column by half-open bins [b_i, b_{i+1}) taken from the
// strictly increasing boundary list. Values outside [first, last) are errors.
CategoricalDataset discretize(const CategoricalDataset& ds, const std::string& attr,
                              const std::vector<double>& boundaries);

// Shrink a domain to at most max_values grouped labels. With c =
// ceil(|D| / max_values), 1-based value index i maps to group
// floor((i - 1) / c) + 1; groups therefore cover consecutive index blocks.
CategoricalDataset compress_domain(const CategoricalDataset& ds, const std::string& attr,
                                   std::size_t max_values);

// Merge every value occurring in fewer than min_count rows into one
// synthetic OTHER value. min_count = 0 leaves the dataset unchanged.
CategoricalDataset aggregate_low_support(const CategoricalDataset& ds, const std::string& attr,
                                         std::size_t min_count);

// Remove one column (used by loaders for identifier columns).
CategoricalDataset drop_column(const CategoricalDataset& ds, std::size_t index);

// One binarized item. Base items correspond to a single (attribute, value)
// pair: bin_lo == bin_hi == value index. For interval attributes the catalog
// additionally carries merged-bin items with bin_lo < bin_hi, whose column is
// the union of the member bins; those let rule conditions widen or narrow an
// interval without leaving the catalog.
struct CatalogItem {
    std::string attribute;
    std::string value;
    int attr_index = 0;
    int bin_lo = 0;
    int bin_hi = 0;

    bool is_merged() const { return bin_lo != bin_hi; }
    bool operator==(const CatalogItem&) const = default;
};

class ItemCatalog {
public:
    ItemCatalog() = default;

    int add(CatalogItem item); // returns new dense id
    std::size_t size() const { return items_.size(); }
    const CatalogItem& item(int id) const { return items_.at(static_cast<std::size_t>(id)); }
    const std::vector<CatalogItem>& items() const { return items_; }

    // -1 when the pair is not in the catalog.
    int find(const std::string& attribute, const std::string& value) const;
    int find_range(int attr_index, int bin_lo, int bin_hi) const;

    const std::vector<int>& items_of_attribute(int attr_index) const;
    std::size_t n_attributes() const { return by_attribute_.size(); }
    const std::string& attribute_name(int attr_index) const;
    AttributeKind attribute_kind(int attr_index) const;
    int attribute_bins(int attr_index) const; // base-value count

    void set_attribute_info(std::vector<std::string> names, std::vector<AttributeKind> kinds,
                            std::vector<int> bins);

    // "attribute=value", the token format used by all text interfaces.
    std::string token(int id) const;
    int parse_token(const std::string& token) const; // -1 if unknown

    bool operator==(const ItemCatalog& other) const { return items_ == other.items_; }

private:
    std::vector<CatalogItem> items_;
    std::map<std::pair<std::string, std::string>, int> by_pair_;
    std::vector<std::vector<int>> by_attribute_;
    std::vector<std::string> attr_names_;
    std::vector<AttributeKind> attr_kinds_;
    std::vector<int> attr_bins_;
};

// Shared label helpers (discretize and compress_domain both build bin labels).
std::string format_number(double v);
std::string interval_label(double lo, double hi);

} // namespace mogar
