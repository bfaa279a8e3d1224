#include "mogar/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

#include "mogar/errors.hpp"

namespace mogar {

int CategoricalDataset::attribute_index(const std::string& name) const {
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (schema[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == delimiter) {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

int require_attribute(const CategoricalDataset& ds, const std::string& attr) {
    int idx = ds.attribute_index(attr);
    if (idx < 0) throw ContractError("attribute not found: " + attr);
    return idx;
}

} // namespace

CategoricalDataset parse_csv(std::istream& in, const CsvOptions& opts) {
    CategoricalDataset ds;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty input: no header row");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty()) throw ParseError("empty header row");

    std::vector<std::string> header = split_line(line, opts.delimiter);
    for (const auto& name : header) {
        for (const auto& attr : ds.schema)
            if (attr.name == name) throw ParseError("duplicate attribute name: " + name);
        ds.schema.push_back(AttributeSchema{name, {}, AttributeKind::categorical, {}});
    }

    std::vector<std::map<std::string, int>> value_index(header.size());
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break; // trailing newline
        std::vector<std::string> cells = split_line(line, opts.delimiter);
        if (cells.size() != header.size())
            throw ParseError("row " + std::to_string(line_no) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(header.size()));
        std::vector<int> row(header.size());
        for (std::size_t a = 0; a < cells.size(); ++a) {
            if (cells[a] == opts.missing_token) {
                row[a] = kMissingCell;
                continue;
            }
            auto [it, inserted] =
                value_index[a].try_emplace(cells[a], static_cast<int>(ds.schema[a].domain.size()));
            if (inserted) ds.schema[a].domain.push_back(cells[a]);
            row[a] = it->second;
        }
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

CategoricalDataset parse_csv(const std::string& text, const CsvOptions& opts) {
    std::istringstream in(text);
    return parse_csv(in, opts);
}

CategoricalDataset parse_csv_file(const std::string& path, const CsvOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file: " + path);
    return parse_csv(in, opts);
}

std::string format_number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15)
        return std::to_string(static_cast<long long>(v));
    std::ostringstream out;
    out << v;
    return out.str();
}

std::string interval_label(double lo, double hi) {
    // Integer edges read as inclusive ranges: [18, 20) becomes "18..19".
    if (lo == std::floor(lo) && hi == std::floor(hi))
        return format_number(lo) + ".." + format_number(hi - 1);
    return "[" + format_number(lo) + ".." + format_number(hi) + ")";
}

CategoricalDataset discretize(const CategoricalDataset& ds, const std::string& attr,
                              const std::vector<double>& boundaries) {
    int idx = require_attribute(ds, attr);
    if (boundaries.size() < 2) throw ContractError("discretize needs at least two boundaries");
    for (std::size_t i = 1; i < boundaries.size(); ++i)
        if (!(boundaries[i - 1] < boundaries[i]))
            throw ContractError("boundaries must be strictly increasing");

    // Parse each distinct label once; values bin by half-open interval.
    const AttributeSchema& old_schema = ds.schema[static_cast<std::size_t>(idx)];
    std::vector<int> label_bin(old_schema.domain.size(), kMissingCell);
    auto bin_of = [&](double v) -> int {
        if (v < boundaries.front() || v >= boundaries.back()) return -2;
        auto it = std::upper_bound(boundaries.begin(), boundaries.end(), v);
        return static_cast<int>(it - boundaries.begin()) - 1;
    };
    for (std::size_t li = 0; li < old_schema.domain.size(); ++li) {
        const std::string& label = old_schema.domain[li];
        double v = 0.0;
        auto res = std::from_chars(label.data(), label.data() + label.size(), v);
        if (res.ec != std::errc{} || res.ptr != label.data() + label.size()) {
            // report the first row carrying the bad label
            for (std::size_t r = 0; r < ds.rows.size(); ++r)
                if (ds.rows[r][static_cast<std::size_t>(idx)] == static_cast<int>(li))
                    throw ParseError("non-numeric value '" + label + "' in column " + attr +
                                     ", row " + std::to_string(r + 1));
            throw ParseError("non-numeric value '" + label + "' in column " + attr);
        }
        label_bin[li] = bin_of(v);
        if (label_bin[li] == -2) {
            for (std::size_t r = 0; r < ds.rows.size(); ++r)
                if (ds.rows[r][static_cast<std::size_t>(idx)] == static_cast<int>(li))
                    throw ParseError("value " + label + " in column " + attr + ", row " +
                                     std::to_string(r + 1) + " lies outside the boundary span");
            throw ParseError("value " + label + " in column " + attr +
                             " lies outside the boundary span");
        }
    }

    CategoricalDataset out = ds;
    AttributeSchema& ns = out.schema[static_cast<std::size_t>(idx)];
    ns.kind = AttributeKind::interval;
    ns.boundaries = boundaries;
    ns.domain.clear();
    for (std::size_t b = 0; b + 1 < boundaries.size(); ++b)
        ns.domain.push_back(interval_label(boundaries[b], boundaries[b + 1]));
    for (auto& row : out.rows) {
        int& cell = row[static_cast<std::size_t>(idx)];
        if (cell != kMissingCell) cell = label_bin[static_cast<std::size_t>(cell)];
    }
    return out;
}

CategoricalDataset compress_domain(const CategoricalDataset& ds, const std::string& attr,
                                   std::size_t max_values) {
    int idx = require_attribute(ds, attr);
    if (max_values < 1) throw ContractError("max_values must be >= 1");

    const AttributeSchema& old_schema = ds.schema[static_cast<std::size_t>(idx)];
    std::size_t domain_size = old_schema.domain.size();
    if (domain_size <= max_values) return ds; // identity

    std::size_t group_width = (domain_size + max_values - 1) / max_values;
    std::size_t n_groups = (domain_size + group_width - 1) / group_width;

    CategoricalDataset out = ds;
    AttributeSchema& ns = out.schema[static_cast<std::size_t>(idx)];
    ns.domain.clear();
    if (old_schema.kind == AttributeKind::interval) {
        // Groups are runs of adjacent bins: merge their edges.
        std::vector<double> edges;
        for (std::size_t b = 0; b < old_schema.boundaries.size(); b += group_width)
            edges.push_back(old_schema.boundaries[b]);
        if (edges.back() != old_schema.boundaries.back())
            edges.push_back(old_schema.boundaries.back());
        ns.boundaries = edges;
        for (std::size_t g = 0; g + 1 < edges.size(); ++g)
            ns.domain.push_back(interval_label(edges[g], edges[g + 1]));
    } else {
        for (std::size_t g = 0; g < n_groups; ++g) {
            std::string label;
            for (std::size_t v = g * group_width;
                 v < std::min(domain_size, (g + 1) * group_width); ++v) {
                if (!label.empty()) label += "|";
                label += old_schema.domain[v];
            }
            ns.domain.push_back(label);
        }
    }
    for (auto& row : out.rows) {
        int& cell = row[static_cast<std::size_t>(idx)];
        if (cell != kMissingCell) cell = static_cast<int>(static_cast<std::size_t>(cell) / group_width);
    }
    return out;
}

CategoricalDataset aggregate_low_support(const CategoricalDataset& ds, const std::string& attr,
                                         std::size_t min_count) {
    int idx = require_attribute(ds, attr);
    if (min_count == 0) return ds;

    const AttributeSchema& old_schema = ds.schema[static_cast<std::size_t>(idx)];
    std::vector<std::size_t> counts(old_schema.domain.size(), 0);
    for (const auto& row : ds.rows) {
        int cell = row[static_cast<std::size_t>(idx)];
        if (cell != kMissingCell) counts[static_cast<std::size_t>(cell)]++;
    }

    std::vector<bool> merged(counts.size());
    bool any_merged = false;
    for (std::size_t v = 0; v < counts.size(); ++v) {
        merged[v] = counts[v] < min_count;
        any_merged = any_merged || merged[v];
    }
    if (!any_merged) return ds;

    CategoricalDataset out = ds;
    AttributeSchema& ns = out.schema[static_cast<std::size_t>(idx)];
    ns.domain.clear();
    std::vector<int> remap(counts.size());
    for (std::size_t v = 0; v < counts.size(); ++v) {
        if (merged[v]) continue;
        remap[v] = static_cast<int>(ns.domain.size());
        ns.domain.push_back(old_schema.domain[v]);
    }
    std::string other = "OTHER";
    while (std::find(ns.domain.begin(), ns.domain.end(), other) != ns.domain.end())
        other += "_";
    int other_id = static_cast<int>(ns.domain.size());
    ns.domain.push_back(other);
    for (std::size_t v = 0; v < counts.size(); ++v)
        if (merged[v]) remap[v] = other_id;
    // Merged bins are no longer contiguous intervals.
    if (ns.kind == AttributeKind::interval) {
        ns.kind = AttributeKind::categorical;
        ns.boundaries.clear();
    }
    for (auto& row : out.rows) {
        int& cell = row[static_cast<std::size_t>(idx)];
        if (cell != kMissingCell) cell = remap[static_cast<std::size_t>(cell)];
    }
    return out;
}

CategoricalDataset drop_column(const CategoricalDataset& ds, std::size_t index) {
    if (index >= ds.schema.size()) throw ContractError("drop_column: index out of range");
    CategoricalDataset out;
    out.schema = ds.schema;
    out.schema.erase(out.schema.begin() + static_cast<std::ptrdiff_t>(index));
    out.rows.reserve(ds.rows.size());
    for (const auto& row : ds.rows) {
        std::vector<int> r = row;
        r.erase(r.begin() + static_cast<std::ptrdiff_t>(index));
        out.rows.push_back(std::move(r));
    }
    return out;
}

int ItemCatalog::add(CatalogItem item) {
    int id = static_cast<int>(items_.size());
    by_pair_.emplace(std::make_pair(item.attribute, item.value), id);
    if (static_cast<std::size_t>(item.attr_index) >= by_attribute_.size())
        by_attribute_.resize(static_cast<std::size_t>(item.attr_index) + 1);
    by_attribute_[static_cast<std::size_t>(item.attr_index)].push_back(id);
    items_.push_back(std::move(item));
    return id;
}

int ItemCatalog::find(const std::string& attribute, const std::string& value) const {
    auto it = by_pair_.find(std::make_pair(attribute, value));
    return it == by_pair_.end() ? -1 : it->second;
}

int ItemCatalog::find_range(int attr_index, int bin_lo, int bin_hi) const {
    for (int id : items_of_attribute(attr_index)) {
        const CatalogItem& it = items_[static_cast<std::size_t>(id)];
        if (it.bin_lo == bin_lo && it.bin_hi == bin_hi) return id;
    }
    return -1;
}

const std::vector<int>& ItemCatalog::items_of_attribute(int attr_index) const {
    static const std::vector<int> empty;
    if (attr_index < 0 || static_cast<std::size_t>(attr_index) >= by_attribute_.size())
        return empty;
    return by_attribute_[static_cast<std::size_t>(attr_index)];
}

const std::string& ItemCatalog::attribute_name(int attr_index) const {
    return attr_names_.at(static_cast<std::size_t>(attr_index));
}

AttributeKind ItemCatalog::attribute_kind(int attr_index) const {
    return attr_kinds_.at(static_cast<std::size_t>(attr_index));
}

int ItemCatalog::attribute_bins(int attr_index) const {
    return attr_bins_.at(static_cast<std::size_t>(attr_index));
}

void ItemCatalog::set_attribute_info(std::vector<std::string> names,
                                     std::vector<AttributeKind> kinds, std::vector<int> bins) {
    attr_names_ = std::move(names);
    attr_kinds_ = std::move(kinds);
    attr_bins_ = std::move(bins);
    if (by_attribute_.size() < attr_names_.size()) by_attribute_.resize(attr_names_.size());
}

std::string ItemCatalog::token(int id) const {
    const CatalogItem& it = item(id);
    return it.attribute + "=" + it.value;
}

int ItemCatalog::parse_token(const std::string& token) const {
    auto pos = token.find('=');
    if (pos == std::string::npos) return -1;
    return find(token.substr(0, pos), token.substr(pos + 1));
}

} // namespace mogar
