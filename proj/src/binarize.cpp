#include "mogar/binarize.hpp"

namespace mogar {

BinarizedData binarize(const CategoricalDataset& ds, const BinarizeOptions& opts) {
    ItemCatalog catalog;
    std::vector<std::string> names;
    std::vector<AttributeKind> kinds;
    std::vector<int> bins;
    for (std::size_t a = 0; a < ds.schema.size(); ++a) {
        names.push_back(ds.schema[a].name);
        kinds.push_back(ds.schema[a].kind);
        bins.push_back(static_cast<int>(ds.schema[a].domain.size()));
    }
    catalog.set_attribute_info(names, kinds, bins);

    // Base items first, in schema and value order, so the 0/1 matrix mirrors
    // the source table column for column.
    for (std::size_t a = 0; a < ds.schema.size(); ++a)
        for (std::size_t v = 0; v < ds.schema[a].domain.size(); ++v)
            catalog.add(CatalogItem{ds.schema[a].name, ds.schema[a].domain[v],
                                    static_cast<int>(a), static_cast<int>(v),
                                    static_cast<int>(v)});
    std::size_t n_base = catalog.size();

    // Merged-bin items for interval attributes (all wider contiguous runs).
    for (std::size_t a = 0; a < ds.schema.size(); ++a) {
        const AttributeSchema& s = ds.schema[a];
        if (s.kind != AttributeKind::interval) continue;
        int k = static_cast<int>(s.domain.size());
        for (int lo = 0; lo < k; ++lo)
            for (int hi = lo + 1; hi < k; ++hi)
                catalog.add(CatalogItem{
                    s.name, interval_label(s.boundaries[static_cast<std::size_t>(lo)],
                                           s.boundaries[static_cast<std::size_t>(hi) + 1]),
                    static_cast<int>(a), lo, hi});
    }

    BinaryTransactionDB db(ds.n_rows(), catalog.size());
    for (std::size_t r = 0; r < ds.rows.size(); ++r) {
        int base = 0;
        for (std::size_t a = 0; a < ds.schema.size(); ++a) {
            int cell = ds.rows[r][a];
            if (cell != kMissingCell) db.set(r, base + cell);
            base += static_cast<int>(ds.schema[a].domain.size());
        }
    }
    for (std::size_t id = n_base; id < catalog.size(); ++id) {
        const CatalogItem& it = catalog.item(static_cast<int>(id));
        for (std::size_t r = 0; r < ds.rows.size(); ++r) {
            int cell = ds.rows[r][static_cast<std::size_t>(it.attr_index)];
            if (cell != kMissingCell && cell >= it.bin_lo && cell <= it.bin_hi)
                db.set(r, static_cast<ItemId>(id));
        }
    }

    if (opts.drop_items_above && ds.n_rows() > 0) {
        double limit = *opts.drop_items_above;
        ItemCatalog kept;
        kept.set_attribute_info(names, kinds, bins);
        std::vector<RowBitmap> columns;
        for (std::size_t id = 0; id < catalog.size(); ++id) {
            double fraction = static_cast<double>(db.column(static_cast<ItemId>(id)).count()) /
                              static_cast<double>(ds.n_rows());
            if (fraction > limit) continue;
            kept.add(catalog.item(static_cast<int>(id)));
            columns.push_back(db.column(static_cast<ItemId>(id)));
        }
        BinaryTransactionDB filtered(ds.n_rows(), 0);
        filtered.replace_columns(std::move(columns));
        return BinarizedData{std::move(kept), std::move(filtered)};
    }

    return BinarizedData{std::move(catalog), std::move(db)};
}

std::string dump_matrix_csv(const BinarizedData& bd) {
    std::string out;
    std::size_t n_cols = 0;
    for (const CatalogItem& it : bd.catalog.items()) {
        if (it.is_merged()) continue;
        if (n_cols) out += ",";
        out += it.value;
        ++n_cols;
    }
    out += "\n";
    for (std::size_t r = 0; r < bd.db.n_rows(); ++r) {
        std::size_t col = 0;
        for (std::size_t id = 0; id < bd.catalog.size(); ++id) {
            if (bd.catalog.item(static_cast<int>(id)).is_merged()) continue;
            if (col) out += ",";
            out += bd.db.column(static_cast<ItemId>(id)).test(r) ? "1" : "0";
            ++col;
        }
        out += "\n";
    }
    return out;
}

} // namespace mogar
