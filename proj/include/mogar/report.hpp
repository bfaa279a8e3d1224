#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mogar/ga.hpp"
#include "mogar/oracle.hpp"

namespace mogar {

enum class OutputFormat { table, csv, json };
OutputFormat parse_format(const std::string& name); // throws ContractError

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

// Everything needed to reproduce a run byte for byte. Deliberately carries no
// timestamps or host data.
struct RunManifest {
    std::string command;
    std::string input_path;
    std::string input_hash; // fnv1a64 of the raw input bytes, hex
    std::vector<std::string> preprocessing; // applied directives, in order
    double minsup = 0.1;
    std::size_t max_itemset_size = 0;
    GAConfig ga;
    std::string catalog_hash; // fnv1a64 over the item token list, hex
    std::size_t top_k = 0;

    bool operator==(const RunManifest&) const = default;
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

// One reported rule; the serialized form uses attribute=value tokens so that
// files stay meaningful without the catalog at hand.
struct ReportRow {
    std::vector<std::string> antecedent;
    std::vector<std::string> consequent;
    RuleMetrics metrics;

    bool operator==(const ReportRow&) const = default;
};

ReportRow to_report_row(const ArchiveEntry& e, const ItemCatalog& catalog);

nlohmann::json to_json(const ReportRow& r);
ReportRow report_row_from_json(const nlohmann::json& j);

std::string emit_report_csv(const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_report_csv(const std::string& text);

nlohmann::json report_to_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> report_from_json(const nlohmann::json& j);

// Human-readable listing; CF and completeness also shown as percentages.
std::string render_report_table(const std::vector<ReportRow>& rows);

// Archive document: manifest + every archived rule (in archive order).
nlohmann::json archive_to_json(const ParetoArchive& archive, const ItemCatalog& catalog,
                               const RunManifest& manifest);

struct LoadedArchive {
    RunManifest manifest;
    std::vector<ReportRow> rows;
};
LoadedArchive archive_from_json(const nlohmann::json& j);

// Map token-form rules back onto a catalog. Unknown tokens are a catalog
// mismatch and throw ContractError.
std::vector<ArchiveEntry> bind_rows_to_catalog(const std::vector<ReportRow>& rows,
                                               const ItemCatalog& catalog);

nlohmann::json front_report_to_json(const FrontReport& report, const ItemCatalog& catalog);

} // namespace mogar
