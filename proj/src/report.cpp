#include "mogar/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "mogar/errors.hpp"

namespace mogar {

OutputFormat parse_format(const std::string& name) {
    if (name == "table") return OutputFormat::table;
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ContractError("unknown format: " + name + " (expected table, csv or json)");
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

namespace {

std::string variant_name(ComprehensibilityVariant v) {
    return v == ComprehensibilityVariant::attribute_count ? "attribute-count" : "eq4";
}

ComprehensibilityVariant variant_from_name(const std::string& s) {
    if (s == "eq4") return ComprehensibilityVariant::eq4;
    if (s == "attribute-count") return ComprehensibilityVariant::attribute_count;
    throw ContractError("unknown comprehensibility variant: " + s);
}

// Shortest decimal form that parses back to the same double.
std::string double_repr(double v) {
    for (int precision = 15; precision <= 17; ++precision) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return "0";
}

} // namespace

nlohmann::json to_json(const RunManifest& m) {
    return nlohmann::json{
        {"command", m.command},
        {"input_path", m.input_path},
        {"input_hash", m.input_hash},
        {"preprocessing", m.preprocessing},
        {"minsup", m.minsup},
        {"max_itemset_size", m.max_itemset_size},
        {"ga",
         {{"population_size", m.ga.population_size},
          {"mutation_rate", m.ga.mutation_rate},
          {"crossover_rate", m.ga.crossover_rate},
          {"min_generations", m.ga.min_generations},
          {"stall_generations", m.ga.stall_generations},
          {"rng_seed", m.ga.rng_seed},
          {"max_rule_items", m.ga.max_rule_items},
          {"specialize_generalize_probability", m.ga.specialize_generalize_probability},
          {"comprehensibility_variant", variant_name(m.ga.comprehensibility)},
          {"archive_capacity", m.ga.archive_capacity}}},
        {"catalog_hash", m.catalog_hash},
        {"top_k", m.top_k}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.input_path = j.at("input_path").get<std::string>();
    m.input_hash = j.at("input_hash").get<std::string>();
    m.preprocessing = j.at("preprocessing").get<std::vector<std::string>>();
    m.minsup = j.at("minsup").get<double>();
    m.max_itemset_size = j.at("max_itemset_size").get<std::size_t>();
    const auto& g = j.at("ga");
    m.ga.population_size = g.at("population_size").get<std::size_t>();
    m.ga.mutation_rate = g.at("mutation_rate").get<double>();
    m.ga.crossover_rate = g.at("crossover_rate").get<double>();
    m.ga.min_generations = g.at("min_generations").get<std::size_t>();
    m.ga.stall_generations = g.at("stall_generations").get<std::size_t>();
    m.ga.rng_seed = g.at("rng_seed").get<std::uint64_t>();
    m.ga.max_rule_items = g.at("max_rule_items").get<std::size_t>();
    m.ga.specialize_generalize_probability =
        g.at("specialize_generalize_probability").get<double>();
    m.ga.comprehensibility = variant_from_name(g.at("comprehensibility_variant").get<std::string>());
    m.ga.archive_capacity = g.at("archive_capacity").get<std::size_t>();
    m.catalog_hash = j.at("catalog_hash").get<std::string>();
    m.top_k = j.at("top_k").get<std::size_t>();
    return m;
}

ReportRow to_report_row(const ArchiveEntry& e, const ItemCatalog& catalog) {
    ReportRow row;
    for (ItemId id : e.rule.antecedent) row.antecedent.push_back(catalog.token(id));
    for (ItemId id : e.rule.consequent) row.consequent.push_back(catalog.token(id));
    row.metrics = e.metrics;
    return row;
}

nlohmann::json to_json(const ReportRow& r) {
    return nlohmann::json{{"antecedent", r.antecedent},
                          {"consequent", r.consequent},
                          {"cf", r.metrics.cf},
                          {"completeness", r.metrics.completeness},
                          {"interestingness", r.metrics.interestingness},
                          {"comprehensibility", r.metrics.comprehensibility},
                          {"n_a", r.metrics.counts.n_a},
                          {"n_c", r.metrics.counts.n_c},
                          {"n_ac", r.metrics.counts.n_ac},
                          {"n", r.metrics.counts.n}};
}

ReportRow report_row_from_json(const nlohmann::json& j) {
    ReportRow r;
    r.antecedent = j.at("antecedent").get<std::vector<std::string>>();
    r.consequent = j.at("consequent").get<std::vector<std::string>>();
    r.metrics.cf = j.at("cf").get<double>();
    r.metrics.completeness = j.at("completeness").get<double>();
    r.metrics.interestingness = j.at("interestingness").get<double>();
    r.metrics.comprehensibility = j.at("comprehensibility").get<double>();
    r.metrics.counts.n_a = j.at("n_a").get<std::size_t>();
    r.metrics.counts.n_c = j.at("n_c").get<std::size_t>();
    r.metrics.counts.n_ac = j.at("n_ac").get<std::size_t>();
    r.metrics.counts.n = j.at("n").get<std::size_t>();
    r.metrics.feasible = r.metrics.counts.n_a > 0 && r.metrics.counts.n_c > 0 &&
                         r.metrics.counts.n_ac > 0 && r.metrics.counts.n > 0;
    return r;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += " & ";
        out += tokens[i];
    }
    return out;
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(" & ", pos);
        if (next == std::string::npos) {
            if (!s.empty()) out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 3;
    }
}

} // namespace

std::string emit_report_csv(const std::vector<ReportRow>& rows) {
    std::string out =
        "antecedent,consequent,cf,completeness,interestingness,comprehensibility,n_a,n_c,n_ac,n\n";
    for (const ReportRow& r : rows) {
        out += csv_quote(join_tokens(r.antecedent)) + "," + csv_quote(join_tokens(r.consequent));
        out += "," + double_repr(r.metrics.cf);
        out += "," + double_repr(r.metrics.completeness);
        out += "," + double_repr(r.metrics.interestingness);
        out += "," + double_repr(r.metrics.comprehensibility);
        out += "," + std::to_string(r.metrics.counts.n_a);
        out += "," + std::to_string(r.metrics.counts.n_c);
        out += "," + std::to_string(r.metrics.counts.n_ac);
        out += "," + std::to_string(r.metrics.counts.n);
        out += "\n";
    }
    return out;
}

std::vector<ReportRow> parse_report_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty report");
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = csv_split(line);
        if (cells.size() != 10)
            throw ParseError("report row has " + std::to_string(cells.size()) +
                             " cells, expected 10");
        ReportRow r;
        r.antecedent = split_tokens(cells[0]);
        r.consequent = split_tokens(cells[1]);
        r.metrics.cf = std::strtod(cells[2].c_str(), nullptr);
        r.metrics.completeness = std::strtod(cells[3].c_str(), nullptr);
        r.metrics.interestingness = std::strtod(cells[4].c_str(), nullptr);
        r.metrics.comprehensibility = std::strtod(cells[5].c_str(), nullptr);
        r.metrics.counts.n_a = std::strtoull(cells[6].c_str(), nullptr, 10);
        r.metrics.counts.n_c = std::strtoull(cells[7].c_str(), nullptr, 10);
        r.metrics.counts.n_ac = std::strtoull(cells[8].c_str(), nullptr, 10);
        r.metrics.counts.n = std::strtoull(cells[9].c_str(), nullptr, 10);
        r.metrics.feasible = r.metrics.counts.n_a > 0 && r.metrics.counts.n_c > 0 &&
                             r.metrics.counts.n_ac > 0 && r.metrics.counts.n > 0;
        rows.push_back(std::move(r));
    }
    return rows;
}

nlohmann::json report_to_json(const std::vector<ReportRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ReportRow& r : rows) arr.push_back(to_json(r));
    return nlohmann::json{{"rules", arr}};
}

std::vector<ReportRow> report_from_json(const nlohmann::json& j) {
    std::vector<ReportRow> rows;
    for (const auto& rj : j.at("rules")) rows.push_back(report_row_from_json(rj));
    return rows;
}

std::string render_report_table(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << "rule                                         cf           completeness   "
           "interestingness  comprehensibility  n_a  n_c  n_ac  n\n";
    char buf[256];
    for (const ReportRow& r : rows) {
        std::string rule = join_tokens(r.antecedent) + " => " + join_tokens(r.consequent);
        std::snprintf(buf, sizeof buf, "%-44s %.4f (%5.1f%%) %.4f (%5.1f%%) %15.4f  %17.4f %4zu %4zu %5zu %2zu\n",
                      rule.c_str(), r.metrics.cf, 100.0 * r.metrics.cf, r.metrics.completeness,
                      100.0 * r.metrics.completeness, r.metrics.interestingness,
                      r.metrics.comprehensibility, r.metrics.counts.n_a, r.metrics.counts.n_c,
                      r.metrics.counts.n_ac, r.metrics.counts.n);
        out << buf;
    }
    return out.str();
}

nlohmann::json archive_to_json(const ParetoArchive& archive, const ItemCatalog& catalog,
                               const RunManifest& manifest) {
    nlohmann::json rules = nlohmann::json::array();
    for (const ArchiveEntry& e : archive.entries())
        rules.push_back(to_json(to_report_row(e, catalog)));
    return nlohmann::json{{"manifest", to_json(manifest)}, {"rules", rules}};
}

LoadedArchive archive_from_json(const nlohmann::json& j) {
    LoadedArchive out;
    out.manifest = manifest_from_json(j.at("manifest"));
    for (const auto& rj : j.at("rules")) out.rows.push_back(report_row_from_json(rj));
    return out;
}

std::vector<ArchiveEntry> bind_rows_to_catalog(const std::vector<ReportRow>& rows,
                                               const ItemCatalog& catalog) {
    std::vector<ArchiveEntry> entries;
    for (const ReportRow& row : rows) {
        Itemset a, c;
        for (const std::string& token : row.antecedent) {
            int id = catalog.parse_token(token);
            if (id < 0) throw ContractError("catalog mismatch: unknown item token '" + token + "'");
            a.push_back(id);
        }
        for (const std::string& token : row.consequent) {
            int id = catalog.parse_token(token);
            if (id < 0) throw ContractError("catalog mismatch: unknown item token '" + token + "'");
            c.push_back(id);
        }
        entries.push_back(ArchiveEntry{make_rule(std::move(a), std::move(c)), row.metrics});
    }
    return entries;
}

nlohmann::json front_report_to_json(const FrontReport& report, const ItemCatalog& catalog) {
    nlohmann::json front = nlohmann::json::array();
    for (const OracleEval& fe : report.true_front)
        front.push_back(to_json(to_report_row(ArchiveEntry{fe.rule, fe.metrics}, catalog)));
    nlohmann::json spurious = nlohmann::json::array();
    for (const ArchiveEntry& e : report.spurious)
        spurious.push_back(to_json(to_report_row(e, catalog)));
    return nlohmann::json{
        {"coverage", report.coverage}, {"true_front", front}, {"spurious", spurious}};
}

} // namespace mogar
