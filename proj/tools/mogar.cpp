// mogar: multi-objective association rule mining on categorical data.
//
// Pipeline: binarize a categorical CSV into asymmetric items, mine frequent
// itemsets with Apriori, evolve a Pareto archive of rules over confidence
// factor, completeness, interestingness and comprehensibility, and verify
// archives against the exhaustive oracle.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mogar/apriori.hpp"
#include "mogar/binarize.hpp"
#include "mogar/dataset.hpp"
#include "mogar/errors.hpp"
#include "mogar/ga.hpp"
#include "mogar/oracle.hpp"
#include "mogar/report.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerification = 3;

struct InputOptions {
    std::string path;
    std::string delimiter = ",";
    std::string missing_token = "?";
    bool drop_first_column = false;
    std::vector<std::string> discretize_specs; // attr:b1,b2,...
    std::vector<std::string> compress_specs;   // attr:M
    std::vector<std::string> aggregate_specs;  // attr:MIN
    double drop_items_above = -1.0;            // < 0 disables
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--input", in.path, "input CSV path (header row required)")->required();
    cmd->add_option("--delimiter", in.delimiter, "field delimiter")->default_val(",");
    cmd->add_option("--missing-token", in.missing_token, "token marking a missing cell")
        ->default_val("?");
    cmd->add_flag("--drop-first-column", in.drop_first_column,
                  "ignore the first column (identifier columns, e.g. animal names)");
    cmd->add_option("--discretize", in.discretize_specs,
                    "attr:b1,b2,... replace a numeric column by half-open bins");
    cmd->add_option("--compress", in.compress_specs,
                    "attr:M group a domain down to at most M values");
    cmd->add_option("--aggregate", in.aggregate_specs,
                    "attr:MIN merge values with fewer than MIN rows into OTHER");
    cmd->add_option("--drop-items-above", in.drop_items_above,
                    "drop items whose support fraction exceeds this")
        ->check(CLI::Range(0.0, 1.0));
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
    auto pos = spec.find(':');
    if (pos == std::string::npos)
        throw mogar::ContractError("malformed directive (expected attr:args): " + spec);
    return {spec.substr(0, pos), spec.substr(pos + 1)};
}

std::vector<double> parse_numbers(const std::string& list) {
    std::vector<double> out;
    std::istringstream in(list);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw mogar::ContractError("not a number in directive: " + cell);
        }
    }
    return out;
}

struct LoadedInput {
    mogar::CategoricalDataset ds;
    mogar::BinarizedData bd;
    std::string input_hash;
    std::vector<std::string> directives;
};

LoadedInput load_input(const InputOptions& in) {
    std::ifstream file(in.path, std::ios::binary);
    if (!file) throw mogar::ParseError("cannot open input file: " + in.path);
    std::ostringstream buf;
    buf << file.rdbuf();
    std::string bytes = buf.str();

    LoadedInput out;
    out.input_hash = mogar::hex64(mogar::fnv1a64(bytes));

    if (in.delimiter.size() != 1)
        throw mogar::ContractError("delimiter must be a single character");
    mogar::CsvOptions csv{in.delimiter[0], in.missing_token};
    out.ds = mogar::parse_csv(bytes, csv);

    if (in.drop_first_column) {
        out.ds = mogar::drop_column(out.ds, 0);
        out.directives.push_back("drop-first-column");
    }
    for (const std::string& spec : in.discretize_specs) {
        auto [attr, args] = split_spec(spec);
        out.ds = mogar::discretize(out.ds, attr, parse_numbers(args));
        out.directives.push_back("discretize:" + spec);
    }
    for (const std::string& spec : in.compress_specs) {
        auto [attr, args] = split_spec(spec);
        out.ds = mogar::compress_domain(out.ds, attr, std::stoul(args));
        out.directives.push_back("compress:" + spec);
    }
    for (const std::string& spec : in.aggregate_specs) {
        auto [attr, args] = split_spec(spec);
        out.ds = mogar::aggregate_low_support(out.ds, attr, std::stoul(args));
        out.directives.push_back("aggregate:" + spec);
    }

    mogar::BinarizeOptions bin;
    if (in.drop_items_above >= 0.0) {
        bin.drop_items_above = in.drop_items_above;
        out.directives.push_back("drop-items-above:" + std::to_string(in.drop_items_above));
    }
    out.bd = mogar::binarize(out.ds, bin);
    return out;
}

std::string catalog_hash(const mogar::ItemCatalog& catalog) {
    std::string joined;
    for (std::size_t id = 0; id < catalog.size(); ++id) {
        joined += catalog.token(static_cast<int>(id));
        joined += '\n';
    }
    return mogar::hex64(mogar::fnv1a64(joined));
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mogar::ParseError("cannot open output file: " + path);
    out << text;
}

void emit_manifest(const mogar::RunManifest& manifest, const std::string& manifest_path) {
    std::string text = mogar::to_json(manifest).dump();
    if (manifest_path.empty())
        std::cerr << text << "\n";
    else
        write_text(manifest_path, text + "\n");
}

std::string format_rows(const std::vector<mogar::ReportRow>& rows, mogar::OutputFormat format,
                        const nlohmann::json* manifest) {
    switch (format) {
    case mogar::OutputFormat::table:
        return mogar::render_report_table(rows);
    case mogar::OutputFormat::csv:
        return mogar::emit_report_csv(rows);
    case mogar::OutputFormat::json: {
        nlohmann::json doc = mogar::report_to_json(rows);
        if (manifest) doc["manifest"] = *manifest;
        return doc.dump(2) + "\n";
    }
    }
    return {};
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mogar::ParseError("cannot open archive file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw mogar::ParseError("malformed archive file " + path + ": " + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-objective association rule miner for categorical datasets"};
    app.require_subcommand(1);

    auto positive_fraction = CLI::Validator(
        [](std::string& s) -> std::string {
            try {
                double v = std::stod(s);
                if (v > 0.0 && v <= 1.0) return {};
            } catch (const std::exception&) {
            }
            return "must be a fraction in (0, 1]";
        },
        "FRACTION(0,1]");

    // binarize
    InputOptions bin_in;
    std::string bin_output;
    CLI::App* cmd_binarize = app.add_subcommand("binarize", "emit the item catalog and 0/1 matrix");
    add_input_options(cmd_binarize, bin_in);
    cmd_binarize->add_option("--output", bin_output, "write matrix here instead of stdout");
    cmd_binarize->set_config("--config");

    // mine
    InputOptions mine_in;
    double mine_minsup = 0.1;
    std::size_t mine_max_len = 0;
    std::string mine_output;
    CLI::App* cmd_mine = app.add_subcommand("mine", "list frequent itemsets");
    add_input_options(cmd_mine, mine_in);
    cmd_mine->add_option("--minsup", mine_minsup, "minimum support fraction")
        ->default_val(0.1)
        ->check(positive_fraction);
    cmd_mine->add_option("--max-itemset-size", mine_max_len,
                         "stop at this itemset cardinality (0 = unbounded)");
    cmd_mine->add_option("--output", mine_output, "write listing here instead of stdout");
    cmd_mine->set_config("--config");

    // evolve
    InputOptions ev_in;
    double ev_minsup = 0.1;
    std::size_t ev_max_len = 0;
    mogar::GAConfig ga;
    std::string ev_format = "table", ev_output, ev_archive_out, ev_manifest_path;
    std::string ev_variant = "eq4";
    std::size_t ev_top_k = 0;
    bool ev_quiet = false;
    CLI::App* cmd_evolve = app.add_subcommand("evolve", "run the genetic search and report rules");
    add_input_options(cmd_evolve, ev_in);
    cmd_evolve->add_option("--minsup", ev_minsup, "minimum support fraction for seeding")
        ->default_val(0.1)
        ->check(positive_fraction);
    cmd_evolve->add_option("--max-itemset-size", ev_max_len,
                           "bound frequent itemset cardinality (0 = unbounded)");
    cmd_evolve->add_option("--pop-size", ga.population_size, "population size")
        ->default_val(50)
        ->check(CLI::PositiveNumber);
    cmd_evolve->add_option("--mutation-rate", ga.mutation_rate, "mutation probability")
        ->default_val(0.5)
        ->check(CLI::Range(0.0, 1.0));
    cmd_evolve->add_option("--crossover-rate", ga.crossover_rate, "crossover probability")
        ->default_val(0.8)
        ->check(CLI::Range(0.0, 1.0));
    cmd_evolve->add_option("--min-generations", ga.min_generations, "generations before the stall check")
        ->default_val(20)
        ->check(CLI::PositiveNumber);
    cmd_evolve->add_option("--stall-generations", ga.stall_generations,
                           "stop after this many generations without archive change")
        ->default_val(10)
        ->check(CLI::PositiveNumber);
    cmd_evolve->add_option("--seed", ga.rng_seed, "random seed")->default_val(1);
    cmd_evolve->add_option("--max-rule-items", ga.max_rule_items,
                           "cap on items per rule (0 = unbounded)");
    cmd_evolve->add_option("--specialize-generalize-probability",
                           ga.specialize_generalize_probability,
                           "share of mutations widening/narrowing an interval condition")
        ->default_val(0.25)
        ->check(CLI::Range(0.0, 1.0));
    cmd_evolve->add_option("--archive-capacity", ga.archive_capacity,
                           "bound the Pareto archive (0 = unbounded)");
    cmd_evolve
        ->add_option("--comprehensibility-variant", ev_variant,
                     "eq4 or attribute-count")
        ->default_val("eq4")
        ->check(CLI::IsMember({"eq4", "attribute-count"}));
    cmd_evolve->add_option("--format", ev_format, "table, csv or json")
        ->default_val("table")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    cmd_evolve->add_option("--top-k", ev_top_k, "report only the first k rules (0 = all)");
    cmd_evolve->add_option("--output", ev_output, "write report here instead of stdout");
    cmd_evolve->add_option("--archive-out", ev_archive_out, "write the full archive JSON here");
    cmd_evolve->add_option("--manifest", ev_manifest_path,
                           "write the run manifest here instead of stderr");
    cmd_evolve->add_flag("--quiet", ev_quiet, "suppress per-generation progress");
    cmd_evolve->set_config("--config");

    // verify
    InputOptions ver_in;
    std::string ver_archive, ver_output;
    std::size_t ver_max_items = 3;
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "check an archive against the exhaustive Pareto front");
    add_input_options(cmd_verify, ver_in);
    cmd_verify->add_option("--archive", ver_archive, "archive JSON from evolve --archive-out")
        ->required();
    cmd_verify->add_option("--max-rule-items", ver_max_items,
                           "rule size bound for the exhaustive front")
        ->default_val(3)
        ->check(CLI::PositiveNumber);
    cmd_verify->add_option("--output", ver_output, "write the report here instead of stdout");
    cmd_verify->set_config("--config");

    // report
    std::string rep_archive, rep_format = "table", rep_output;
    std::size_t rep_top_k = 0;
    CLI::App* cmd_report = app.add_subcommand("report", "re-render a saved archive");
    cmd_report->add_option("--archive", rep_archive, "archive JSON from evolve --archive-out")
        ->required();
    cmd_report->add_option("--format", rep_format, "table, csv or json")
        ->default_val("table")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    cmd_report->add_option("--top-k", rep_top_k, "report only the first k rules (0 = all)");
    cmd_report->add_option("--output", rep_output, "write report here instead of stdout");
    cmd_report->set_config("--config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_binarize->parsed()) {
            LoadedInput in = load_input(bin_in);
            std::string text;
            for (std::size_t id = 0; id < in.bd.catalog.size(); ++id)
                text += std::to_string(id) + "\t" + in.bd.catalog.token(static_cast<int>(id)) + "\n";
            text += "\n";
            text += mogar::dump_matrix_csv(in.bd);
            write_text(bin_output, text);

            mogar::RunManifest manifest;
            manifest.command = "binarize";
            manifest.input_path = bin_in.path;
            manifest.input_hash = in.input_hash;
            manifest.preprocessing = in.directives;
            manifest.catalog_hash = catalog_hash(in.bd.catalog);
            emit_manifest(manifest, "");
            return 0;
        }

        if (cmd_mine->parsed()) {
            LoadedInput in = load_input(mine_in);
            auto frequent = mogar::mine_frequent(in.bd.db, mine_minsup, mine_max_len);
            write_text(mine_output, mogar::dump_frequent(frequent, in.bd.catalog));

            mogar::RunManifest manifest;
            manifest.command = "mine";
            manifest.input_path = mine_in.path;
            manifest.input_hash = in.input_hash;
            manifest.preprocessing = in.directives;
            manifest.minsup = mine_minsup;
            manifest.max_itemset_size = mine_max_len;
            manifest.catalog_hash = catalog_hash(in.bd.catalog);
            emit_manifest(manifest, "");
            return 0;
        }

        if (cmd_evolve->parsed()) {
            ga.comprehensibility = ev_variant == "attribute-count"
                                       ? mogar::ComprehensibilityVariant::attribute_count
                                       : mogar::ComprehensibilityVariant::eq4;
            LoadedInput in = load_input(ev_in);
            auto frequent = mogar::mine_frequent(in.bd.db, ev_minsup, ev_max_len);

            mogar::RunManifest manifest;
            manifest.command = "evolve";
            manifest.input_path = ev_in.path;
            manifest.input_hash = in.input_hash;
            manifest.preprocessing = in.directives;
            manifest.minsup = ev_minsup;
            manifest.max_itemset_size = ev_max_len;
            manifest.ga = ga;
            manifest.catalog_hash = catalog_hash(in.bd.catalog);
            manifest.top_k = ev_top_k;

            mogar::ParetoArchive archive =
                mogar::evolve(in.bd.db, in.bd.catalog, frequent, ga, ev_quiet ? nullptr : &std::cerr);

            std::vector<mogar::ReportRow> rows;
            for (const mogar::ArchiveEntry& e : mogar::select_final(archive, ev_top_k))
                rows.push_back(mogar::to_report_row(e, in.bd.catalog));

            nlohmann::json manifest_json = mogar::to_json(manifest);
            write_text(ev_output, format_rows(rows, mogar::parse_format(ev_format), &manifest_json));
            if (!ev_archive_out.empty())
                write_text(ev_archive_out,
                           mogar::archive_to_json(archive, in.bd.catalog, manifest).dump(2) + "\n");
            emit_manifest(manifest, ev_manifest_path);
            return 0;
        }

        if (cmd_verify->parsed()) {
            LoadedInput in = load_input(ver_in);
            mogar::LoadedArchive loaded = mogar::archive_from_json(read_json_file(ver_archive));
            if (loaded.manifest.catalog_hash != catalog_hash(in.bd.catalog))
                throw mogar::ContractError(
                    "catalog mismatch: archive was produced from a different input or "
                    "preprocessing");
            std::vector<mogar::ArchiveEntry> bound =
                mogar::bind_rows_to_catalog(loaded.rows, in.bd.catalog);

            // Compare the archive through the oracle's own metric path; stale
            // metrics in the file mean the rules no longer match the data.
            std::vector<mogar::ArchiveEntry> checked;
            for (const mogar::ArchiveEntry& e : bound) {
                mogar::RuleMetrics oracle_m = mogar::oracle_evaluate(in.ds, in.bd.catalog, e.rule);
                if (!oracle_m.feasible ||
                    std::abs(oracle_m.cf - e.metrics.cf) > 1e-9 ||
                    std::abs(oracle_m.completeness - e.metrics.completeness) > 1e-9 ||
                    std::abs(oracle_m.interestingness - e.metrics.interestingness) > 1e-9 ||
                    std::abs(oracle_m.comprehensibility - e.metrics.comprehensibility) > 1e-9)
                    throw mogar::ContractError(
                        "archive metrics do not match the dataset (catalog mismatch?)");
                if (e.rule.antecedent.size() + e.rule.consequent.size() <= ver_max_items)
                    checked.push_back(mogar::ArchiveEntry{e.rule, oracle_m});
            }

            auto front = mogar::oracle_front(in.ds, in.bd.catalog, ver_max_items);
            mogar::FrontReport report = mogar::verify_archive(checked, front);

            nlohmann::json doc = mogar::front_report_to_json(report, in.bd.catalog);
            doc["checked_rules"] = checked.size();
            doc["archive_rules"] = bound.size();
            write_text(ver_output, doc.dump(2) + "\n");
            std::cerr << "coverage " << report.coverage << ", spurious " << report.spurious.size()
                      << " of " << checked.size() << " rules within the size bound\n";
            return report.spurious.empty() ? 0 : kExitVerification;
        }

        if (cmd_report->parsed()) {
            mogar::LoadedArchive loaded = mogar::archive_from_json(read_json_file(rep_archive));
            std::vector<mogar::ReportRow> rows = loaded.rows;
            std::sort(rows.begin(), rows.end(), [](const mogar::ReportRow& a,
                                                   const mogar::ReportRow& b) {
                if (a.metrics.interestingness != b.metrics.interestingness)
                    return a.metrics.interestingness > b.metrics.interestingness;
                if (a.metrics.comprehensibility != b.metrics.comprehensibility)
                    return a.metrics.comprehensibility > b.metrics.comprehensibility;
                return std::tie(a.antecedent, a.consequent) < std::tie(b.antecedent, b.consequent);
            });
            if (rep_top_k != 0 && rows.size() > rep_top_k) rows.resize(rep_top_k);
            nlohmann::json manifest_json = mogar::to_json(loaded.manifest);
            write_text(rep_output,
                       format_rows(rows, mogar::parse_format(rep_format), &manifest_json));
            return 0;
        }
    } catch (const mogar::SeedingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
