#include "mogar/ga.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mogar/errors.hpp"

namespace mogar {

Chromosome rule_to_chromosome(const Rule& r, std::size_t n_items) {
    Chromosome ch{RowBitmap(n_items), RowBitmap(n_items)};
    for (ItemId id : r.antecedent) ch.antecedent.set(static_cast<std::size_t>(id));
    for (ItemId id : r.consequent) ch.consequent.set(static_cast<std::size_t>(id));
    return ch;
}

Rule chromosome_to_rule(const Chromosome& ch) {
    Itemset a, c;
    for (std::size_t id : ch.antecedent.to_indices()) a.push_back(static_cast<ItemId>(id));
    for (std::size_t id : ch.consequent.to_indices()) c.push_back(static_cast<ItemId>(id));
    return make_rule(std::move(a), std::move(c));
}

void validate(const GAConfig& cfg) {
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (cfg.population_size < 1) throw ContractError("population_size must be >= 1");
    if (!probability(cfg.mutation_rate)) throw ContractError("mutation_rate must be in [0, 1]");
    if (!probability(cfg.crossover_rate)) throw ContractError("crossover_rate must be in [0, 1]");
    if (!probability(cfg.specialize_generalize_probability))
        throw ContractError("specialize_generalize_probability must be in [0, 1]");
    if (cfg.min_generations < 1) throw ContractError("min_generations must be >= 1");
    if (cfg.stall_generations < 1) throw ContractError("stall_generations must be >= 1");
    if (cfg.max_rule_items == 1) throw ContractError("max_rule_items must be 0 or >= 2");
}

bool ParetoArchive::insert(Rule rule, RuleMetrics metrics) {
    if (!metrics.feasible) throw ContractError("archive candidates must be feasible");
    for (const ArchiveEntry& e : entries_) {
        if (e.rule == rule) return false;
        if (dominates(e.metrics, metrics)) return false;
    }
    bool evicted_any = false;
    std::erase_if(entries_, [&](const ArchiveEntry& e) {
        bool out = dominates(metrics, e.metrics);
        evicted_any = evicted_any || out;
        return out;
    });
    entries_.push_back(ArchiveEntry{std::move(rule), std::move(metrics)});
    if (capacity_ != 0 && entries_.size() > capacity_) {
        bool candidate_survived = true;
        const Rule& inserted = entries_.back().rule;
        evict_most_crowded();
        candidate_survived =
            std::any_of(entries_.begin(), entries_.end(),
                        [&](const ArchiveEntry& e) { return e.rule == inserted; });
        if (!candidate_survived && !evicted_any) return false;
    }
    return true;
}

void ParetoArchive::evict_most_crowded() {
    // Drop the later member of the closest pair in objective space.
    double best = -1.0;
    std::size_t victim = entries_.size() - 1;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        auto oi = entries_[i].metrics.objectives();
        for (std::size_t j = 0; j < entries_.size(); ++j) {
            if (i == j) continue;
            auto oj = entries_[j].metrics.objectives();
            double d = 0.0;
            for (std::size_t k = 0; k < oi.size(); ++k) d += (oi[k] - oj[k]) * (oi[k] - oj[k]);
            nearest = std::min(nearest, d);
        }
        if (best < 0.0 || nearest <= best) {
            best = nearest;
            victim = i;
        }
    }
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
}

namespace {

// Uniform split of an itemset into two non-empty sides.
std::pair<Itemset, Itemset> split_itemset(const Itemset& items, Rng& rng) {
    Itemset a, c;
    do {
        a.clear();
        c.clear();
        for (ItemId id : items) (rng.chance(0.5) ? a : c).push_back(id);
    } while (a.empty() || c.empty());
    return {std::move(a), std::move(c)};
}

std::size_t total_items(const Chromosome& ch) {
    return ch.antecedent.count() + ch.consequent.count();
}

} // namespace

std::vector<Chromosome> seed_population(const std::vector<FrequentItemset>& frequent,
                                        const ItemCatalog& catalog, const GAConfig& cfg,
                                        Rng& rng) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < frequent.size(); ++i)
        if (frequent[i].items.size() >= 2) eligible.push_back(i);
    if (eligible.empty())
        throw SeedingError("no frequent itemset of cardinality >= 2 to seed rules from; "
                           "lower the minimum support");

    std::vector<double> cumulative;
    double total = 0.0;
    for (std::size_t i : eligible) {
        total += static_cast<double>(frequent[i].support_count);
        cumulative.push_back(total);
    }

    std::vector<Chromosome> population;
    population.reserve(cfg.population_size);
    while (population.size() < cfg.population_size) {
        double r = rng.unit() * total;
        std::size_t pick = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
        if (pick >= eligible.size()) pick = eligible.size() - 1;
        const Itemset& items = frequent[eligible[pick]].items;
        auto [a, c] = split_itemset(items, rng);
        Chromosome ch{RowBitmap(catalog.size()), RowBitmap(catalog.size())};
        for (ItemId id : a) ch.antecedent.set(static_cast<std::size_t>(id));
        for (ItemId id : c) ch.consequent.set(static_cast<std::size_t>(id));
        auto repaired = repair(ch, catalog, cfg.max_rule_items, rng);
        if (repaired) population.push_back(std::move(*repaired));
    }
    return population;
}

std::vector<double> pareto_rank_fitness(const std::vector<RuleMetrics>& metrics) {
    if (metrics.empty()) throw ContractError("pareto_rank_fitness: empty population");
    std::vector<int> rank(metrics.size(), -1);
    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < metrics.size(); ++i)
        if (metrics[i].feasible) remaining.push_back(i);

    int level = 0;
    while (!remaining.empty()) {
        std::vector<std::size_t> front, rest;
        for (std::size_t i : remaining) {
            bool dominated = false;
            for (std::size_t j : remaining) {
                if (i != j && dominates(metrics[j], metrics[i])) {
                    dominated = true;
                    break;
                }
            }
            (dominated ? rest : front).push_back(i);
        }
        for (std::size_t i : front) rank[i] = level;
        remaining = std::move(rest);
        ++level;
    }

    int max_rank = level > 0 ? level - 1 : 0;
    std::vector<double> fitness(metrics.size());
    for (std::size_t i = 0; i < metrics.size(); ++i)
        fitness[i] = rank[i] >= 0 ? 1.0 / (1.0 + rank[i]) : 1.0 / (2.0 + max_rank);
    return fitness;
}

std::pair<std::size_t, std::size_t> roulette_select(const std::vector<double>& fitness, Rng& rng) {
    if (fitness.empty()) throw ContractError("roulette_select: empty population");
    constexpr double kFloor = 1e-12;
    std::vector<double> cumulative(fitness.size());
    double total = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        total += std::max(fitness[i], kFloor);
        cumulative[i] = total;
    }
    auto draw = [&]() {
        double r = rng.unit() * total;
        std::size_t i = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
        return std::min(i, fitness.size() - 1);
    };
    std::size_t first = draw();
    std::size_t second = draw();
    return {first, second};
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& p1, const Chromosome& p2,
                                            CrossoverMode mode, const ItemCatalog& catalog,
                                            std::size_t max_rule_items, Rng& rng) {
    std::size_t n = p1.antecedent.size();
    Chromosome c1{RowBitmap(n), RowBitmap(n)}, c2{RowBitmap(n), RowBitmap(n)};

    if (mode == CrossoverMode::standard) {
        // One cut over the concatenated antecedent|consequent string.
        std::size_t cut = 1 + rng.below(2 * n - 1);
        auto bit = [n](const Chromosome& ch, std::size_t pos) {
            return pos < n ? ch.antecedent.test(pos) : ch.consequent.test(pos - n);
        };
        auto put = [n](Chromosome& ch, std::size_t pos) {
            if (pos < n)
                ch.antecedent.set(pos);
            else
                ch.consequent.set(pos - n);
        };
        for (std::size_t pos = 0; pos < 2 * n; ++pos) {
            const Chromosome& src1 = pos < cut ? p1 : p2;
            const Chromosome& src2 = pos < cut ? p2 : p1;
            if (bit(src1, pos)) put(c1, pos);
            if (bit(src2, pos)) put(c2, pos);
        }
    } else {
        c1.antecedent = p1.antecedent;
        c2.antecedent = p1.antecedent;
        if (mode == CrossoverMode::generalize) {
            c1.antecedent &= p2.antecedent; // fewer conditions, wider coverage
            c2.antecedent &= p2.antecedent;
        } else {
            c1.antecedent |= p2.antecedent;
            c2.antecedent |= p2.antecedent;
        }
        c1.consequent = p1.consequent;
        c2.consequent = p2.consequent;
    }

    auto r1 = repair(c1, catalog, max_rule_items, rng);
    auto r2 = repair(c2, catalog, max_rule_items, rng);
    return {r1 ? std::move(*r1) : p1, r2 ? std::move(*r2) : p2};
}

namespace {

struct MaskItem {
    ItemId id;
    bool in_antecedent;
};

std::vector<MaskItem> collect_items(const Chromosome& ch) {
    std::vector<MaskItem> out;
    for (std::size_t id : ch.antecedent.to_indices())
        out.push_back({static_cast<ItemId>(id), true});
    for (std::size_t id : ch.consequent.to_indices())
        out.push_back({static_cast<ItemId>(id), false});
    return out;
}

RowBitmap& side_of(Chromosome& ch, bool in_antecedent) {
    return in_antecedent ? ch.antecedent : ch.consequent;
}

} // namespace

Chromosome mutate(const Chromosome& ch, const ItemCatalog& catalog, const GAConfig& cfg,
                  Rng& rng) {
    if (!rng.chance(cfg.mutation_rate)) return ch;

    std::vector<MaskItem> present = collect_items(ch);

    std::vector<MaskItem> substitutable, interval_items;
    for (const MaskItem& mi : present) {
        int attr = catalog.item(mi.id).attr_index;
        if (catalog.attribute_kind(attr) == AttributeKind::interval) {
            if (catalog.attribute_bins(attr) >= 2) interval_items.push_back(mi);
        } else if (catalog.items_of_attribute(attr).size() >= 2) {
            substitutable.push_back(mi);
        }
    }
    bool can_drop = ch.antecedent.count() >= 2;
    std::vector<ItemId> addable;
    if (cfg.max_rule_items == 0 || total_items(ch) < cfg.max_rule_items) {
        std::vector<bool> attr_used(catalog.n_attributes(), false);
        for (const MaskItem& mi : present)
            attr_used[static_cast<std::size_t>(catalog.item(mi.id).attr_index)] = true;
        for (std::size_t id = 0; id < catalog.size(); ++id)
            if (!attr_used[static_cast<std::size_t>(catalog.item(static_cast<int>(id)).attr_index)])
                addable.push_back(static_cast<ItemId>(id));
    }

    enum Variant { substitute, drop, add, interval };
    std::vector<Variant> basics;
    if (!substitutable.empty()) basics.push_back(substitute);
    if (can_drop) basics.push_back(drop);
    if (!addable.empty()) basics.push_back(add);

    Variant chosen;
    if (!interval_items.empty() &&
        (basics.empty() || rng.chance(cfg.specialize_generalize_probability)))
        chosen = interval;
    else if (!basics.empty())
        chosen = basics[rng.below(basics.size())];
    else
        return ch;

    Chromosome out = ch;
    switch (chosen) {
    case substitute: {
        MaskItem target = substitutable[rng.below(substitutable.size())];
        int attr = catalog.item(target.id).attr_index;
        std::vector<ItemId> alternatives;
        for (ItemId other : catalog.items_of_attribute(attr))
            if (other != target.id) alternatives.push_back(other);
        ItemId replacement = alternatives[rng.below(alternatives.size())];
        side_of(out, target.in_antecedent).clear(static_cast<std::size_t>(target.id));
        side_of(out, target.in_antecedent).set(static_cast<std::size_t>(replacement));
        break;
    }
    case drop: {
        auto items = out.antecedent.to_indices();
        out.antecedent.clear(items[rng.below(items.size())]);
        break;
    }
    case add: {
        out.antecedent.set(static_cast<std::size_t>(addable[rng.below(addable.size())]));
        break;
    }
    case interval: {
        MaskItem target = interval_items[rng.below(interval_items.size())];
        const CatalogItem& it = catalog.item(target.id);
        int last = catalog.attribute_bins(it.attr_index) - 1;
        std::vector<std::pair<int, int>> wider, narrower;
        if (it.bin_lo > 0) wider.push_back({it.bin_lo - 1, it.bin_hi});
        if (it.bin_hi < last) wider.push_back({it.bin_lo, it.bin_hi + 1});
        if (it.bin_hi > it.bin_lo) {
            narrower.push_back({it.bin_lo + 1, it.bin_hi});
            narrower.push_back({it.bin_lo, it.bin_hi - 1});
        }
        auto& options = rng.chance(0.5) ? (wider.empty() ? narrower : wider)
                                        : (narrower.empty() ? wider : narrower);
        if (options.empty()) return ch;
        auto [lo, hi] = options[rng.below(options.size())];
        int replacement = catalog.find_range(it.attr_index, lo, hi);
        if (replacement < 0) return ch;
        side_of(out, target.in_antecedent).clear(static_cast<std::size_t>(target.id));
        side_of(out, target.in_antecedent).set(static_cast<std::size_t>(replacement));
        break;
    }
    }

    auto repaired = repair(out, catalog, cfg.max_rule_items, rng);
    return repaired ? std::move(*repaired) : ch;
}

std::optional<Chromosome> repair(const Chromosome& ch, const ItemCatalog& catalog,
                                 std::size_t max_rule_items, Rng& rng) {
    Chromosome out = ch;
    out.consequent.and_not(out.antecedent);

    // One item per attribute per side; conflicts keep a uniform survivor.
    for (RowBitmap* side : {&out.antecedent, &out.consequent}) {
        std::vector<std::vector<std::size_t>> by_attr(catalog.n_attributes());
        for (std::size_t id : side->to_indices())
            by_attr[static_cast<std::size_t>(catalog.item(static_cast<int>(id)).attr_index)]
                .push_back(id);
        for (const auto& group : by_attr) {
            if (group.size() < 2) continue;
            std::size_t keep = group[rng.below(group.size())];
            for (std::size_t id : group)
                if (id != keep) side->clear(id);
        }
    }

    if (max_rule_items >= 2) {
        while (total_items(out) > max_rule_items) {
            RowBitmap& side = out.antecedent.count() > 1 ? out.antecedent : out.consequent;
            auto items = side.to_indices();
            side.clear(items[rng.below(items.size())]);
        }
    }

    if (!out.antecedent.any() || !out.consequent.any()) return std::nullopt;
    return out;
}

ParetoArchive evolve(const BinaryTransactionDB& db, const ItemCatalog& catalog,
                     const std::vector<FrequentItemset>& frequent, const GAConfig& cfg,
                     std::ostream* progress) {
    validate(cfg);
    Rng rng(cfg.rng_seed);

    std::vector<Chromosome> population = seed_population(frequent, catalog, cfg, rng);
    ParetoArchive archive(cfg.archive_capacity);

    auto evaluate = [&](const std::vector<Chromosome>& pop) {
        std::vector<RuleMetrics> metrics;
        metrics.reserve(pop.size());
        for (const Chromosome& ch : pop)
            metrics.push_back(evaluate_rule(db, chromosome_to_rule(ch), cfg.comprehensibility));
        return metrics;
    };
    auto feed_archive = [&](const std::vector<Chromosome>& pop,
                            const std::vector<RuleMetrics>& metrics) {
        bool changed = false;
        for (std::size_t i = 0; i < pop.size(); ++i)
            if (metrics[i].feasible)
                changed |= archive.insert(chromosome_to_rule(pop[i]), metrics[i]);
        return changed;
    };

    std::vector<RuleMetrics> metrics = evaluate(population);
    feed_archive(population, metrics);

    std::size_t generation = 0;
    std::size_t stall = 0;
    while (true) {
        ++generation;
        std::vector<double> fitness = pareto_rank_fitness(metrics);

        // Keep room for offspring even when the archive outgrows the population.
        std::size_t elite = std::min(archive.size(), cfg.population_size / 2);
        std::size_t n_offspring = cfg.population_size - elite;

        std::vector<Chromosome> offspring;
        offspring.reserve(n_offspring);
        while (offspring.size() < n_offspring) {
            auto [i, j] = roulette_select(fitness, rng);
            Chromosome c1 = population[i];
            Chromosome c2 = population[j];
            if (rng.chance(cfg.crossover_rate)) {
                auto mode = static_cast<CrossoverMode>(rng.below(3));
                std::tie(c1, c2) = crossover(c1, c2, mode, catalog, cfg.max_rule_items, rng);
            }
            c1 = mutate(c1, catalog, cfg, rng);
            c2 = mutate(c2, catalog, cfg, rng);
            offspring.push_back(std::move(c1));
            if (offspring.size() < n_offspring) offspring.push_back(std::move(c2));
        }

        std::vector<RuleMetrics> offspring_metrics = evaluate(offspring);
        bool changed = feed_archive(offspring, offspring_metrics);

        std::vector<Chromosome> next;
        std::vector<RuleMetrics> next_metrics;
        next.reserve(cfg.population_size);
        for (std::size_t e = 0; e < elite; ++e) {
            next.push_back(rule_to_chromosome(archive.entries()[e].rule, catalog.size()));
            next_metrics.push_back(archive.entries()[e].metrics);
        }
        for (std::size_t o = 0; o < offspring.size(); ++o) {
            next.push_back(std::move(offspring[o]));
            next_metrics.push_back(offspring_metrics[o]);
        }
        population = std::move(next);
        metrics = std::move(next_metrics);

        stall = changed ? 0 : stall + 1;
        if (progress) {
            *progress << "generation " << generation << "\tarchive " << archive.size()
                      << "\tchanged " << (changed ? 1 : 0);
            if (!archive.empty()) {
                std::array<double, 4> best = archive.entries().front().metrics.objectives();
                for (const ArchiveEntry& e : archive.entries()) {
                    auto o = e.metrics.objectives();
                    for (std::size_t k = 0; k < 4; ++k) best[k] = std::max(best[k], o[k]);
                }
                *progress << "\tbest cf " << best[0] << "\tcompleteness " << best[1]
                          << "\tinterestingness " << best[2] << "\tcomprehensibility " << best[3];
            }
            *progress << "\n";
        }
        if (generation >= cfg.min_generations && stall >= cfg.stall_generations) break;
    }
    return archive;
}

std::vector<ArchiveEntry> select_final(const ParetoArchive& archive, std::size_t k) {
    std::vector<ArchiveEntry> out = archive.entries();
    std::sort(out.begin(), out.end(), [](const ArchiveEntry& a, const ArchiveEntry& b) {
        if (a.metrics.interestingness != b.metrics.interestingness)
            return a.metrics.interestingness > b.metrics.interestingness;
        if (a.metrics.comprehensibility != b.metrics.comprehensibility)
            return a.metrics.comprehensibility > b.metrics.comprehensibility;
        return a.rule < b.rule;
    });
    if (k != 0 && out.size() > k) out.resize(k);
    return out;
}

} // namespace mogar
