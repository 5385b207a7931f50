// The batch commands behind the CLI: catalog evaluation, feature extraction,
// fun-model fitting, ad-hoc simulation, and catalog generation/validation.
// Kept in the library so tests can drive them without spawning processes.
#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>

#include "mnk/catalog.hpp"
#include "mnk/csv.hpp"
#include "mnk/estimator.hpp"
#include "mnk/serialize.hpp"

namespace mnk {

inline constexpr std::string_view kToolVersion = "mnk-games 1.0.0";

// Reproducibility sidecar written next to every output file. Equal manifests
// (ignoring wall-clock duration) imply byte-identical result files.
struct RunManifest {
    std::string command;
    Json config = Json::object();
    std::uint64_t master_seed = 0;
    std::string catalog_hash;  // FNV-1a 64 of the catalog bytes; empty if no catalog
    std::string tool_version = std::string(kToolVersion);
    double duration_seconds = 0.0;
};

inline Json manifest_to_json(const RunManifest& manifest) {
    return Json{{"command", manifest.command},
                {"config", manifest.config},
                {"master_seed", manifest.master_seed},
                {"catalog_hash", manifest.catalog_hash},
                {"tool_version", manifest.tool_version},
                {"duration_seconds", manifest.duration_seconds}};
}

inline void write_manifest_beside(const std::string& out_path,
                                  const RunManifest& manifest) {
    write_text_file(out_path + ".manifest.json",
                    manifest_to_json(manifest).dump(2) + "\n");
}

namespace detail {

inline std::string fnv1a_hex(const std::string& content) {
    Fnv1a64 hash;
    hash.bytes(content.data(), content.size());
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx",
                  static_cast<unsigned long long>(hash.value()));
    return buffer;
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

}  // namespace detail

struct EvaluateOptions {
    std::string catalog_path;
    std::string model = "subgoal-partial";
    int k = 20;
    std::uint64_t seed = 0;
    std::string out_path;
};

// Per-game outcome estimates over the whole catalog under one named model.
inline int cmd_evaluate(const EvaluateOptions& options, std::ostream& log = std::cout) {
    detail::Stopwatch watch;
    auto model = ModelSpec::from_name(options.model);
    if (!model)
        throw DataError("unknown model name '" + options.model + "' (valid: " +
                        std::string(kModelNames) + ")");
    std::string catalog_bytes = read_text_file(options.catalog_path);
    Catalog catalog = catalog_from_json(Json::parse(catalog_bytes));

    CsvTable table;
    table.header = {"game_id",  "category", "first_wins",
                    "second_wins", "draws", "k",
                    "payoff",   "p_first_given_not_draw", "entropy_bits",
                    "mean_length"};
    for (const CatalogEntry& entry : catalog.entries) {
        EstimatorConfig config;
        config.num_simulations = options.k;
        config.mode = model->mode;
        config.first_policy = model->first;
        config.second_policy = model->second;
        config.master_seed = options.seed;
        EstimationResult result = estimate_outcomes(entry.spec, config);
        const OutcomeDistribution& dist = result.distribution;
        double mean_length = 0.0;
        for (const SimulationRecord& record : result.records)
            mean_length += record.length;
        mean_length /= static_cast<double>(result.records.size());
        auto conditional = p_first_given_not_draw(dist);
        table.rows.push_back({entry.id, entry.category,
                              std::to_string(dist.first_wins),
                              std::to_string(dist.second_wins),
                              std::to_string(dist.draws), std::to_string(dist.k),
                              format_double(expected_payoff(dist)),
                              conditional ? format_double(*conditional) : "",
                              format_double(outcome_entropy(dist)),
                              format_double(mean_length)});
    }
    save_csv(options.out_path, table);

    RunManifest manifest;
    manifest.command = "evaluate --catalog " + options.catalog_path + " --model " +
                       options.model + " --k " + std::to_string(options.k) +
                       " --seed " + std::to_string(options.seed) + " --out " +
                       options.out_path;
    manifest.config = Json{{"model", options.model}, {"k", options.k}};
    manifest.master_seed = options.seed;
    manifest.catalog_hash = detail::fnv1a_hex(catalog_bytes);
    manifest.duration_seconds = watch.seconds();
    write_manifest_beside(options.out_path, manifest);

    log << "wrote " << options.out_path << " (" << table.rows.size() << " rows, model "
        << options.model << ", k=" << options.k << ", seed=" << options.seed << ")\n";
    return 0;
}

struct FeaturesOptions {
    std::string catalog_path;
    int k = 20;
    std::uint64_t seed = 0;
    std::string external_path;  // optional CSV: game_id + one numeric column
    std::string out_path;
};

// The fun features (entropy, advantage, expected length) per game, optionally
// joined with an externally supplied score column.
inline int cmd_features(const FeaturesOptions& options, std::ostream& log = std::cout) {
    detail::Stopwatch watch;
    std::string catalog_bytes = read_text_file(options.catalog_path);
    Catalog catalog = catalog_from_json(Json::parse(catalog_bytes));

    std::map<std::string, double> external;
    if (!options.external_path.empty()) {
        CsvTable table = load_csv(options.external_path);
        std::size_t id_col = table.require_column("game_id");
        if (table.header.size() != 2)
            throw DataError("external CSV must have exactly game_id plus one value column");
        std::size_t value_col = id_col == 0 ? 1 : 0;
        for (const auto& row : table.rows) {
            if (!external.emplace(row[id_col],
                                  parse_double(row[value_col], options.external_path))
                     .second)
                throw DataError("duplicate game id in external CSV: " + row[id_col]);
        }
        std::string missing;
        std::set<std::string> catalog_ids;
        for (const CatalogEntry& entry : catalog.entries) {
            catalog_ids.insert(entry.id);
            if (!external.count(entry.id)) {
                if (!missing.empty()) missing += ", ";
                missing += entry.id;
            }
        }
        std::string extra;
        for (const auto& [id, value] : external)
            if (!catalog_ids.count(id)) {
                if (!extra.empty()) extra += ", ";
                extra += id;
            }
        if (!missing.empty())
            throw DataError("external CSV missing game ids: " + missing);
        if (!extra.empty())
            throw DataError("external CSV has unknown game ids: " + extra);
    }

    CsvTable table;
    table.header = {"game_id", "entropy_bits", "advantage", "expected_length"};
    if (!external.empty()) table.header.push_back("external");
    for (const CatalogEntry& entry : catalog.entries) {
        FunFeatures features = compute_fun_features(entry.spec, options.k, options.seed);
        std::vector<std::string> row = {entry.id,
                                        format_double(features.outcome_entropy),
                                        format_double(features.advantage),
                                        format_double(features.expected_length)};
        if (!external.empty()) row.push_back(format_double(external.at(entry.id)));
        table.rows.push_back(std::move(row));
    }
    save_csv(options.out_path, table);

    RunManifest manifest;
    manifest.command = "features --catalog " + options.catalog_path + " --k " +
                       std::to_string(options.k) + " --seed " +
                       std::to_string(options.seed) +
                       (options.external_path.empty()
                            ? ""
                            : " --external " + options.external_path) +
                       " --out " + options.out_path;
    manifest.config = Json{{"k", options.k},
                           {"external", options.external_path.empty() ? Json() : Json(options.external_path)}};
    manifest.master_seed = options.seed;
    manifest.catalog_hash = detail::fnv1a_hex(catalog_bytes);
    manifest.duration_seconds = watch.seconds();
    write_manifest_beside(options.out_path, manifest);

    log << "wrote " << options.out_path << " (" << table.rows.size()
        << " rows, k=" << options.k << ", seed=" << options.seed << ")\n";
    return 0;
}

struct FitFunOptions {
    std::string features_path;
    std::string ratings_path;
    std::string out_path;  // model JSON; predictions CSV lands at <out>.predictions.csv
};

// Fits the combined OLS fun model to per-game ratings (multiple ratings per
// game are mean-aggregated) and writes the model plus predicted-vs-actual.
inline int cmd_fit_fun(const FitFunOptions& options, std::ostream& log = std::cout) {
    detail::Stopwatch watch;
    CsvTable feature_table = load_csv(options.features_path);
    std::size_t id_col = feature_table.require_column("game_id");
    std::vector<std::string> columns;
    std::vector<std::size_t> column_indices;
    for (std::size_t c = 0; c < feature_table.header.size(); ++c) {
        if (c == id_col) continue;
        columns.push_back(feature_table.header[c]);
        column_indices.push_back(c);
    }
    if (columns.empty()) throw DataError("features CSV has no feature columns");
    std::vector<std::string> game_ids;
    std::vector<std::vector<double>> raw;
    for (const auto& row : feature_table.rows) {
        game_ids.push_back(row[id_col]);
        std::vector<double> values;
        for (std::size_t c : column_indices)
            values.push_back(parse_double(row[c], options.features_path));
        raw.push_back(std::move(values));
    }
    FeatureMatrix features = build_features(game_ids, columns, raw);

    CsvTable ratings_table = load_csv(options.ratings_path);
    std::size_t rating_id_col = ratings_table.require_column("game_id");
    std::size_t rating_col = ratings_table.require_column("rating");
    std::map<std::string, std::pair<double, int>> sums;
    for (const auto& row : ratings_table.rows) {
        double rating = parse_double(row[rating_col], options.ratings_path);
        if (rating < 0.0 || rating > 100.0)
            throw DataError("rating outside [0,100] for game " + row[rating_id_col]);
        auto& slot = sums[row[rating_id_col]];
        slot.first += rating;
        slot.second += 1;
    }
    std::map<std::string, double> targets;
    for (const auto& [id, sum] : sums) targets[id] = sum.first / sum.second;

    RegressionModel model = fit_ols(features, targets);

    Json output = Json{{"model", model_to_json(model)},
                       {"rating_aggregation", "mean"},
                       {"n_games", features.game_ids.size()},
                       {"n_ratings", ratings_table.rows.size()}};
    write_text_file(options.out_path, output.dump(2) + "\n");

    CsvTable predictions;
    predictions.header = {"game_id", "actual", "predicted"};
    for (std::size_t r = 0; r < features.game_ids.size(); ++r) {
        double predicted = model.intercept;
        for (std::size_t c = 0; c < features.columns.size(); ++c)
            predicted += model.weights[c] * features.standardized[r][c];
        predictions.rows.push_back({features.game_ids[r],
                                    format_double(targets.at(features.game_ids[r])),
                                    format_double(predicted)});
    }
    std::string predictions_path = options.out_path + ".predictions.csv";
    save_csv(predictions_path, predictions);

    RunManifest manifest;
    manifest.command = "fit-fun --features " + options.features_path + " --ratings " +
                       options.ratings_path + " --out " + options.out_path;
    manifest.config = Json{{"rating_aggregation", "mean"},
                           {"columns", model.columns}};
    manifest.duration_seconds = watch.seconds();
    write_manifest_beside(options.out_path, manifest);

    log << "fit " << columns.size() << "-feature model on "
        << features.game_ids.size() << " games: r_squared = "
        << format_double(model.r_squared) << "; wrote " << options.out_path
        << " and " << predictions_path << "\n";
    return 0;
}

struct SimulateOptions {
    std::string spec_text;  // inline DSL, or a path to a DSL file
    std::string first = "subgoal";
    std::string second = "subgoal";
    int games = 20;
    std::uint64_t seed = 0;
    bool trace = false;
    std::string out_path;  // trace JSON-lines destination (required with trace)
};

// Full simulations of one game between any two named policies; prints the
// outcome distribution and payoff, optionally dumping per-simulation
// trajectories as JSON lines.
inline int cmd_simulate(const SimulateOptions& options, std::ostream& log = std::cout) {
    detail::Stopwatch watch;
    std::string text = options.spec_text;
    if (std::filesystem::exists(text)) text = read_text_file(text);
    GameSpec spec = parse_spec_or_throw(text);
    if (spec.id.empty()) spec.id = "adhoc";

    auto first = Policy::from_name(options.first);
    auto second = Policy::from_name(options.second);
    if (!first || !second)
        throw DataError("unknown policy name (valid: " + std::string(kPolicyNames) + ")");
    if (options.trace && options.out_path.empty())
        throw DataError("--trace requires --out for the trajectory file");

    EstimatorConfig config;
    config.num_simulations = options.games;
    config.mode = SimulationMode::Full;
    config.first_policy = *first;
    config.second_policy = *second;
    config.master_seed = options.seed;
    EstimationResult result = estimate_outcomes(spec, config);
    const OutcomeDistribution& dist = result.distribution;

    log << "spec: " << print_spec(spec) << "\n"
        << "policies: first=" << options.first << " second=" << options.second
        << "  games=" << options.games << "  seed=" << options.seed << "\n"
        << "outcomes: first_wins=" << dist.first_wins
        << " second_wins=" << dist.second_wins << " draws=" << dist.draws << "\n"
        << "payoff: " << format_double(expected_payoff(dist)) << "\n";
    if (auto conditional = p_first_given_not_draw(dist))
        log << "p_first_given_not_draw: " << format_double(*conditional) << "\n";
    else
        log << "p_first_given_not_draw: null (all draws)\n";
    log << "entropy_bits: " << format_double(outcome_entropy(dist)) << "\n";

    if (options.trace) {
        std::string lines;
        for (const SimulationRecord& record : result.records)
            lines += record_to_json(record).dump() + "\n";
        write_text_file(options.out_path, lines);
        RunManifest manifest;
        manifest.command = "simulate --first " + options.first + " --second " +
                           options.second + " --games " +
                           std::to_string(options.games) + " --seed " +
                           std::to_string(options.seed) + " --trace --out " +
                           options.out_path;
        manifest.config = Json{{"spec", print_spec(spec)},
                               {"first", options.first},
                               {"second", options.second},
                               {"games", options.games}};
        manifest.master_seed = options.seed;
        manifest.duration_seconds = watch.seconds();
        write_manifest_beside(options.out_path, manifest);
        log << "wrote " << result.records.size() << " trajectories to "
            << options.out_path << "\n";
    }
    return 0;
}

struct CatalogOptions {
    std::string action;  // "generate" or "validate"
    std::string path;    // output for generate, input for validate
    std::uint64_t seed = 0;
};

inline int cmd_catalog(const CatalogOptions& options, std::ostream& log = std::cout) {
    detail::Stopwatch watch;
    if (options.action == "generate") {
        Catalog catalog = generate_catalog(options.seed);
        std::vector<std::string> problems = validate_catalog(catalog);
        if (!problems.empty()) {
            std::string message = "generated catalog failed validation:";
            for (const std::string& p : problems) message += "\n  " + p;
            throw DataError(message);
        }
        save_catalog(options.path, catalog);
        RunManifest manifest;
        manifest.command = "catalog generate --seed " + std::to_string(options.seed) +
                           " --out " + options.path;
        manifest.config = Json{{"entries", catalog.entries.size()}};
        manifest.master_seed = options.seed;
        manifest.catalog_hash = detail::fnv1a_hex(read_text_file(options.path));
        manifest.duration_seconds = watch.seconds();
        write_manifest_beside(options.path, manifest);
        log << "wrote " << options.path << " (" << catalog.entries.size()
            << " entries, seed=" << options.seed << ")\n";
        return 0;
    }
    if (options.action == "validate") {
        Catalog catalog = load_catalog(options.path);
        std::vector<std::string> problems = validate_catalog(catalog);
        if (!problems.empty()) {
            std::string message = "catalog validation failed:";
            for (const std::string& p : problems) message += "\n  " + p;
            throw DataError(message);
        }
        log << options.path << ": valid (" << catalog.entries.size() << " entries";
        for (const auto& [label, count] : catalog.category_counts())
            log << "; " << label << "=" << count;
        log << ")\n";
        return 0;
    }
    throw DataError("catalog action must be 'generate' or 'validate'");
}

}  // namespace mnk
