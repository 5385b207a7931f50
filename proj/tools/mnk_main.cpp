// Command-line front-end. Exit codes: 0 success, 1 data error (bad files,
// failed validation), 2 usage error (bad flags or arguments).
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mnk/commands.hpp"

namespace {

// Post-parse argument problems that should still exit like usage errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and evaluation engine for two-player m-in-a-row grid games"};
    app.require_subcommand(1);

    const std::vector<std::string> model_names = {
        "subgoal-partial", "random-partial", "random-full", "lookahead5-full",
        "mcs-full"};
    const std::vector<std::string> policy_names = {"subgoal", "random",
                                                   "lookahead5", "mcs"};

    mnk::EvaluateOptions evaluate_options;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Estimate outcome distributions for every game in a catalog");
    evaluate->add_option("--catalog", evaluate_options.catalog_path, "Catalog JSON file")
        ->required();
    evaluate->add_option("--model", evaluate_options.model, "Agent/estimator bundle")
        ->check(CLI::IsMember(model_names))
        ->capture_default_str();
    evaluate->add_option("--k", evaluate_options.k, "Simulations per game")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    evaluate->add_option("--seed", evaluate_options.seed, "Master seed")
        ->capture_default_str();
    evaluate->add_option("--out", evaluate_options.out_path, "Results CSV path")
        ->required();

    mnk::FeaturesOptions features_options;
    CLI::App* features = app.add_subcommand(
        "features", "Compute fun features (entropy, advantage, length) per game");
    features->add_option("--catalog", features_options.catalog_path, "Catalog JSON file")
        ->required();
    features->add_option("--k", features_options.k, "Simulations per estimate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    features->add_option("--seed", features_options.seed, "Master seed")
        ->capture_default_str();
    features->add_option("--external", features_options.external_path,
                         "Optional CSV (game_id + one score column) to join");
    features->add_option("--out", features_options.out_path, "Features CSV path")
        ->required();

    mnk::FitFunOptions fit_options;
    CLI::App* fit_fun = app.add_subcommand(
        "fit-fun", "Fit the OLS fun model to per-game ratings");
    fit_fun->add_option("--features", fit_options.features_path, "Features CSV")
        ->required();
    fit_fun->add_option("--ratings", fit_options.ratings_path,
                        "Ratings CSV (game_id, rating in [0,100])")
        ->required();
    fit_fun->add_option("--out", fit_options.out_path, "Model JSON path")->required();

    mnk::SimulateOptions simulate_options;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Run full simulations of one game between two policies");
    simulate->add_option("--spec", simulate_options.spec_text,
                         "Game spec (inline DSL text, or a path to a DSL file)")
        ->required();
    simulate->add_option("--first", simulate_options.first, "First player's policy")
        ->check(CLI::IsMember(policy_names))
        ->capture_default_str();
    simulate->add_option("--second", simulate_options.second, "Second player's policy")
        ->check(CLI::IsMember(policy_names))
        ->capture_default_str();
    simulate->add_option("--games", simulate_options.games, "Number of simulations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--seed", simulate_options.seed, "Master seed")
        ->capture_default_str();
    simulate->add_flag("--trace", simulate_options.trace,
                       "Write one SimulationRecord JSON line per game to --out");
    simulate->add_option("--out", simulate_options.out_path, "Trace output path");

    mnk::CatalogOptions catalog_options;
    CLI::App* catalog = app.add_subcommand(
        "catalog", "Generate or validate the 121-game catalog");
    catalog->add_option("action", catalog_options.action, "generate | validate")
        ->required()
        ->check(CLI::IsMember({"generate", "validate"}));
    catalog->add_option("--seed", catalog_options.seed, "Generation seed")
        ->capture_default_str();
    std::string catalog_out;
    std::string catalog_in;
    catalog->add_option("--out", catalog_out, "Output path (generate)");
    catalog->add_option("--catalog", catalog_in, "Catalog to validate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (evaluate->parsed()) return mnk::cmd_evaluate(evaluate_options);
        if (features->parsed()) return mnk::cmd_features(features_options);
        if (fit_fun->parsed()) return mnk::cmd_fit_fun(fit_options);
        if (simulate->parsed()) return mnk::cmd_simulate(simulate_options);
        if (catalog->parsed()) {
            if (catalog_options.action == "generate") {
                if (catalog_out.empty())
                    throw UsageError("catalog generate requires --out");
                catalog_options.path = catalog_out;
            } else {
                if (catalog_in.empty())
                    throw UsageError("catalog validate requires --catalog");
                catalog_options.path = catalog_in;
            }
            return mnk::cmd_catalog(catalog_options);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
