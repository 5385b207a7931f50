#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mnk/dsl.hpp"
#include "mnk/estimator.hpp"

using namespace mnk;

namespace {

GameSpec spec_of(const std::string& text) { return parse_spec_or_throw(text); }

OutcomeDistribution run(const std::string& text, SimulationMode mode, int k,
                        std::uint64_t seed) {
    EstimatorConfig config;
    config.num_simulations = k;
    config.mode = mode;
    config.master_seed = seed;
    return estimate_outcomes(spec_of(text), config).distribution;
}

}  // namespace

TEST_CASE("simulate_game respects the move cap and records the playout") {
    GameSpec ttt = spec_of("board 3x3; win 3");
    Policy random{PolicyKind::UniformRandom, {}};

    Rng rng(1);
    SimulationRecord one = simulate_game(ttt, random, random, 1, rng);
    CHECK(one.length == 1);
    CHECK(one.moves.size() == 1);
    CHECK(one.outcome.is_draw());  // a capped playout scores as a draw
    CHECK(one.move_cap == 1);

    Rng rng2(1);
    SimulationRecord full = simulate_game(ttt, random, random, 9, rng2);
    CHECK(full.length >= 5);
    CHECK(full.length <= 9);
    CHECK(static_cast<int>(full.moves.size()) == full.length);

    Rng rng3(1);
    CHECK_THROWS_AS(simulate_game(ttt, random, random, 0, rng3),
                    std::invalid_argument);
}

TEST_CASE("estimate_outcomes is deterministic and conserves the sample count") {
    GameSpec spec = spec_of("board 4x4; win 3");
    EstimatorConfig config;
    config.num_simulations = 60;
    config.master_seed = 99;

    EstimationResult a = estimate_outcomes(spec, config);
    EstimationResult b = estimate_outcomes(spec, config);
    CHECK(a.distribution.first_wins == b.distribution.first_wins);
    CHECK(a.distribution.second_wins == b.distribution.second_wins);
    CHECK(a.distribution.draws == b.distribution.draws);
    CHECK(a.distribution.first_wins + a.distribution.second_wins +
              a.distribution.draws ==
          60);
    CHECK(a.distribution.k == 60);

    REQUIRE(a.records.size() == 60);
    int board_size = effective_board_size(spec);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        const SimulationRecord& r = a.records[i];
        const SimulationRecord& s = b.records[i];
        CHECK(r.sim_index == static_cast<int>(i));
        CHECK(r.move_cap >= 1);
        CHECK(r.move_cap <= board_size);  // Partial caps are drawn from the stream
        CHECK(r.length <= r.move_cap);
        CHECK(r.moves == s.moves);
        CHECK(r.outcome == s.outcome);
        CHECK(r.move_cap == s.move_cap);
    }

    config.mode = SimulationMode::Full;
    for (const SimulationRecord& r : estimate_outcomes(spec, config).records)
        CHECK(r.move_cap == board_size);

    config.num_simulations = 0;
    CHECK_THROWS_AS(estimate_outcomes(spec, config), std::invalid_argument);
}

TEST_CASE("distribution summaries: payoff, entropy, conditional") {
    OutcomeDistribution dist{3, 1, 0, 4};
    CHECK(expected_payoff(dist) == doctest::Approx(0.5));
    CHECK(outcome_entropy(dist) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
    REQUIRE(p_first_given_not_draw(dist).has_value());
    CHECK(*p_first_given_not_draw(dist) == doctest::Approx(0.75));

    OutcomeDistribution uniform{5, 5, 5, 15};
    CHECK(expected_payoff(uniform) == doctest::Approx(0.0));
    CHECK(outcome_entropy(uniform) ==
          doctest::Approx(1.584962500721156).epsilon(1e-12));

    OutcomeDistribution pure{0, 0, 8, 8};
    CHECK(outcome_entropy(pure) == doctest::Approx(0.0));
    CHECK(!p_first_given_not_draw(pure).has_value());

    OutcomeDistribution empty;
    CHECK_THROWS_AS(expected_payoff(empty), std::invalid_argument);
    CHECK_THROWS_AS(outcome_entropy(empty), std::invalid_argument);
}

TEST_CASE("move-capped simulation draws more often than full playouts") {
    OutcomeDistribution partial = run("board 5x5; win 3", SimulationMode::Partial,
                                      2000, 9);
    OutcomeDistribution full = run("board 5x5; win 3", SimulationMode::Full,
                                   2000, 9);
    CHECK(partial.draws > full.draws + 100);
    CHECK(partial.k == full.k);
}

TEST_CASE("swapping the players' targets mirrors the expected payoff") {
    double easy_second = expected_payoff(run("board 5x5; win first=5 second=3",
                                             SimulationMode::Full, 500, 5));
    double easy_first = expected_payoff(run("board 5x5; win first=3 second=5",
                                            SimulationMode::Full, 500, 5));
    CHECK(easy_second < -0.9);
    CHECK(easy_first > 0.9);
    CHECK(std::abs(easy_second + easy_first) < 0.1);
}

TEST_CASE("lowering one player's target moves the payoff monotonically") {
    double biased = expected_payoff(run("board 5x5; win first=4 second=3",
                                        SimulationMode::Full, 500, 5));
    double symmetric = expected_payoff(run("board 5x5; win 4",
                                           SimulationMode::Full, 500, 5));
    CHECK(symmetric - biased >= 0.1);
}

TEST_CASE("advantage against a random opponent") {
    SUBCASE("the subgoal agent beats random play on an easy board") {
        CHECK(advantage_vs_random(spec_of("board 5x5; win 3"), 200, 17) > 0.5);
    }
    SUBCASE("a random agent has no advantage over itself") {
        Policy random{PolicyKind::UniformRandom, {}};
        CHECK(std::abs(advantage_vs_random(spec_of("board 3x3; win 3"), 500, 11,
                                           random)) <= 0.1);
    }
    SUBCASE("an unwinnable game gives exactly zero advantage") {
        CHECK(advantage_vs_random(spec_of("board 2x2; win 3"), 100, 7) == 0.0);
    }
    SUBCASE("k must be positive") {
        CHECK_THROWS_AS(advantage_vs_random(spec_of("board 3x3; win 3"), 0, 7),
                        std::invalid_argument);
    }
}

TEST_CASE("expected game length") {
    SUBCASE("every playout of 2-in-a-row on 2x2 lasts exactly three placements") {
        CHECK(expected_length(spec_of("board 2x2; win 2"), 100, 7) == 3.0);
    }
    SUBCASE("subgoal play on the 3x3 board runs long") {
        double len = expected_length(spec_of("board 3x3; win 3"), 300, 7);
        CHECK(len >= 5.0);
        CHECK(len <= 9.0);
    }
    SUBCASE("k must be positive") {
        CHECK_THROWS_AS(expected_length(spec_of("board 3x3; win 3"), 0, 7),
                        std::invalid_argument);
    }
}

TEST_CASE("all simulations drawing leaves the win conditional empty") {
    OutcomeDistribution dist = run("board 2x2; win 3", SimulationMode::Full, 50, 3);
    CHECK(dist.draws == 50);
    CHECK(!p_first_given_not_draw(dist).has_value());
}

TEST_CASE("fun features bundle the three estimates") {
    FunFeatures f = compute_fun_features(spec_of("board 3x3; win 3"), 40, 13);
    CHECK(f.outcome_entropy >= 0.0);
    CHECK(f.outcome_entropy <= 1.584962500721156 + 1e-12);
    CHECK(f.advantage >= -1.0);
    CHECK(f.advantage <= 1.0);
    CHECK(f.expected_length >= 1.0);
    CHECK(f.expected_length <= 9.0);
    CHECK(!f.external_score.has_value());

    FunFeatures again = compute_fun_features(spec_of("board 3x3; win 3"), 40, 13);
    CHECK(f.outcome_entropy == again.outcome_entropy);
    CHECK(f.advantage == again.advantage);
    CHECK(f.expected_length == again.expected_length);
}

TEST_CASE("model names map to agent/mode bundles") {
    struct Expected {
        const char* name;
        PolicyKind kind;
        SimulationMode mode;
    };
    const Expected table[] = {
        {"subgoal-partial", PolicyKind::SubgoalHeuristic, SimulationMode::Partial},
        {"random-partial", PolicyKind::UniformRandom, SimulationMode::Partial},
        {"random-full", PolicyKind::UniformRandom, SimulationMode::Full},
        {"lookahead5-full", PolicyKind::LookaheadSearch, SimulationMode::Full},
        {"mcs-full", PolicyKind::MonteCarloSearch, SimulationMode::Full},
    };
    for (const Expected& e : table) {
        std::optional<ModelSpec> m = ModelSpec::from_name(e.name);
        REQUIRE(m.has_value());
        CHECK(m->name == e.name);
        CHECK(m->first.kind == e.kind);
        CHECK(m->second.kind == e.kind);
        CHECK(m->mode == e.mode);
        CHECK(kModelNames.find(e.name) != std::string_view::npos);
    }
    CHECK(!ModelSpec::from_name("alphabeta-full").has_value());
    CHECK(!ModelSpec::from_name("").has_value());
    CHECK(mode_name(SimulationMode::Partial) == std::string("partial"));
    CHECK(mode_name(SimulationMode::Full) == std::string("full"));
}
