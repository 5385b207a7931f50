#include "doctest.h"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "mnk/agents.hpp"
#include "mnk/dsl.hpp"
#include "mnk/rng.hpp"

using namespace mnk;

namespace {

GameSpec spec_of(const std::string& text) { return parse_spec_or_throw(text); }

GameState play(const GameSpec& spec, const std::vector<Cell>& moves) {
    GameState state = initial_state(spec);
    for (Cell c : moves) apply_move_in_place(state, c, spec);
    return state;
}

double estimate_for(const std::vector<std::pair<Cell, double>>& estimates,
                    Cell cell) {
    for (const auto& [c, e] : estimates)
        if (c == cell) return e;
    REQUIRE(false);
    return 0.0;
}

}  // namespace

TEST_CASE("softmax probabilities: closed form, normalization, invariances") {
    SUBCASE("two-score closed form at temperature 1") {
        std::vector<double> scores = {2.0, 4.0};
        std::vector<double> p = softmax_probabilities(scores, 1.0);
        REQUIRE(p.size() == 2);
        double expected_hi = 1.0 / (1.0 + std::exp(-2.0));
        CHECK(p[1] == doctest::Approx(expected_hi).epsilon(1e-12));
        CHECK(p[0] == doctest::Approx(1.0 - expected_hi).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(0.8807970779778823).epsilon(1e-12));
    }
    SUBCASE("probabilities always sum to one") {
        Rng rng(3);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> scores;
            for (int i = 0; i < 1 + static_cast<int>(rng.next_below(8)); ++i)
                scores.push_back(20.0 * rng.next_unit() - 10.0);
            std::vector<double> p = softmax_probabilities(scores, 1.0);
            double sum = 0.0;
            for (double x : p) {
                CHECK(x >= 0.0);
                sum += x;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("shifting every score leaves the distribution unchanged") {
        std::vector<double> base = {1.0, -0.5, 3.0};
        std::vector<double> shifted = {101.0, 99.5, 103.0};
        std::vector<double> p = softmax_probabilities(base, 1.0);
        std::vector<double> q = softmax_probabilities(shifted, 1.0);
        for (std::size_t i = 0; i < p.size(); ++i)
            CHECK(p[i] == doctest::Approx(q[i]).epsilon(1e-12));
    }
    SUBCASE("higher temperature flattens the distribution") {
        std::vector<double> scores = {0.0, 2.0};
        CHECK(softmax_probabilities(scores, 2.0)[1] <
              softmax_probabilities(scores, 1.0)[1]);
    }
    SUBCASE("extreme scores do not overflow") {
        std::vector<double> scores = {1e6, 0.0, -1e6};
        std::vector<double> p = softmax_probabilities(scores, 1.0);
        CHECK(p[0] == doctest::Approx(1.0));
        CHECK(p[1] == doctest::Approx(0.0));
        CHECK(std::isfinite(p[0]));
    }
    SUBCASE("at or below the argmax temperature the best score takes all") {
        std::vector<double> scores = {5.0, 3.0, 5.0};
        for (double temp : {kArgmaxTemperature, 1e-12, 0.0}) {
            std::vector<double> p = softmax_probabilities(scores, temp);
            // Ties break toward the first maximal entry.
            CHECK(p[0] == 1.0);
            CHECK(p[1] == 0.0);
            CHECK(p[2] == 0.0);
        }
    }
    SUBCASE("an empty score set is a caller error") {
        std::vector<double> none;
        CHECK_THROWS_AS(softmax_probabilities(none, 1.0), std::invalid_argument);
    }
}

TEST_CASE("sample_index follows the given distribution") {
    std::vector<double> probs = {0.25, 0.5, 0.25};
    Rng rng(99);
    std::array<int, 3> counts = {0, 0, 0};
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) counts[sample_index(probs, rng)] += 1;
    CHECK(counts[0] / static_cast<double>(draws) == doctest::Approx(0.25).epsilon(0.08));
    CHECK(counts[1] / static_cast<double>(draws) == doctest::Approx(0.50).epsilon(0.08));
    CHECK(counts[2] / static_cast<double>(draws) == doctest::Approx(0.25).epsilon(0.08));

    Rng a(7), b(7);
    for (int i = 0; i < 100; ++i)
        CHECK(sample_index(probs, a) == sample_index(probs, b));
}

TEST_CASE("policy names round-trip") {
    for (const char* name : {"subgoal", "random", "lookahead5", "mcs"}) {
        std::optional<Policy> p = Policy::from_name(name);
        REQUIRE(p.has_value());
        CHECK(p->name() == name);
        CHECK(kPolicyNames.find(name) != std::string_view::npos);
    }
    CHECK(!Policy::from_name("minimax").has_value());
    CHECK(!Policy::from_name("").has_value());
    CHECK(!Policy::from_name("Subgoal").has_value());
}

TEST_CASE("uniform random policy is uniform over the empty board") {
    GameSpec ttt = spec_of("board 3x3; win 3");
    GameState s = initial_state(ttt);
    Rng rng(2024);
    std::map<Cell, int> counts;
    const int draws = 90000;
    for (int i = 0; i < draws; ++i) counts[choose_move_random(s, ttt, rng)] += 1;
    REQUIRE(counts.size() == 9);
    for (const auto& [cell, n] : counts)
        CHECK(n / static_cast<double>(draws) == doctest::Approx(1.0 / 9).epsilon(0.09));
}

TEST_CASE("subgoal policy plays the center argmax at zero temperature") {
    GameSpec ttt = spec_of("board 3x3; win 3");
    GameState s = initial_state(ttt);
    AgentConfig config;
    config.softmax_temperature = 0.0;
    Rng rng(5);
    for (int i = 0; i < 25; ++i)
        CHECK(choose_move_subgoal(s, ttt, config, rng) == Cell{1, 1});
}

TEST_CASE("lookahead converts wins and blocks losses") {
    GameSpec spec = spec_of("board 5x5; win 3");
    AgentConfig config;

    SUBCASE("an immediate completion shows up as the terminal sentinel") {
        GameState s = play(spec, {{0, 0}, {4, 4}, {0, 1}, {4, 3}});
        std::vector<std::pair<Cell, double>> values =
            lookahead_root_values(s, spec, config);
        CHECK(values.size() <= static_cast<std::size_t>(config.lookahead_beam));
        CHECK(estimate_for(values, Cell{0, 2}) == detail::kTerminalScore);
        // Every sampled move converts a forced win (several exist here: the
        // direct completion and the block that keeps a double threat alive).
        Rng rng(11);
        for (int i = 0; i < 20; ++i) {
            Cell chosen = choose_move_lookahead(s, spec, config, rng);
            CHECK(estimate_for(values, chosen) == detail::kTerminalScore);
        }
    }
    SUBCASE("a lone enemy threat gets blocked") {
        GameSpec ttt = spec_of("board 3x3; win 3");
        GameState s = play(ttt, {{2, 1}, {0, 0}, {1, 2}, {0, 1}});
        REQUIRE(s.to_move() == PlayerId::First);
        // (0,2) is the only move that does not lose to the open two on the
        // top row, so its backed-up value is the only finite one.
        Rng rng(13);
        for (int i = 0; i < 20; ++i)
            CHECK(choose_move_lookahead(s, ttt, config, rng) == Cell{0, 2});
    }
}

TEST_CASE("Monte Carlo estimates: exact terminals and tactical rollouts") {
    GameSpec ttt = spec_of("board 3x3; win 3");
    AgentConfig config;

    // First threatens (0,2); the opponent threatens (1,2).
    GameState s = play(ttt, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    REQUIRE(s.to_move() == PlayerId::First);
    std::vector<std::pair<Cell, double>> est = mcs_estimates(s, ttt, config, 42);

    SUBCASE("a completing move is worth exactly +1") {
        CHECK(estimate_for(est, Cell{0, 2}) == 1.0);
    }
    SUBCASE("leaving the opponent's completion open is worth exactly -1") {
        // After any non-blocking move the rollout opponent takes its win on
        // the spot, every rollout.
        CHECK(estimate_for(est, Cell{2, 2}) == -1.0);
        CHECK(estimate_for(est, Cell{2, 0}) == -1.0);
    }
    SUBCASE("blocking keeps the game alive") {
        CHECK(estimate_for(est, Cell{1, 2}) > -0.9);
    }
    SUBCASE("all estimates are mean payoffs in [-1, 1]") {
        for (const auto& [cell, e] : est) {
            CHECK(e >= -1.0);
            CHECK(e <= 1.0);
        }
    }
    SUBCASE("the same base stream reproduces the estimates exactly") {
        std::vector<std::pair<Cell, double>> again =
            mcs_estimates(s, ttt, config, 42);
        REQUIRE(again.size() == est.size());
        for (std::size_t i = 0; i < est.size(); ++i) {
            CHECK(again[i].first == est[i].first);
            CHECK(again[i].second == est[i].second);
        }
    }
}

TEST_CASE("Monte Carlo estimates: completing a losing run is exactly -1") {
    GameSpec spec = spec_of("board 3x3; win 3; polarity = loses");
    AgentConfig config;
    GameState s = play(spec, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    std::vector<std::pair<Cell, double>> est = mcs_estimates(s, spec, config, 7);
    CHECK(estimate_for(est, Cell{0, 2}) == -1.0);
}

TEST_CASE("Monte Carlo estimates: filling an unwinnable board is exactly 0") {
    GameSpec spec = spec_of("board 2x2; win 3");
    AgentConfig config;
    GameState s = play(spec, {{0, 0}, {0, 1}, {1, 0}});
    std::vector<std::pair<Cell, double>> est = mcs_estimates(s, spec, config, 7);
    REQUIRE(est.size() == 1);
    CHECK(est[0].second == 0.0);
}

TEST_CASE("Monte Carlo estimates are symmetric across mirrored moves") {
    GameSpec ttt = spec_of("board 3x3; win 3");
    AgentConfig config;
    GameState s = play(ttt, {{1, 1}});  // the reply to a center opening
    std::vector<std::pair<Cell, double>> est = mcs_estimates(s, ttt, config, 3);
    // The position is symmetric under every dihedral map, so mirrored
    // candidates share a true value; at 20 rollouts the estimates agree
    // within the sampling slack.
    CHECK(std::abs(estimate_for(est, Cell{0, 0}) - estimate_for(est, Cell{2, 2})) <=
          0.25);
    CHECK(std::abs(estimate_for(est, Cell{0, 2}) - estimate_for(est, Cell{2, 0})) <=
          0.25);
    CHECK(std::abs(estimate_for(est, Cell{0, 1}) - estimate_for(est, Cell{1, 0})) <=
          0.25);
}

TEST_CASE("the Monte Carlo policy always takes an immediate win") {
    GameSpec spec = spec_of("board 5x5; win 3");
    AgentConfig config;
    GameState s = play(spec, {{2, 0}, {4, 4}, {2, 1}, {4, 3}});
    REQUIRE(s.to_move() == PlayerId::First);
    for (int seed = 0; seed < 30; ++seed) {
        Rng rng(seed);
        CHECK(choose_move_mcs(s, spec, config, rng) == Cell{2, 2});
    }
}

TEST_CASE("the Monte Carlo policy is deterministic for a fixed stream") {
    GameSpec ttt = spec_of("board 3x3; win 3");
    AgentConfig config;
    GameState s = play(ttt, {{1, 1}, {0, 0}});
    Rng a(31), b(31);
    for (int i = 0; i < 5; ++i)
        CHECK(choose_move_mcs(s, ttt, config, a) ==
              choose_move_mcs(s, ttt, config, b));
}

TEST_CASE("choose_move dispatches every policy to a legal move") {
    GameSpec ttt = spec_of("board 3x3; win 3");
    GameState s = play(ttt, {{1, 1}});
    for (const char* name : {"subgoal", "random", "lookahead5", "mcs"}) {
        Policy policy = *Policy::from_name(name);
        Rng rng(17);
        Cell c = choose_move(policy, s, ttt, rng);
        CHECK(!s.occupied(c));
        CHECK(s.geometry().in_bounds(c));
    }
}
