// Seeded game simulation (move-capped "partial" and run-to-terminal "full"
// modes) and the reductions built on it: outcome distributions, expected
// payoff, outcome entropy, advantage against a random opponent, expected game
// length, and the bundled fun features.
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mnk/agents.hpp"

namespace mnk {

enum class SimulationMode : std::uint8_t { Partial, Full };

inline std::string mode_name(SimulationMode mode) {
    return mode == SimulationMode::Partial ? "partial" : "full";
}

struct EstimatorConfig {
    int num_simulations = 20;
    SimulationMode mode = SimulationMode::Partial;
    Policy first_policy{PolicyKind::SubgoalHeuristic, {}};
    Policy second_policy{PolicyKind::SubgoalHeuristic, {}};
    std::uint64_t master_seed = 0;
};

struct OutcomeDistribution {
    int first_wins = 0;
    int second_wins = 0;
    int draws = 0;
    int k = 0;

    double p_first() const { return k > 0 ? static_cast<double>(first_wins) / k : 0.0; }
    double p_second() const { return k > 0 ? static_cast<double>(second_wins) / k : 0.0; }
    double p_draw() const { return k > 0 ? static_cast<double>(draws) / k : 0.0; }
};

struct SimulationRecord {
    std::string game_id;
    int sim_index = 0;
    int move_cap = 0;
    std::vector<Cell> moves;
    Status outcome = Status::draw();
    int length = 0;
};

struct EstimationResult {
    OutcomeDistribution distribution;
    std::vector<SimulationRecord> records;
};

// Alternating play from the initial state until a win, a full board, or
// move_cap total placements; a playout cut off by the cap scores as a draw.
inline SimulationRecord simulate_game(const GameSpec& spec,
                                      const Policy& first_policy,
                                      const Policy& second_policy, int move_cap,
                                      Rng& rng) {
    if (move_cap < 1)
        throw std::invalid_argument("simulate_game: move_cap must be >= 1");
    SimulationRecord record;
    record.game_id = spec.id;
    record.move_cap = move_cap;
    GameState state = initial_state(spec);
    while (state.status().is_ongoing() && state.ply_count() < move_cap) {
        const Policy& policy = state.to_move() == PlayerId::First
                                   ? first_policy
                                   : second_policy;
        Cell cell = choose_move(policy, state, spec, rng);
        apply_move_in_place(state, cell, spec);
        record.moves.push_back(cell);
    }
    record.outcome = state.status().is_won() ? state.status() : Status::draw();
    record.length = state.ply_count();
    return record;
}

// Runs k seeded simulations and tallies outcomes. Each simulation gets its
// own derived rng stream, so results do not depend on execution order. In
// Partial mode the stream's first draw picks the move cap uniformly from
// {1, ..., effective_board_size}; Full mode always plays to the cap.
inline EstimationResult estimate_outcomes(const GameSpec& spec,
                                          const EstimatorConfig& config) {
    if (config.num_simulations < 1)
        throw std::invalid_argument("estimate_outcomes: k must be >= 1");
    EstimationResult result;
    int board_size = effective_board_size(spec);
    for (int i = 0; i < config.num_simulations; ++i) {
        Rng rng(derive_stream(config.master_seed, spec.id,
                              static_cast<std::uint64_t>(i), "outcome"));
        int cap = config.mode == SimulationMode::Partial
                      ? 1 + static_cast<int>(rng.next_below(
                                static_cast<std::uint64_t>(board_size)))
                      : board_size;
        SimulationRecord record = simulate_game(spec, config.first_policy,
                                                config.second_policy, cap, rng);
        record.sim_index = i;
        if (record.outcome.is_won()) {
            if (record.outcome.winner == PlayerId::First)
                ++result.distribution.first_wins;
            else
                ++result.distribution.second_wins;
        } else {
            ++result.distribution.draws;
        }
        result.records.push_back(std::move(record));
    }
    result.distribution.k = config.num_simulations;
    return result;
}

// Expected utility to the first player: win +1, loss -1, draw 0.
inline double expected_payoff(const OutcomeDistribution& dist) {
    if (dist.k < 1) throw std::invalid_argument("expected_payoff: empty distribution");
    return static_cast<double>(dist.first_wins - dist.second_wins) / dist.k;
}

// Shannon entropy in bits of the three-outcome distribution, with 0*log0 = 0.
inline double outcome_entropy(const OutcomeDistribution& dist) {
    if (dist.k < 1) throw std::invalid_argument("outcome_entropy: empty distribution");
    double entropy = 0.0;
    for (double p : {dist.p_first(), dist.p_second(), dist.p_draw()})
        if (p > 0.0) entropy -= p * std::log2(p);
    return entropy;
}

// P(first player wins | game was not a draw); empty when every simulation
// drew, since the conditional is undefined there.
inline std::optional<double> p_first_given_not_draw(const OutcomeDistribution& dist) {
    int decided = dist.first_wins + dist.second_wins;
    if (decided == 0) return std::nullopt;
    return static_cast<double>(dist.first_wins) / decided;
}

namespace detail {

inline double seated_payoff_to_agent(const GameSpec& spec, const Policy& agent,
                                     PlayerId seat, int k, std::uint64_t master_seed,
                                     std::string_view role) {
    Policy random{PolicyKind::UniformRandom, {}};
    const Policy& first = seat == PlayerId::First ? agent : random;
    const Policy& second = seat == PlayerId::Second ? agent : random;
    int cap = effective_board_size(spec);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        Rng rng(derive_stream(master_seed, spec.id, static_cast<std::uint64_t>(i), role));
        SimulationRecord record = simulate_game(spec, first, second, cap, rng);
        if (record.outcome.is_won())
            total += record.outcome.winner == seat ? 1.0 : -1.0;
    }
    return total / k;
}

}  // namespace detail

// Mean payoff earned by the agent against a uniform-random opponent across
// full simulations, averaged 1/2 each over the two seat assignments.
inline double advantage_vs_random(const GameSpec& spec, int k_per_ordering,
                                  std::uint64_t master_seed,
                                  const Policy& agent = Policy{PolicyKind::SubgoalHeuristic, {}}) {
    if (k_per_ordering < 1)
        throw std::invalid_argument("advantage_vs_random: k must be >= 1");
    double as_first = detail::seated_payoff_to_agent(
        spec, agent, PlayerId::First, k_per_ordering, master_seed, "advantage-first");
    double as_second = detail::seated_payoff_to_agent(
        spec, agent, PlayerId::Second, k_per_ordering, master_seed, "advantage-second");
    return 0.5 * (as_first + as_second);
}

// Mean placement count over k full simulations with subgoal agents on both
// sides.
inline double expected_length(const GameSpec& spec, int k,
                              std::uint64_t master_seed) {
    if (k < 1) throw std::invalid_argument("expected_length: k must be >= 1");
    Policy subgoal{PolicyKind::SubgoalHeuristic, {}};
    int cap = effective_board_size(spec);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        Rng rng(derive_stream(master_seed, spec.id, static_cast<std::uint64_t>(i), "length"));
        total += simulate_game(spec, subgoal, subgoal, cap, rng).length;
    }
    return total / k;
}

struct FunFeatures {
    double outcome_entropy = 0.0;
    double advantage = 0.0;
    double expected_length = 0.0;
    std::optional<double> external_score;
};

// The three model-derived fun features for one game: outcome entropy from
// move-capped subgoal-vs-subgoal simulation, advantage of the subgoal agent
// over random play, and expected game length under subgoal agents.
inline FunFeatures compute_fun_features(const GameSpec& spec, int k,
                                        std::uint64_t master_seed) {
    EstimatorConfig config;
    config.num_simulations = k;
    config.mode = SimulationMode::Partial;
    config.master_seed = master_seed;
    FunFeatures features;
    features.outcome_entropy =
        outcome_entropy(estimate_outcomes(spec, config).distribution);
    features.advantage = advantage_vs_random(spec, k, master_seed);
    features.expected_length = expected_length(spec, k, master_seed);
    return features;
}

// A named agent/mode bundle as exposed on the command line.
struct ModelSpec {
    std::string name;
    Policy first;
    Policy second;
    SimulationMode mode = SimulationMode::Partial;

    static std::optional<ModelSpec> from_name(std::string_view name) {
        Policy subgoal{PolicyKind::SubgoalHeuristic, {}};
        Policy random{PolicyKind::UniformRandom, {}};
        Policy lookahead{PolicyKind::LookaheadSearch, {}};
        Policy mcs{PolicyKind::MonteCarloSearch, {}};
        if (name == "subgoal-partial")
            return ModelSpec{"subgoal-partial", subgoal, subgoal, SimulationMode::Partial};
        if (name == "random-partial")
            return ModelSpec{"random-partial", random, random, SimulationMode::Partial};
        if (name == "random-full")
            return ModelSpec{"random-full", random, random, SimulationMode::Full};
        if (name == "lookahead5-full")
            return ModelSpec{"lookahead5-full", lookahead, lookahead, SimulationMode::Full};
        if (name == "mcs-full")
            return ModelSpec{"mcs-full", mcs, mcs, SimulationMode::Full};
        return std::nullopt;
    }
};

inline constexpr std::string_view kModelNames =
    "subgoal-partial | random-partial | random-full | lookahead5-full | mcs-full";

}  // namespace mnk
