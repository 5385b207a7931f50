// Interchangeable move-selection policies: the subgoal heuristic agent and
// the random / depth-limited lookahead / Monte Carlo Search baselines.
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mnk/heuristic.hpp"
#include "mnk/rng.hpp"

namespace mnk {

struct AgentConfig {
    double softmax_temperature = 1.0;
    double defense_discount = 0.5;
    int lookahead_depth = 5;
    int lookahead_beam = 5;
    int mcs_rollouts_per_move = 20;
};

enum class PolicyKind : std::uint8_t {
    SubgoalHeuristic,
    UniformRandom,
    LookaheadSearch,
    MonteCarloSearch,
};

struct Policy {
    PolicyKind kind = PolicyKind::SubgoalHeuristic;
    AgentConfig config;

    static std::optional<Policy> from_name(std::string_view name) {
        if (name == "subgoal") return Policy{PolicyKind::SubgoalHeuristic, {}};
        if (name == "random") return Policy{PolicyKind::UniformRandom, {}};
        if (name == "lookahead5") return Policy{PolicyKind::LookaheadSearch, {}};
        if (name == "mcs") return Policy{PolicyKind::MonteCarloSearch, {}};
        return std::nullopt;
    }

    std::string name() const {
        switch (kind) {
            case PolicyKind::SubgoalHeuristic: return "subgoal";
            case PolicyKind::UniformRandom: return "random";
            case PolicyKind::LookaheadSearch: return "lookahead5";
            case PolicyKind::MonteCarloSearch: return "mcs";
        }
        return "?";
    }
};

inline constexpr std::string_view kPolicyNames = "subgoal | random | lookahead5 | mcs";

// Temperatures at or below this select the argmax outright (first in order on
// ties) instead of sampling.
inline constexpr double kArgmaxTemperature = 1e-9;

// Stabilized softmax: probabilities proportional to exp(score/temperature),
// computed with max subtraction so huge scores cannot overflow.
inline std::vector<double> softmax_probabilities(std::span<const double> scores,
                                                 double temperature) {
    if (scores.empty())
        throw std::invalid_argument("softmax over an empty score set");
    std::vector<double> probs(scores.size(), 0.0);
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = i;
    if (temperature <= kArgmaxTemperature) {
        probs[best] = 1.0;
        return probs;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        probs[i] = std::exp((scores[i] - scores[best]) / temperature);
        sum += probs[i];
    }
    for (double& p : probs) p /= sum;
    return probs;
}

inline std::size_t sample_index(std::span<const double> probabilities, Rng& rng) {
    double u = rng.next_unit();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        cumulative += probabilities[i];
        if (u < cumulative) return i;
    }
    return probabilities.size() - 1;  // guard against rounding at the tail
}

inline Cell softmax_select(const std::vector<MoveUtility>& utilities,
                           double temperature, Rng& rng) {
    if (utilities.empty())
        throw std::invalid_argument("softmax_select on an empty utility list");
    std::vector<double> values;
    values.reserve(utilities.size());
    for (const MoveUtility& u : utilities) values.push_back(u.v);
    std::vector<double> probs = softmax_probabilities(values, temperature);
    return utilities[sample_index(probs, rng)].cell;
}

inline Cell choose_move_subgoal(const GameState& state, const GameSpec& spec,
                                const AgentConfig& config, Rng& rng) {
    std::vector<MoveUtility> utilities = heuristic_utilities(
        state, spec, state.to_move(), {config.defense_discount});
    return softmax_select(utilities, config.softmax_temperature, rng);
}

inline Cell choose_move_random(const GameState& state, const GameSpec& spec,
                               Rng& rng) {
    std::vector<Cell> moves = legal_moves(state, spec);
    return moves[rng.next_below(moves.size())];
}

namespace detail {

inline constexpr double kTerminalScore = 1e6;

struct RankedMove {
    Cell cell;
    double exponent;
};

// The beam: highest-exponent moves for the player to move, ties kept in the
// deterministic cell order.
inline std::vector<RankedMove> beam_moves(const GameState& state,
                                          const GameSpec& spec, PlayerId mover,
                                          const AgentConfig& cfg) {
    std::vector<MoveUtility> utils =
        heuristic_utilities(state, spec, mover, {cfg.defense_discount});
    std::vector<RankedMove> ranked;
    ranked.reserve(utils.size());
    for (const MoveUtility& u : utils) ranked.push_back({u.cell, u.exponent});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedMove& a, const RankedMove& b) {
                         return a.exponent > b.exponent;
                     });
    if (ranked.size() > static_cast<std::size_t>(cfg.lookahead_beam))
        ranked.resize(static_cast<std::size_t>(cfg.lookahead_beam));
    return ranked;
}

inline double best_exponent(const GameState& state, const GameSpec& spec,
                            PlayerId player, const AgentConfig& cfg) {
    std::vector<MoveUtility> utils =
        heuristic_utilities(state, spec, player, {cfg.defense_discount});
    double best = -std::numeric_limits<double>::infinity();
    for (const MoveUtility& u : utils) best = std::max(best, u.exponent);
    return best;
}

inline double lookahead_value(const GameState& state, const GameSpec& spec,
                              PlayerId root, int depth, const AgentConfig& cfg);

inline double lookahead_child_value(const GameState& child, const GameSpec& spec,
                                    PlayerId root, int depth,
                                    const AgentConfig& cfg) {
    if (child.status().is_won())
        return child.status().winner == root ? kTerminalScore : -kTerminalScore;
    if (child.status().is_draw()) return 0.0;
    return lookahead_value(child, spec, root, depth, cfg);
}

// `state` is non-terminal; `depth` placements have been made below the root.
inline double lookahead_value(const GameState& state, const GameSpec& spec,
                              PlayerId root, int depth, const AgentConfig& cfg) {
    if (depth >= cfg.lookahead_depth)
        return best_exponent(state, spec, root, cfg) -
               best_exponent(state, spec, opponent_of(root), cfg);
    PlayerId mover = state.to_move();
    double best = mover == root ? -std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::infinity();
    for (const RankedMove& rm : beam_moves(state, spec, mover, cfg)) {
        double v = lookahead_child_value(apply_move(state, rm.cell, spec), spec,
                                         root, depth + 1, cfg);
        best = mover == root ? std::max(best, v) : std::min(best, v);
    }
    return best;
}

}  // namespace detail

// Depth-limited alternating-play search. Each ply expands the beam of
// highest-exponent moves for the player to move; terminal children score
// +/-kTerminalScore (draw 0) from the root player's perspective; depth-limit
// leaves score as the difference of the two players' best heuristic
// exponents; interior nodes back up max on the root player's turns and min
// otherwise.
inline std::vector<std::pair<Cell, double>> lookahead_root_values(
    const GameState& state, const GameSpec& spec, const AgentConfig& config) {
    PlayerId root = state.to_move();
    std::vector<std::pair<Cell, double>> values;
    for (const detail::RankedMove& rm :
         detail::beam_moves(state, spec, root, config))
        values.emplace_back(rm.cell,
                            detail::lookahead_child_value(
                                apply_move(state, rm.cell, spec), spec, root, 1,
                                config));
    return values;
}

// The root move is sampled via softmax over the backed-up values.
inline Cell choose_move_lookahead(const GameState& state, const GameSpec& spec,
                                  const AgentConfig& config, Rng& rng) {
    std::vector<std::pair<Cell, double>> candidates =
        lookahead_root_values(state, spec, config);
    std::vector<double> values;
    values.reserve(candidates.size());
    for (const auto& [cell, value] : candidates) values.push_back(value);
    std::vector<double> probs =
        softmax_probabilities(values, config.softmax_temperature);
    return candidates[sample_index(probs, rng)].first;
}

namespace detail {

// True when placing `mover`'s piece at `cell` ends the game as a win for
// `mover` under their own rule. Never true under completing-loses polarity,
// where finishing a run is a loss, not a win.
inline bool placement_wins(const GameState& state, const GameSpec& spec,
                           PlayerId mover, Cell cell) {
    const WinRule& rule = spec.rule(mover);
    if (rule.polarity != Polarity::CompletingWins) return false;
    for (Direction d : kAllDirections)
        if (rule.directions.contains(d) &&
            run_length(state, cell, mover, d) >= rule.target_run)
            return true;
    return false;
}

// Rollout to a terminal state or the placement cap; payoff from
// `perspective`: win 1, loss -1, draw (including capped) 0. The rollout
// agent plays uniformly at random except for forced tactical moves, checked
// in order: it takes an immediately winning placement, else blocks a cell
// where the opponent could immediately win. These decisive/anti-decisive
// moves are what polarize the per-candidate estimates: a candidate that
// leaves the mover's completion open is punished on the very next rollout
// ply, every rollout, so it estimates near -1 instead of drowning in
// sampling noise, while a single blockable threat gets refuted in-rollout
// and scores well below a genuine double threat.
inline double random_rollout_payoff(GameState state, const GameSpec& spec,
                                    PlayerId perspective, int move_cap,
                                    Rng& rng) {
    while (state.status().is_ongoing() && state.ply_count() < move_cap) {
        std::vector<Cell> moves = legal_moves(state, spec);
        PlayerId mover = state.to_move();
        PlayerId rival = opponent_of(mover);
        Cell pick{0, 0};
        bool forced = false;
        for (Cell c : moves)
            if (placement_wins(state, spec, mover, c)) {
                pick = c;
                forced = true;
                break;
            }
        if (!forced)
            for (Cell c : moves)
                if (placement_wins(state, spec, rival, c)) {
                    pick = c;
                    forced = true;
                    break;
                }
        if (!forced) pick = moves[rng.next_below(moves.size())];
        apply_move_in_place(state, pick, spec);
    }
    if (state.status().is_won())
        return state.status().winner == perspective ? 1.0 : -1.0;
    return 0.0;
}

}  // namespace detail

// Flat Monte Carlo Search: estimate each candidate move by rollouts from the
// position after playing it. A move that immediately ends the game gets its
// exact payoff instead of sampled rollouts. Every rollout runs on its own
// sub-stream derived from `base`, so a parallel schedule would produce the
// same estimates as this sequential one.
inline std::vector<std::pair<Cell, double>> mcs_estimates(
    const GameState& state, const GameSpec& spec, const AgentConfig& config,
    std::uint64_t base) {
    PlayerId mover = state.to_move();
    std::vector<Cell> moves = legal_moves(state, spec);
    int cap = effective_board_size(spec);

    std::vector<std::pair<Cell, double>> estimates;
    estimates.reserve(moves.size());
    for (std::size_t i = 0; i < moves.size(); ++i) {
        GameState next = apply_move(state, moves[i], spec);
        double estimate;
        if (!next.status().is_ongoing()) {
            estimate = next.status().is_won()
                           ? (next.status().winner == mover ? 1.0 : -1.0)
                           : 0.0;
        } else {
            double sum = 0.0;
            for (int j = 0; j < config.mcs_rollouts_per_move; ++j) {
                Rng rollout_rng(
                    derive_substream(base, i, static_cast<std::uint64_t>(j)));
                sum += detail::random_rollout_payoff(next, spec, mover, cap,
                                                     rollout_rng);
            }
            estimate = sum / config.mcs_rollouts_per_move;
        }
        estimates.emplace_back(moves[i], estimate);
    }
    return estimates;
}

// Samples a move via softmax over the Monte Carlo utility estimates, with
// two sharpenings that make the agent convert winning positions instead of
// wandering among ties:
//  - An immediately winning placement is played outright. Its value is exact
//    (+1 with zero variance); sampling adds nothing, and in a won position
//    many non-winning moves also estimate +1, which would leave the actual
//    win to a coin flip among the ties.
//  - The softmax sees each move's accumulated rollout payoff (rollout count
//    x mean), not the mean itself: means live in [-1, 1], where a
//    unit-temperature softmax stays near uniform and even a known win would
//    be picked no more than ~25% of the time.
inline Cell choose_move_mcs(const GameState& state, const GameSpec& spec,
                            const AgentConfig& config, Rng& rng) {
    PlayerId mover = state.to_move();
    for (Cell c : legal_moves(state, spec))
        if (detail::placement_wins(state, spec, mover, c)) return c;
    std::vector<std::pair<Cell, double>> estimates =
        mcs_estimates(state, spec, config, rng.next_u64());
    std::vector<double> values;
    values.reserve(estimates.size());
    for (const auto& [cell, estimate] : estimates)
        values.push_back(estimate * config.mcs_rollouts_per_move);
    std::vector<double> probs =
        softmax_probabilities(values, config.softmax_temperature);
    return estimates[sample_index(probs, rng)].first;
}

inline Cell choose_move(const Policy& policy, const GameState& state,
                        const GameSpec& spec, Rng& rng) {
    switch (policy.kind) {
        case PolicyKind::SubgoalHeuristic:
            return choose_move_subgoal(state, spec, policy.config, rng);
        case PolicyKind::UniformRandom:
            return choose_move_random(state, spec, rng);
        case PolicyKind::LookaheadSearch:
            return choose_move_lookahead(state, spec, policy.config, rng);
        case PolicyKind::MonteCarloSearch:
            return choose_move_mcs(state, spec, policy.config, rng);
    }
    throw std::logic_error("unknown policy kind");
}

}  // namespace mnk
