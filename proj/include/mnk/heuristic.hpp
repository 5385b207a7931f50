// Per-cell move utilities for the subgoal heuristic agent.
//
// Each candidate cell is scored from three components evaluable on the
// current board with one step of lookahead:
//   d   normalized distance from the board center (or piece centroid),
//   n1  best own run the placement would entail along allowed directions,
//       plus 1 when it reaches the winning length,
//   n2  best opponent run the cell denies, discounted by defense_discount
//       except when it denies a completed run.
// The cell utility is v = 2^((1-d) + n1 + n2).
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mnk/state.hpp"

namespace mnk {

struct MoveUtility {
    Cell cell;
    double d = 0.0;
    double n1 = 0.0;          // effective progress term (see note below)
    double n2_adjusted = 0.0; // effective blocking term
    double exponent = 0.0;    // (1 - d) + n1 + n2_adjusted, always exactly
    double v = 0.0;           // 2^exponent
};

struct HeuristicParams {
    double defense_discount = 0.5;
};

namespace detail {

inline double euclid(double dr, double dc) { return std::sqrt(dr * dr + dc * dc); }

// d for every cell in `cells`. Finite boards measure from the coordinate
// center and normalize by the corner distance; infinite boards measure from
// the centroid of placed pieces and normalize by the farthest candidate.
inline std::vector<double> center_distances(const std::vector<Cell>& cells,
                                            const GameState& state,
                                            const GameSpec& spec) {
    std::vector<double> out(cells.size(), 0.0);
    double center_row = 0.0;
    double center_col = 0.0;
    double norm = 0.0;
    if (spec.geometry.is_finite()) {
        center_row = (spec.geometry.rows - 1) / 2.0;
        center_col = (spec.geometry.cols - 1) / 2.0;
        norm = euclid(center_row, center_col);  // distance to cell (0,0)
    } else {
        if (state.ply_count() == 0) return out;
        for (const auto& [cell, owner] : state.infinite_pieces()) {
            center_row += cell.row;
            center_col += cell.col;
        }
        center_row /= state.ply_count();
        center_col /= state.ply_count();
        for (const Cell& c : cells)
            norm = std::max(norm, euclid(c.row - center_row, c.col - center_col));
    }
    if (norm <= 0.0) return out;  // single-cell board or degenerate window
    for (std::size_t i = 0; i < cells.size(); ++i)
        out[i] = euclid(cells[i].row - center_row, cells[i].col - center_col) / norm;
    return out;
}

inline int best_run(const GameState& state, Cell cell, PlayerId player,
                    const WinRule& rule) {
    int best = 0;
    for (Direction dir : kAllDirections) {
        if (!rule.directions.contains(dir)) continue;
        best = std::max(best, run_length(state, cell, player, dir));
    }
    return best;
}

}  // namespace detail

inline double center_distance(Cell cell, const GameState& state,
                              const GameSpec& spec) {
    std::vector<Cell> cells = legal_moves(state, spec);
    std::vector<double> d = detail::center_distances(cells, state, spec);
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i] == cell) return d[i];
    throw std::invalid_argument("center_distance: cell is not a legal move");
}

// Best own run the placement entails, capped at target_run, with +1 on top
// when the run reaches target_run.
inline double progress_score(const GameState& state, Cell cell, PlayerId mover,
                             const GameSpec& spec) {
    const WinRule& rule = spec.rule(mover);
    int raw = detail::best_run(state, cell, mover, rule);
    return raw >= rule.target_run ? rule.target_run + 1 : raw;
}

// Best opponent run this cell denies (the run the opponent would get by
// playing here), capped at their target_run; discounted unless it denies a
// completed run.
inline double blocking_score(const GameState& state, Cell cell, PlayerId mover,
                             const GameSpec& spec,
                             double defense_discount = 0.5) {
    PlayerId opp = opponent_of(mover);
    const WinRule& rule = spec.rule(opp);
    int raw = detail::best_run(state, cell, opp, rule);
    int capped = std::min(raw, rule.target_run);
    return capped == rule.target_run ? capped : capped - defense_discount;
}

// One MoveUtility per legal move for `mover`. The caller may pass a mover
// other than state.to_move() to score a hypothetical turn.
//
// CompletingLoses polarity flips the goal structure: completing one's own
// losing run scores -(target_run + 1) and sub-target runs contribute 0, and
// when the opponent's rule is CompletingLoses the blocking term is 0. In
// those games the stored n1/n2_adjusted are these effective terms, so the
// identity exponent == (1 - d) + n1 + n2_adjusted always holds.
inline std::vector<MoveUtility> heuristic_utilities(
    const GameState& state, const GameSpec& spec, PlayerId mover,
    const HeuristicParams& params = {}) {
    if (!state.status().is_ongoing())
        throw std::logic_error("heuristic_utilities on a terminal state");
    std::vector<Cell> cells = legal_moves(state, spec);
    std::vector<double> dist = detail::center_distances(cells, state, spec);

    const WinRule& own_rule = spec.rule(mover);
    const WinRule& opp_rule = spec.rule(opponent_of(mover));

    std::vector<MoveUtility> out;
    out.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        MoveUtility u;
        u.cell = cells[i];
        u.d = dist[i];

        if (own_rule.polarity == Polarity::CompletingWins) {
            u.n1 = progress_score(state, cells[i], mover, spec);
        } else {
            int raw = detail::best_run(state, cells[i], mover, own_rule);
            u.n1 = raw >= own_rule.target_run ? -(own_rule.target_run + 1.0) : 0.0;
        }

        u.n2_adjusted = opp_rule.polarity == Polarity::CompletingWins
                            ? blocking_score(state, cells[i], mover, spec,
                                             params.defense_discount)
                            : 0.0;

        u.exponent = (1.0 - u.d) + u.n1 + u.n2_adjusted;
        u.v = std::exp2(u.exponent);
        out.push_back(u);
    }
    return out;
}

}  // namespace mnk
