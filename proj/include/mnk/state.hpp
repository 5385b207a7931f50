// Game states and the transition function.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mnk/spec.hpp"

namespace mnk {

struct Status {
    enum class Kind : std::uint8_t { Ongoing, Won, Draw };

    Kind kind = Kind::Ongoing;
    PlayerId winner = PlayerId::First;  // meaningful only when kind == Won

    static Status ongoing() { return Status{Kind::Ongoing, PlayerId::First}; }
    static Status won(PlayerId by) { return Status{Kind::Won, by}; }
    static Status draw() { return Status{Kind::Draw, PlayerId::First}; }

    bool is_ongoing() const { return kind == Kind::Ongoing; }
    bool is_won() const { return kind == Kind::Won; }
    bool is_draw() const { return kind == Kind::Draw; }

    bool operator==(const Status&) const = default;
};

// Board occupancy plus turn bookkeeping. Values are immutable through the
// public surface; apply_move returns a fresh state, and apply_move_in_place
// is the documented copy-then-mutate equivalent for hot loops.
class GameState {
public:
    GameState() = default;

    static GameState initial(const GameSpec& spec) {
        GameState s;
        s.geometry_ = spec.geometry;
        if (spec.geometry.is_finite())
            s.grid_.assign(static_cast<std::size_t>(spec.geometry.cell_count()), kEmpty);
        s.to_move_ = PlayerId::First;
        s.placements_remaining_ = spec.opening.placements(PlayerId::First);
        return s;
    }

    const BoardGeometry& geometry() const { return geometry_; }
    PlayerId to_move() const { return to_move_; }
    int placements_remaining() const { return placements_remaining_; }
    int ply_count() const { return ply_count_; }
    Status status() const { return status_; }
    int piece_count(PlayerId p) const { return piece_counts_[player_index(p)]; }

    bool occupied(Cell c) const { return owner(c).has_value(); }

    std::optional<PlayerId> owner(Cell c) const {
        if (geometry_.is_finite()) {
            if (!geometry_.in_bounds(c)) return std::nullopt;
            std::int8_t v = grid_[flat_index(c)];
            if (v == kEmpty) return std::nullopt;
            return static_cast<PlayerId>(v);
        }
        auto it = pieces_.find(c);
        if (it == pieces_.end()) return std::nullopt;
        return it->second;
    }

    // All occupied cells with their owners, sorted by cell.
    std::vector<std::pair<Cell, PlayerId>> occupancy() const {
        std::vector<std::pair<Cell, PlayerId>> out;
        out.reserve(static_cast<std::size_t>(ply_count_));
        if (geometry_.is_finite()) {
            for (int r = 0; r < geometry_.rows; ++r)
                for (int c = 0; c < geometry_.cols; ++c) {
                    Cell cell{r, c};
                    std::int8_t v = grid_[flat_index(cell)];
                    if (v != kEmpty) out.emplace_back(cell, static_cast<PlayerId>(v));
                }
        } else {
            out.assign(pieces_.begin(), pieces_.end());
        }
        return out;
    }

    // Occupied cells on infinite boards, sorted; empty map for finite boards.
    const std::map<Cell, PlayerId>& infinite_pieces() const { return pieces_; }

    bool operator==(const GameState&) const = default;

private:
    static constexpr std::int8_t kEmpty = -1;

    std::size_t flat_index(Cell c) const {
        return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(geometry_.cols) +
               static_cast<std::size_t>(c.col);
    }

    void place(Cell c, PlayerId p) {
        if (geometry_.is_finite())
            grid_[flat_index(c)] = static_cast<std::int8_t>(p);
        else
            pieces_.emplace(c, p);
        piece_counts_[player_index(p)] += 1;
        ply_count_ += 1;
    }

    BoardGeometry geometry_;
    std::vector<std::int8_t> grid_;     // finite boards
    std::map<Cell, PlayerId> pieces_;   // infinite boards
    std::array<int, 2> piece_counts_ = {0, 0};
    PlayerId to_move_ = PlayerId::First;
    int placements_remaining_ = 1;
    int ply_count_ = 0;
    Status status_ = Status::ongoing();

    friend void apply_move_in_place(GameState&, Cell, const GameSpec&);
};

inline GameState initial_state(const GameSpec& spec) {
    return GameState::initial(spec);
}

// Length of the maximal contiguous line of `player` pieces through `cell`
// along `direction`, counting `cell` as occupied by `player` whether or not
// it actually is (hypothetical placement).
inline int run_length(const GameState& state, Cell cell, PlayerId player,
                      Direction direction) {
    if (auto o = state.owner(cell); o.has_value() && *o != player)
        throw std::invalid_argument("run_length: cell held by the other player");
    CellDelta d = direction_delta(direction);
    int length = 1;
    for (Cell c = step(cell, d); state.owner(c) == player; c = step(c, d)) ++length;
    CellDelta back{-d.d_row, -d.d_col};
    for (Cell c = step(cell, back); state.owner(c) == player; c = step(c, back))
        ++length;
    return length;
}

// Ordered action set. Finite boards: every empty cell in row-major order.
// Infinite boards: the canonical origin when empty, otherwise all empty cells
// within Chebyshev distance 1 of any piece, in lexicographic order.
inline std::vector<Cell> legal_moves(const GameState& state, const GameSpec& spec) {
    if (!state.status().is_ongoing())
        throw std::logic_error("legal_moves on a terminal state");
    std::vector<Cell> moves;
    if (spec.geometry.is_finite()) {
        moves.reserve(static_cast<std::size_t>(spec.geometry.cell_count() - state.ply_count()));
        for (int r = 0; r < spec.geometry.rows; ++r)
            for (int c = 0; c < spec.geometry.cols; ++c)
                if (!state.occupied(Cell{r, c})) moves.push_back(Cell{r, c});
        return moves;
    }
    if (state.ply_count() == 0) return {Cell{0, 0}};
    std::set<Cell> shell;
    for (const auto& [cell, owner] : state.infinite_pieces()) {
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                Cell n{cell.row + dr, cell.col + dc};
                if (!state.occupied(n)) shell.insert(n);
            }
    }
    moves.assign(shell.begin(), shell.end());
    return moves;
}

namespace detail {

// Win check restricted to lines through the one cell that just changed.
inline Status status_after_placement(const GameState& state, const GameSpec& spec,
                                     PlayerId mover, Cell placed) {
    const WinRule& rule = spec.rule(mover);
    for (Direction d : kAllDirections) {
        if (!rule.directions.contains(d)) continue;
        if (run_length(state, placed, mover, d) >= rule.target_run) {
            return rule.polarity == Polarity::CompletingWins
                       ? Status::won(mover)
                       : Status::won(opponent_of(mover));
        }
    }
    if (spec.geometry.is_finite() &&
        state.ply_count() == spec.geometry.cell_count())
        return Status::draw();
    return Status::ongoing();
}

inline bool within_action_window(const GameState& state, Cell cell) {
    if (state.ply_count() == 0) return cell == Cell{0, 0};
    for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            if (state.occupied(Cell{cell.row + dr, cell.col + dc})) return true;
        }
    return false;
}

}  // namespace detail

inline void apply_move_in_place(GameState& state, Cell cell, const GameSpec& spec) {
    if (!state.status().is_ongoing())
        throw std::logic_error("apply_move on a terminal state");
    if (!spec.geometry.in_bounds(cell))
        throw std::invalid_argument("apply_move: cell out of bounds");
    if (state.occupied(cell))
        throw std::invalid_argument("apply_move: cell already occupied");
    if (!spec.geometry.is_finite() && !detail::within_action_window(state, cell))
        throw std::invalid_argument("apply_move: cell outside the action window");

    PlayerId mover = state.to_move_;
    state.place(cell, mover);
    state.status_ = detail::status_after_placement(state, spec, mover, cell);
    if (!state.status_.is_ongoing()) return;  // remaining placements forfeited

    state.placements_remaining_ -= 1;
    if (state.placements_remaining_ == 0) {
        PlayerId next = opponent_of(mover);
        state.to_move_ = next;
        state.placements_remaining_ =
            state.piece_count(next) == 0 ? spec.opening.placements(next) : 1;
    }
}

inline GameState apply_move(const GameState& state, Cell cell, const GameSpec& spec) {
    GameState next = state;
    apply_move_in_place(next, cell, spec);
    return next;
}

// From-scratch terminal evaluation: scans every piece of the last mover.
// Pure in (occupancy, last mover, spec); must agree with the incremental
// update done inside apply_move.
inline Status terminal_status(const GameState& state, const GameSpec& spec,
                              PlayerId last_mover) {
    const WinRule& rule = spec.rule(last_mover);
    for (const auto& [cell, owner] : state.occupancy()) {
        if (owner != last_mover) continue;
        for (Direction d : kAllDirections) {
            if (!rule.directions.contains(d)) continue;
            if (run_length(state, cell, last_mover, d) >= rule.target_run)
                return rule.polarity == Polarity::CompletingWins
                           ? Status::won(last_mover)
                           : Status::won(opponent_of(last_mover));
        }
    }
    if (spec.geometry.is_finite() &&
        state.ply_count() == spec.geometry.cell_count())
        return Status::draw();
    return Status::ongoing();
}

}  // namespace mnk
