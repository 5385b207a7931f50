// Basic board vocabulary: players, cells, line directions, board geometry.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mnk {

enum class PlayerId : std::uint8_t { First = 0, Second = 1 };

constexpr PlayerId opponent_of(PlayerId p) {
    return p == PlayerId::First ? PlayerId::Second : PlayerId::First;
}

constexpr std::size_t player_index(PlayerId p) {
    return static_cast<std::size_t>(p);
}

constexpr std::array<PlayerId, 2> kBothPlayers = {PlayerId::First,
                                                  PlayerId::Second};

inline std::string player_name(PlayerId p) {
    return p == PlayerId::First ? "first" : "second";
}

// Lines are undirected; each enumerator stands for a full line orientation.
enum class Direction : std::uint8_t {
    Horizontal = 0,
    Vertical = 1,
    DiagonalRising = 2,   // bottom-left to top-right
    DiagonalFalling = 3,  // top-left to bottom-right
};

constexpr std::array<Direction, 4> kAllDirections = {
    Direction::Horizontal, Direction::Vertical, Direction::DiagonalRising,
    Direction::DiagonalFalling};

struct CellDelta {
    int d_row;
    int d_col;
};

constexpr CellDelta direction_delta(Direction d) {
    switch (d) {
        case Direction::Horizontal: return {0, 1};
        case Direction::Vertical: return {1, 0};
        case Direction::DiagonalRising: return {-1, 1};
        case Direction::DiagonalFalling: return {1, 1};
    }
    return {0, 0};
}

// Set of line orientations, stored as a bitmask.
class DirectionSet {
public:
    constexpr DirectionSet() = default;

    static constexpr DirectionSet all() { return DirectionSet(0b1111); }
    static constexpr DirectionSet none() { return DirectionSet(0); }
    static constexpr DirectionSet orthogonal() { return DirectionSet(0b0011); }
    static constexpr DirectionSet diagonal() { return DirectionSet(0b1100); }

    static constexpr DirectionSet of(Direction d) {
        return DirectionSet(static_cast<std::uint8_t>(1u << static_cast<unsigned>(d)));
    }

    constexpr bool contains(Direction d) const {
        return (bits_ >> static_cast<unsigned>(d)) & 1u;
    }
    constexpr DirectionSet& insert(Direction d) {
        bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(d));
        return *this;
    }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const {
        int n = 0;
        for (Direction d : kAllDirections) n += contains(d) ? 1 : 0;
        return n;
    }
    constexpr bool operator==(const DirectionSet&) const = default;

private:
    explicit constexpr DirectionSet(std::uint8_t bits) : bits_(bits) {}
    std::uint8_t bits_ = 0;
};

struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

inline Cell step(Cell c, CellDelta d, int n = 1) {
    return Cell{c.row + d.d_row * n, c.col + d.d_col * n};
}

// Finite rectangular grid or the unbounded integer plane.
struct BoardGeometry {
    enum class Kind : std::uint8_t { Finite, Infinite };

    Kind kind = Kind::Finite;
    int rows = 0;  // meaningful only when finite
    int cols = 0;

    static BoardGeometry finite(int rows, int cols) {
        return BoardGeometry{Kind::Finite, rows, cols};
    }
    static BoardGeometry infinite() { return BoardGeometry{Kind::Infinite, 0, 0}; }

    bool is_finite() const { return kind == Kind::Finite; }

    bool in_bounds(Cell c) const {
        if (!is_finite()) return true;
        return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
    }

    int cell_count() const {
        if (!is_finite()) throw std::logic_error("cell_count on infinite board");
        return rows * cols;
    }

    bool operator==(const BoardGeometry&) const = default;
};

}  // namespace mnk
