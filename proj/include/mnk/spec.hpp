// Game specifications: per-player win rules, opening rule, validation.
#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "mnk/board.hpp"

namespace mnk {

// CompletingLoses inverts the reward: the player who completes a run of
// target_run length immediately loses.
enum class Polarity : std::uint8_t { CompletingWins, CompletingLoses };

struct WinRule {
    int target_run = 3;
    DirectionSet directions = DirectionSet::all();
    Polarity polarity = Polarity::CompletingWins;

    bool operator==(const WinRule&) const = default;
};

// How many placements each player gets on their very first turn.
struct OpeningRule {
    std::array<int, 2> first_turn_placements = {1, 1};

    int placements(PlayerId p) const {
        return first_turn_placements[player_index(p)];
    }
    int& placements(PlayerId p) { return first_turn_placements[player_index(p)]; }

    bool operator==(const OpeningRule&) const = default;
};

struct GameSpec {
    std::string id;
    std::string category;
    BoardGeometry geometry = BoardGeometry::finite(3, 3);
    std::array<WinRule, 2> rules = {WinRule{}, WinRule{}};
    OpeningRule opening;

    const WinRule& rule(PlayerId p) const { return rules[player_index(p)]; }
    WinRule& rule(PlayerId p) { return rules[player_index(p)]; }

    bool operator==(const GameSpec&) const = default;
};

struct ValidationIssue {
    enum class Severity : std::uint8_t { Error, Warning };
    Severity severity = Severity::Error;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const {
        for (const auto& i : issues)
            if (i.severity == ValidationIssue::Severity::Error) return false;
        return true;
    }
    std::vector<std::string> errors() const {
        std::vector<std::string> out;
        for (const auto& i : issues)
            if (i.severity == ValidationIssue::Severity::Error)
                out.push_back(i.message);
        return out;
    }
    std::vector<std::string> warnings() const {
        std::vector<std::string> out;
        for (const auto& i : issues)
            if (i.severity == ValidationIssue::Severity::Warning)
                out.push_back(i.message);
        return out;
    }
};

inline constexpr int kMaxBoardDimension = 100;

// Checks type invariants. The spec itself is returned unchanged by design;
// callers keep using their copy when the report has no errors. A finite board
// too small to fit either player's run is only a warning: the game is
// unwinnable but representable, and such games terminate in a draw.
inline ValidationReport validate_spec(const GameSpec& spec) {
    ValidationReport report;
    auto error = [&](std::string msg) {
        report.issues.push_back({ValidationIssue::Severity::Error, std::move(msg)});
    };
    auto warning = [&](std::string msg) {
        report.issues.push_back({ValidationIssue::Severity::Warning, std::move(msg)});
    };

    if (spec.geometry.is_finite()) {
        if (spec.geometry.rows <= 0 || spec.geometry.cols <= 0)
            error("zero board dimension");
        if (spec.geometry.rows > kMaxBoardDimension ||
            spec.geometry.cols > kMaxBoardDimension)
            error("board dimension above " + std::to_string(kMaxBoardDimension));
    }

    for (PlayerId p : kBothPlayers) {
        const WinRule& rule = spec.rule(p);
        if (rule.target_run < 2)
            error(player_name(p) + " player target_run below 2");
        if (rule.directions.empty())
            error(player_name(p) + " player has empty direction set");
    }

    int doubles = 0;
    for (PlayerId p : kBothPlayers) {
        int n = spec.opening.placements(p);
        if (n != 1 && n != 2)
            error("opening placements for " + player_name(p) +
                  " player outside {1,2}");
        if (n == 2) ++doubles;
    }
    if (doubles > 1) error("both players have a 2-placement opening");

    if (spec.geometry.is_finite() && spec.geometry.rows > 0 &&
        spec.geometry.cols > 0) {
        int shortest = std::min(spec.rule(PlayerId::First).target_run,
                                spec.rule(PlayerId::Second).target_run);
        int longest_side = std::max(spec.geometry.rows, spec.geometry.cols);
        if (shortest > longest_side)
            warning("unwinnable: no target run fits on the board");
    }

    return report;
}

// Simulation horizon: total placements that count as "playing to the end".
// Finite boards: the cell count. Infinite boards: m_max^2 with m_max the
// larger target_run, which leaves room for wins (a first win needs at least
// 2m - 1 placements) without unbounded playouts.
inline int effective_board_size(const GameSpec& spec) {
    if (spec.geometry.is_finite()) return spec.geometry.cell_count();
    int m_max = std::max(spec.rule(PlayerId::First).target_run,
                         spec.rule(PlayerId::Second).target_run);
    return m_max * m_max;
}

}  // namespace mnk
