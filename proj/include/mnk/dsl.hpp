// The compact textual game-description language: tokenizer, recursive
// clause parser with line/column-positioned errors, and the canonical
// printer (parse-print-parse is the identity).
//
// Grammar, one clause per statement (statements split on newline or ';',
// '#' comments to end of line):
//   board <R>x<C> | board infinite
//   win <m> | win first=<m1> second=<m2>
//   directions [first|second|both] = <comma list>   (horizontal, vertical,
//       diagonal, diagonal-rising, diagonal-falling; plain "diagonal" means
//       both diagonal directions)
//   [first:|second:] polarity = wins|loses
//   opening first|second = 2
// Unspecified clauses default to all directions, polarity wins, opening 1.
#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "mnk/regression.hpp"  // DataError
#include "mnk/spec.hpp"

namespace mnk {

struct ParseError {
    int line = 1;
    int column = 1;
    std::string message;
};

struct ParseResult {
    std::optional<GameSpec> spec;
    std::vector<ParseError> errors;

    bool ok() const { return spec.has_value() && errors.empty(); }
};

namespace detail {

struct Token {
    std::string text;
    int line = 1;
    int column = 1;
};

inline bool is_clause_punct(char c) { return c == '=' || c == ',' || c == ':'; }

inline std::vector<std::vector<Token>> tokenize_statements(const std::string& text) {
    std::vector<std::vector<Token>> statements;
    std::vector<Token> current;
    Token word;
    bool in_word = false;
    int line = 1;
    int column = 1;

    auto flush_word = [&] {
        if (in_word) {
            current.push_back(word);
            in_word = false;
            word.text.clear();
        }
    };
    auto flush_statement = [&] {
        flush_word();
        if (!current.empty()) {
            statements.push_back(current);
            current.clear();
        }
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '#') {  // comment runs to end of line
            flush_word();
            while (i + 1 < text.size() && text[i + 1] != '\n') ++i;
            continue;
        }
        if (c == '\n') {
            flush_statement();
            ++line;
            column = 1;
            continue;
        }
        if (c == ';') {
            flush_statement();
            ++column;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush_word();
            ++column;
            continue;
        }
        if (is_clause_punct(c)) {
            flush_word();
            current.push_back({std::string(1, c), line, column});
            ++column;
            continue;
        }
        if (!in_word) {
            in_word = true;
            word.line = line;
            word.column = column;
        }
        word.text += c;
        ++column;
    }
    flush_statement();
    return statements;
}

inline bool parse_positive_int(const std::string& text, int& out) {
    if (text.empty() || text.size() > 9) return false;
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    out = std::stoi(text);
    return true;
}

inline std::optional<PlayerId> player_from_word(const std::string& word) {
    if (word == "first") return PlayerId::First;
    if (word == "second") return PlayerId::Second;
    return std::nullopt;
}

// "diagonal" covers both diagonal directions; the two single-diagonal names
// keep the printer total over every representable direction set.
inline std::optional<DirectionSet> direction_from_word(const std::string& word) {
    if (word == "horizontal") return DirectionSet::of(Direction::Horizontal);
    if (word == "vertical") return DirectionSet::of(Direction::Vertical);
    if (word == "diagonal") return DirectionSet::diagonal();
    if (word == "diagonal-rising") return DirectionSet::of(Direction::DiagonalRising);
    if (word == "diagonal-falling") return DirectionSet::of(Direction::DiagonalFalling);
    return std::nullopt;
}

}  // namespace detail

inline ParseResult parse_spec(const std::string& text) {
    ParseResult result;
    auto fail = [&result](const detail::Token& at, std::string message) {
        result.errors.push_back({at.line, at.column, std::move(message)});
    };

    std::optional<BoardGeometry> geometry;
    detail::Token board_token;
    bool have_win = false;
    detail::Token win_token;
    int target[2] = {0, 0};
    DirectionSet directions[2] = {DirectionSet::all(), DirectionSet::all()};
    bool directions_set[2] = {false, false};
    Polarity polarity[2] = {Polarity::CompletingWins, Polarity::CompletingWins};
    bool polarity_set[2] = {false, false};
    int opening[2] = {1, 1};
    bool opening_set[2] = {false, false};
    detail::Token opening_token;
    bool have_opening_token = false;

    auto parse_board = [&](const std::vector<detail::Token>& st) {
        if (geometry) return fail(st[0], "duplicate clause: board");
        if (st.size() != 2)
            return fail(st[0], "malformed board clause (expected 'board RxC' or 'board infinite')");
        const std::string& arg = st[1].text;
        if (arg == "infinite") {
            geometry = BoardGeometry::infinite();
            board_token = st[0];
            return;
        }
        std::size_t split = arg.find_first_of("xX");
        int rows = 0;
        int cols = 0;
        if (split == std::string::npos ||
            !detail::parse_positive_int(arg.substr(0, split), rows) ||
            !detail::parse_positive_int(arg.substr(split + 1), cols))
            return fail(st[1], "malformed board size '" + arg + "' (expected RxC, e.g. 5x5)");
        geometry = BoardGeometry::finite(rows, cols);
        board_token = st[0];
    };

    auto parse_win = [&](const std::vector<detail::Token>& st) {
        if (have_win) return fail(st[0], "duplicate clause: win");
        if (st.size() == 2) {
            int m = 0;
            if (!detail::parse_positive_int(st[1].text, m))
                return fail(st[1], "malformed integer '" + st[1].text + "'");
            if (m < 2) return fail(st[1], "target run must be at least 2");
            target[0] = target[1] = m;
            have_win = true;
            win_token = st[0];
            return;
        }
        // win first=<m1> second=<m2>, either order
        bool given[2] = {false, false};
        std::size_t i = 1;
        while (i < st.size()) {
            auto player = detail::player_from_word(st[i].text);
            if (!player)
                return fail(st[i], "expected 'first' or 'second' in win clause");
            if (i + 2 >= st.size() || st[i + 1].text != "=")
                return fail(st[i], "expected '" + st[i].text + "=<m>' in win clause");
            int m = 0;
            if (!detail::parse_positive_int(st[i + 2].text, m))
                return fail(st[i + 2], "malformed integer '" + st[i + 2].text + "'");
            if (m < 2) return fail(st[i + 2], "target run must be at least 2");
            if (given[player_index(*player)])
                return fail(st[i], "duplicate player in win clause");
            given[player_index(*player)] = true;
            target[player_index(*player)] = m;
            i += 3;
        }
        if (!given[0] || !given[1])
            return fail(st[0], "win clause must give both players' targets");
        have_win = true;
        win_token = st[0];
    };

    auto parse_directions = [&](const std::vector<detail::Token>& st) {
        std::size_t i = 1;
        bool apply[2] = {true, true};
        if (i < st.size()) {
            if (auto player = detail::player_from_word(st[i].text)) {
                apply[player_index(opponent_of(*player))] = false;
                ++i;
            } else if (st[i].text == "both") {
                ++i;
            }
        }
        if (i >= st.size() || st[i].text != "=")
            return fail(i < st.size() ? st[i] : st.back(),
                        "expected '=' in directions clause");
        ++i;
        if (i >= st.size()) return fail(st.back(), "empty direction list");
        DirectionSet set = DirectionSet::none();
        bool expect_name = true;
        for (; i < st.size(); ++i) {
            if (expect_name) {
                auto parsed = detail::direction_from_word(st[i].text);
                if (!parsed)
                    return fail(st[i], "unknown direction '" + st[i].text + "'");
                for (Direction d : kAllDirections)
                    if (parsed->contains(d)) set.insert(d);
                expect_name = false;
            } else {
                if (st[i].text != ",")
                    return fail(st[i], "expected ',' between directions");
                expect_name = true;
            }
        }
        if (expect_name) return fail(st.back(), "expected direction after ','");
        if (set.empty()) return fail(st[0], "empty direction list");
        for (PlayerId p : kBothPlayers) {
            int idx = player_index(p);
            if (!apply[idx]) continue;
            if (directions_set[idx])
                return fail(st[0], "duplicate clause: directions for the " +
                                       player_name(p) + " player");
            directions_set[idx] = true;
            directions[idx] = set;
        }
    };

    auto parse_polarity = [&](const std::vector<detail::Token>& st, std::size_t i,
                              bool apply[2]) {
        // st[i] is the "polarity" keyword
        if (i + 2 >= st.size() || st[i + 1].text != "=")
            return fail(st[i], "expected 'polarity = wins|loses'");
        const std::string& value = st[i + 2].text;
        Polarity parsed;
        if (value == "wins")
            parsed = Polarity::CompletingWins;
        else if (value == "loses")
            parsed = Polarity::CompletingLoses;
        else
            return fail(st[i + 2], "polarity must be 'wins' or 'loses'");
        if (i + 3 != st.size())
            return fail(st[i + 3], "unexpected token after polarity value");
        for (PlayerId p : kBothPlayers) {
            int idx = player_index(p);
            if (!apply[idx]) continue;
            if (polarity_set[idx])
                return fail(st[i], "duplicate clause: polarity for the " +
                                       player_name(p) + " player");
            polarity_set[idx] = true;
            polarity[idx] = parsed;
        }
    };

    auto parse_opening = [&](const std::vector<detail::Token>& st) {
        if (st.size() < 2)
            return fail(st[0], "opening clause needs a player (first or second)");
        auto player = detail::player_from_word(st[1].text);
        if (!player)
            return fail(st[1], "opening clause needs a player (first or second)");
        if (st.size() != 4 || st[2].text != "=")
            return fail(st[0], "expected 'opening " + st[1].text + " = 2'");
        int count = 0;
        if (!detail::parse_positive_int(st[3].text, count))
            return fail(st[3], "malformed integer '" + st[3].text + "'");
        if (count != 2)
            return fail(st[3], "opening placement count must be 2");
        int idx = player_index(*player);
        if (opening_set[idx])
            return fail(st[0], "duplicate clause: opening for the " +
                                   player_name(*player) + " player");
        opening_set[idx] = true;
        opening[idx] = 2;
        opening_token = st[0];
        have_opening_token = true;
    };

    for (const std::vector<detail::Token>& st : detail::tokenize_statements(text)) {
        const std::string& head = st[0].text;
        if (head == "board") {
            parse_board(st);
        } else if (head == "win") {
            parse_win(st);
        } else if (head == "directions") {
            parse_directions(st);
        } else if (head == "polarity") {
            bool apply[2] = {true, true};
            parse_polarity(st, 0, apply);
        } else if (head == "opening") {
            parse_opening(st);
        } else if (auto player = detail::player_from_word(head)) {
            if (st.size() >= 3 && st[1].text == ":" && st[2].text == "polarity") {
                bool apply[2] = {false, false};
                apply[player_index(*player)] = true;
                parse_polarity(st, 2, apply);
            } else {
                fail(st.size() >= 3 ? st[2] : st[0],
                     "expected 'polarity' after player prefix '" + head + ":'");
            }
        } else {
            fail(st[0], "unknown keyword '" + head + "'");
        }
    }

    if (!geometry) result.errors.push_back({1, 1, "missing required clause: board"});
    if (!have_win) result.errors.push_back({1, 1, "missing required clause: win"});
    if (!result.errors.empty()) return result;

    GameSpec spec;
    spec.geometry = *geometry;
    for (PlayerId p : kBothPlayers) {
        int idx = player_index(p);
        spec.rule(p).target_run = target[idx];
        spec.rule(p).directions = directions[idx];
        spec.rule(p).polarity = polarity[idx];
        spec.opening.placements(p) = opening[idx];
    }

    ValidationReport report = validate_spec(spec);
    for (const std::string& message : report.errors()) {
        detail::Token at{"", 1, 1};
        if (message.find("board") != std::string::npos)
            at = board_token;
        else if (message.find("opening") != std::string::npos && have_opening_token)
            at = opening_token;
        else if (message.find("target_run") != std::string::npos)
            at = win_token;
        result.errors.push_back({at.line, at.column, message});
    }
    if (!result.errors.empty()) return result;

    result.spec = std::move(spec);
    return result;
}

// Parse or throw a DataError whose message lists every positioned error.
inline GameSpec parse_spec_or_throw(const std::string& text) {
    ParseResult result = parse_spec(text);
    if (result.ok()) return *result.spec;
    std::string message = "game spec parse failed:";
    for (const ParseError& e : result.errors)
        message += "\n  line " + std::to_string(e.line) + ", column " +
                   std::to_string(e.column) + ": " + e.message;
    throw DataError(message);
}

namespace detail {

inline std::string print_directions(DirectionSet set) {
    std::vector<std::string> parts;
    if (set.contains(Direction::Horizontal)) parts.push_back("horizontal");
    if (set.contains(Direction::Vertical)) parts.push_back("vertical");
    bool rising = set.contains(Direction::DiagonalRising);
    bool falling = set.contains(Direction::DiagonalFalling);
    if (rising && falling)
        parts.push_back("diagonal");
    else if (rising)
        parts.push_back("diagonal-rising");
    else if (falling)
        parts.push_back("diagonal-falling");
    std::string joined;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) joined += ", ";
        joined += parts[i];
    }
    return joined;
}

}  // namespace detail

// Deterministic canonical text: fixed clause order, default clauses elided;
// parse(print_spec(s)) reproduces s.
inline std::string print_spec(const GameSpec& spec) {
    std::vector<std::string> clauses;
    if (spec.geometry.is_finite())
        clauses.push_back("board " + std::to_string(spec.geometry.rows) + "x" +
                          std::to_string(spec.geometry.cols));
    else
        clauses.push_back("board infinite");

    const WinRule& first = spec.rule(PlayerId::First);
    const WinRule& second = spec.rule(PlayerId::Second);
    if (first.target_run == second.target_run)
        clauses.push_back("win " + std::to_string(first.target_run));
    else
        clauses.push_back("win first=" + std::to_string(first.target_run) +
                          " second=" + std::to_string(second.target_run));

    if (first.directions == second.directions) {
        if (!(first.directions == DirectionSet::all()))
            clauses.push_back("directions = " + detail::print_directions(first.directions));
    } else {
        for (PlayerId p : kBothPlayers) {
            const DirectionSet& set = spec.rule(p).directions;
            if (!(set == DirectionSet::all()))
                clauses.push_back("directions " + player_name(p) + " = " +
                                  detail::print_directions(set));
        }
    }

    if (first.polarity == second.polarity) {
        if (first.polarity == Polarity::CompletingLoses)
            clauses.push_back("polarity = loses");
    } else {
        for (PlayerId p : kBothPlayers)
            if (spec.rule(p).polarity == Polarity::CompletingLoses)
                clauses.push_back(player_name(p) + ": polarity = loses");
    }

    for (PlayerId p : kBothPlayers)
        if (spec.opening.placements(p) == 2)
            clauses.push_back("opening " + player_name(p) + " = 2");

    std::string out;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        if (i > 0) out += "; ";
        out += clauses[i];
    }
    return out;
}

}  // namespace mnk
