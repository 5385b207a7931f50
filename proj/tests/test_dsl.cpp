#include "doctest.h"

#include <string>
#include <vector>

#include "mnk/dsl.hpp"
#include "mnk/rng.hpp"

using namespace mnk;

namespace {

// The first error must match exactly. A clause that fails to parse never
// registers, so a "missing required clause" companion may trail it; nothing
// else can.
void check_error(const std::string& text, int line, int column,
                 const std::string& message) {
    ParseResult result = parse_spec(text);
    REQUIRE(!result.spec.has_value());
    REQUIRE(!result.errors.empty());
    const ParseError& e = result.errors[0];
    CHECK(e.line == line);
    CHECK(e.column == column);
    CHECK(e.message == message);
    for (std::size_t i = 1; i < result.errors.size(); ++i)
        CHECK(result.errors[i].message.substr(0, 24) == "missing required clause:");
}

}  // namespace

TEST_CASE("minimal specs parse with defaults filled in") {
    ParseResult result = parse_spec("board 3x3; win 3");
    REQUIRE(result.ok());
    const GameSpec& spec = *result.spec;
    CHECK(spec.geometry == BoardGeometry::finite(3, 3));
    for (PlayerId p : kBothPlayers) {
        CHECK(spec.rule(p).target_run == 3);
        CHECK(spec.rule(p).directions == DirectionSet::all());
        CHECK(spec.rule(p).polarity == Polarity::CompletingWins);
        CHECK(spec.opening.placements(p) == 1);
    }

    ParseResult infinite = parse_spec("board infinite; win 5");
    REQUIRE(infinite.ok());
    CHECK(!infinite.spec->geometry.is_finite());
    CHECK(infinite.spec->rule(PlayerId::First).target_run == 5);

    ParseResult wide = parse_spec("board 4x9; win 3");
    REQUIRE(wide.ok());
    CHECK(wide.spec->geometry.rows == 4);
    CHECK(wide.spec->geometry.cols == 9);
}

TEST_CASE("win clause accepts per-player targets in either order") {
    GameSpec a = parse_spec_or_throw("board 5x5; win first=4 second=3");
    CHECK(a.rule(PlayerId::First).target_run == 4);
    CHECK(a.rule(PlayerId::Second).target_run == 3);

    GameSpec b = parse_spec_or_throw("board 5x5; win second=3 first=4");
    CHECK(a == b);
}

TEST_CASE("directions clause forms") {
    GameSpec plain = parse_spec_or_throw("board 5x5; win 3; directions = diagonal");
    CHECK(plain.rule(PlayerId::First).directions == DirectionSet::diagonal());
    CHECK(plain.rule(PlayerId::Second).directions == DirectionSet::diagonal());

    GameSpec rising =
        parse_spec_or_throw("board 5x5; win 3; directions = diagonal-rising");
    CHECK(rising.rule(PlayerId::First).directions ==
          DirectionSet::of(Direction::DiagonalRising));

    GameSpec both =
        parse_spec_or_throw("board 5x5; win 3; directions both = horizontal, vertical");
    CHECK(both.rule(PlayerId::First).directions == DirectionSet::orthogonal());
    CHECK(both.rule(PlayerId::Second).directions == DirectionSet::orthogonal());

    GameSpec per = parse_spec_or_throw(
        "board 5x5; win 3; directions first = horizontal; directions second = vertical");
    CHECK(per.rule(PlayerId::First).directions ==
          DirectionSet::of(Direction::Horizontal));
    CHECK(per.rule(PlayerId::Second).directions ==
          DirectionSet::of(Direction::Vertical));

    GameSpec repeated =
        parse_spec_or_throw("board 5x5; win 3; directions = horizontal, horizontal");
    CHECK(repeated.rule(PlayerId::First).directions ==
          DirectionSet::of(Direction::Horizontal));
}

TEST_CASE("polarity clause forms") {
    GameSpec both = parse_spec_or_throw("board 3x3; win 3; polarity = loses");
    CHECK(both.rule(PlayerId::First).polarity == Polarity::CompletingLoses);
    CHECK(both.rule(PlayerId::Second).polarity == Polarity::CompletingLoses);

    GameSpec first_only =
        parse_spec_or_throw("board 3x3; win 3; first: polarity = loses");
    CHECK(first_only.rule(PlayerId::First).polarity == Polarity::CompletingLoses);
    CHECK(first_only.rule(PlayerId::Second).polarity == Polarity::CompletingWins);

    GameSpec explicit_wins =
        parse_spec_or_throw("board 3x3; win 3; second: polarity = wins");
    CHECK(explicit_wins.rule(PlayerId::Second).polarity ==
          Polarity::CompletingWins);
}

TEST_CASE("opening clause forms") {
    GameSpec first2 = parse_spec_or_throw("board 7x7; win 4; opening first = 2");
    CHECK(first2.opening.placements(PlayerId::First) == 2);
    CHECK(first2.opening.placements(PlayerId::Second) == 1);

    GameSpec second2 = parse_spec_or_throw("board 7x7; win 4; opening second = 2");
    CHECK(second2.opening.placements(PlayerId::First) == 1);
    CHECK(second2.opening.placements(PlayerId::Second) == 2);
}

TEST_CASE("comments, newlines, and semicolons all delimit statements") {
    GameSpec commented = parse_spec_or_throw(
        "# full game description\n"
        "board 3x3  # square board\n"
        "win 3\n"
        "\n");
    CHECK(commented == parse_spec_or_throw("board 3x3; win 3"));

    GameSpec squeezed = parse_spec_or_throw(";;board 3x3;;win 3;;");
    CHECK(squeezed == parse_spec_or_throw("board 3x3\nwin 3"));
}

TEST_CASE("parse errors carry exact positions and messages") {
    check_error("win 3", 1, 1, "missing required clause: board");
    check_error("board 3x3", 1, 1, "missing required clause: win");
    check_error("board 3x3\nwin 1", 2, 5, "target run must be at least 2");
    check_error("board 3x3; win 3; board 4x4", 1, 19, "duplicate clause: board");
    check_error("board 3x3; win 3; directions = sideways", 1, 32,
                "unknown direction 'sideways'");
    check_error("board 3x3; win 3; polarity = maybe", 1, 30,
                "polarity must be 'wins' or 'loses'");
    check_error("board 3x3; win 3; opening first = 3", 1, 35,
                "opening placement count must be 2");
    check_error("board 3x3; win first=4", 1, 12,
                "win clause must give both players' targets");
    check_error("board 3x3; win 3; blorp 7", 1, 19, "unknown keyword 'blorp'");
    check_error("board 3x3; win 3; second: banana", 1, 27,
                "expected 'polarity' after player prefix 'second:'");
    check_error("board 3x3; win 3; directions =", 1, 30, "empty direction list");
    check_error("board 3x3; win 3; opening first = two", 1, 35,
                "malformed integer 'two'");
    check_error("board 3q3; win 3", 1, 7,
                "malformed board size '3q3' (expected RxC, e.g. 5x5)");

    ParseResult empty = parse_spec("");
    REQUIRE(empty.errors.size() == 2);
    CHECK(empty.errors[0].message == "missing required clause: board");
    CHECK(empty.errors[1].message == "missing required clause: win");
}

TEST_CASE("validation failures surface as positioned parse errors") {
    check_error("board 101x3; win 3", 1, 1, "board dimension above 100");
    check_error("board 0x3; win 3", 1, 1, "zero board dimension");
    check_error("board 3x3; win 3; opening first = 2; opening second = 2", 1, 38,
                "both players have a 2-placement opening");
}

TEST_CASE("parse_spec_or_throw reports every positioned error in one message") {
    CHECK_THROWS_WITH_AS(
        parse_spec_or_throw("board 3x3"),
        "game spec parse failed:\n  line 1, column 1: missing required clause: win",
        DataError);
    CHECK_THROWS_WITH_AS(parse_spec_or_throw("board 3x3\nwin 1"),
                         "game spec parse failed:\n  line 2, column 5: target "
                         "run must be at least 2\n  line 1, column 1: missing "
                         "required clause: win",
                         DataError);
}

TEST_CASE("the printer emits canonical text") {
    CHECK(print_spec(parse_spec_or_throw("board 3x3; win 3")) ==
          "board 3x3; win 3");
    CHECK(print_spec(parse_spec_or_throw("win 3;board 3x3")) ==
          "board 3x3; win 3");
    CHECK(print_spec(parse_spec_or_throw("board infinite; win first=5 second=3")) ==
          "board infinite; win first=5 second=3");
    // Direction lists are re-ordered and the diagonal pair is collapsed.
    CHECK(print_spec(parse_spec_or_throw(
              "board 5x5; win 3; directions = diagonal-falling, "
              "diagonal-rising, vertical")) ==
          "board 5x5; win 3; directions = vertical, diagonal");
    // Default halves of asymmetric settings are elided.
    CHECK(print_spec(parse_spec_or_throw(
              "board 5x5; win first=4 second=3; "
              "directions second = horizontal, vertical; "
              "first: polarity = loses; opening second = 2")) ==
          "board 5x5; win first=4 second=3; directions second = horizontal, "
          "vertical; first: polarity = loses; opening second = 2");
    CHECK(print_spec(parse_spec_or_throw("board 3x3; win 3; polarity = loses")) ==
          "board 3x3; win 3; polarity = loses");
}

TEST_CASE("print then parse is the identity on generated specs") {
    Rng rng(424242);
    int round_trips = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        GameSpec spec;
        if (rng.next_below(4) == 0) {
            spec.geometry = BoardGeometry::infinite();
        } else {
            spec.geometry =
                BoardGeometry::finite(1 + static_cast<int>(rng.next_below(12)),
                                      1 + static_cast<int>(rng.next_below(12)));
        }
        for (PlayerId p : kBothPlayers) {
            spec.rule(p).target_run = 2 + static_cast<int>(rng.next_below(5));
            DirectionSet set = DirectionSet::none();
            while (set.empty()) {
                for (Direction d : kAllDirections)
                    if (rng.next_below(2) == 1) set.insert(d);
            }
            spec.rule(p).directions = set;
            spec.rule(p).polarity = rng.next_below(2) == 0
                                        ? Polarity::CompletingWins
                                        : Polarity::CompletingLoses;
        }
        switch (rng.next_below(3)) {
            case 0: break;
            case 1: spec.opening.first_turn_placements = {2, 1}; break;
            case 2: spec.opening.first_turn_placements = {1, 2}; break;
        }

        ParseResult back = parse_spec(print_spec(spec));
        REQUIRE(back.ok());
        CHECK(*back.spec == spec);
        ++round_trips;
    }
    CHECK(round_trips == 1000);
}

TEST_CASE("random garbage never makes the parser throw") {
    const std::string charset =
        "abcdefghijklmnopqrstuvwxyz0123456789 ;=,:x#\n-";
    Rng rng(7777);
    for (int trial = 0; trial < 500; ++trial) {
        std::string text;
        int length = static_cast<int>(rng.next_below(60));
        for (int i = 0; i < length; ++i)
            text += charset[rng.next_below(charset.size())];
        ParseResult result = parse_spec(text);
        if (result.spec.has_value()) CHECK(result.errors.empty());
    }
}
