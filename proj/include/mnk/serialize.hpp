// Canonical JSON encodings shared by every file format the tools emit:
// game specs, states, simulation records, and fitted regression models.
#pragma once

#include <string>

#include "json.hpp"
#include "mnk/estimator.hpp"
#include "mnk/regression.hpp"

namespace mnk {

using Json = nlohmann::json;

inline std::string direction_name(Direction d) {
    switch (d) {
        case Direction::Horizontal: return "horizontal";
        case Direction::Vertical: return "vertical";
        case Direction::DiagonalRising: return "diagonal-rising";
        case Direction::DiagonalFalling: return "diagonal-falling";
    }
    return "?";
}

inline Direction direction_from_name(const std::string& name) {
    for (Direction d : kAllDirections)
        if (direction_name(d) == name) return d;
    throw DataError("unknown direction name: " + name);
}

inline std::string polarity_name(Polarity p) {
    return p == Polarity::CompletingWins ? "wins" : "loses";
}

inline Polarity polarity_from_name(const std::string& name) {
    if (name == "wins") return Polarity::CompletingWins;
    if (name == "loses") return Polarity::CompletingLoses;
    throw DataError("unknown polarity name: " + name);
}

inline PlayerId player_from_name(const std::string& name) {
    if (name == "first") return PlayerId::First;
    if (name == "second") return PlayerId::Second;
    throw DataError("unknown player name: " + name);
}

inline Json cell_to_json(const Cell& cell) { return Json::array({cell.row, cell.col}); }

inline Cell cell_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer())
        throw DataError("cell must be a [row, col] integer pair");
    return Cell{j[0].get<int>(), j[1].get<int>()};
}

inline Json geometry_to_json(const BoardGeometry& geometry) {
    if (geometry.is_finite())
        return Json{{"kind", "finite"},
                    {"rows", geometry.rows},
                    {"cols", geometry.cols}};
    return Json{{"kind", "infinite"}};
}

inline BoardGeometry geometry_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "infinite") return BoardGeometry::infinite();
    if (kind == "finite")
        return BoardGeometry::finite(j.at("rows").get<int>(), j.at("cols").get<int>());
    throw DataError("unknown geometry kind: " + kind);
}

inline Json win_rule_to_json(const WinRule& rule) {
    Json directions = Json::array();
    for (Direction d : kAllDirections)
        if (rule.directions.contains(d)) directions.push_back(direction_name(d));
    return Json{{"target_run", rule.target_run},
                {"directions", directions},
                {"polarity", polarity_name(rule.polarity)}};
}

inline WinRule win_rule_from_json(const Json& j) {
    WinRule rule;
    rule.target_run = j.at("target_run").get<int>();
    rule.directions = DirectionSet::none();
    for (const Json& name : j.at("directions"))
        rule.directions.insert(direction_from_name(name.get<std::string>()));
    rule.polarity = polarity_from_name(j.at("polarity").get<std::string>());
    return rule;
}

inline Json spec_to_json(const GameSpec& spec) {
    return Json{
        {"id", spec.id},
        {"category", spec.category},
        {"geometry", geometry_to_json(spec.geometry)},
        {"rules",
         Json{{"first", win_rule_to_json(spec.rule(PlayerId::First))},
              {"second", win_rule_to_json(spec.rule(PlayerId::Second))}}},
        {"opening",
         Json{{"first_turn_placements",
               Json{{"first", spec.opening.placements(PlayerId::First)},
                    {"second", spec.opening.placements(PlayerId::Second)}}}}}};
}

inline GameSpec spec_from_json(const Json& j) {
    GameSpec spec;
    spec.id = j.value("id", std::string{});
    spec.category = j.value("category", std::string{});
    spec.geometry = geometry_from_json(j.at("geometry"));
    spec.rule(PlayerId::First) = win_rule_from_json(j.at("rules").at("first"));
    spec.rule(PlayerId::Second) = win_rule_from_json(j.at("rules").at("second"));
    if (j.contains("opening")) {
        const Json& placements = j.at("opening").at("first_turn_placements");
        spec.opening.placements(PlayerId::First) = placements.at("first").get<int>();
        spec.opening.placements(PlayerId::Second) = placements.at("second").get<int>();
    }
    return spec;
}

inline Json status_to_json(const Status& status) {
    if (status.is_ongoing()) return Json{{"kind", "ongoing"}};
    if (status.is_won())
        return Json{{"kind", "won"}, {"by", player_name(status.winner)}};
    return Json{{"kind", "draw"}};
}

inline Status status_from_json(const Json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "ongoing") return Status::ongoing();
    if (kind == "draw") return Status::draw();
    if (kind == "won")
        return Status::won(player_from_name(j.at("by").get<std::string>()));
    throw DataError("unknown status kind: " + kind);
}

inline Json state_to_json(const GameState& state) {
    Json occupancy = Json::array();
    for (const auto& [cell, player] : state.occupancy())
        occupancy.push_back(
            Json{{"cell", cell_to_json(cell)}, {"player", player_name(player)}});
    return Json{{"occupancy", occupancy},
                {"to_move", player_name(state.to_move())},
                {"placements_remaining", state.placements_remaining()},
                {"ply_count", state.ply_count()},
                {"status", status_to_json(state.status())}};
}

inline Json record_to_json(const SimulationRecord& record) {
    Json moves = Json::array();
    for (const Cell& cell : record.moves) moves.push_back(cell_to_json(cell));
    return Json{{"game_id", record.game_id}, {"sim_index", record.sim_index},
                {"move_cap", record.move_cap}, {"moves", moves},
                {"outcome", status_to_json(record.outcome)},
                {"length", record.length}};
}

inline SimulationRecord record_from_json(const Json& j) {
    SimulationRecord record;
    record.game_id = j.at("game_id").get<std::string>();
    record.sim_index = j.at("sim_index").get<int>();
    record.move_cap = j.at("move_cap").get<int>();
    for (const Json& cell : j.at("moves")) record.moves.push_back(cell_from_json(cell));
    record.outcome = status_from_json(j.at("outcome"));
    record.length = j.at("length").get<int>();
    return record;
}

inline Json model_to_json(const RegressionModel& model) {
    Json weights = Json::object();
    Json standardization = Json::object();
    for (std::size_t c = 0; c < model.columns.size(); ++c) {
        weights[model.columns[c]] = model.weights[c];
        standardization[model.columns[c]] =
            Json{{"mean", model.means[c]}, {"std", model.stds[c]}};
    }
    return Json{{"intercept", model.intercept},
                {"columns", model.columns},
                {"weights", weights},
                {"standardization", standardization},
                {"r_squared", model.r_squared}};
}

inline RegressionModel model_from_json(const Json& j) {
    RegressionModel model;
    model.intercept = j.at("intercept").get<double>();
    model.columns = j.at("columns").get<std::vector<std::string>>();
    for (const std::string& column : model.columns) {
        model.weights.push_back(j.at("weights").at(column).get<double>());
        const Json& params = j.at("standardization").at(column);
        model.means.push_back(params.at("mean").get<double>());
        model.stds.push_back(params.at("std").get<double>());
    }
    model.r_squared = j.at("r_squared").get<double>();
    return model;
}

}  // namespace mnk
