// The 121-game stimulus catalog: eleven categories of grid-game variants
// with fixed per-category counts, anchored on each category's published
// example games and filled out by seeded systematic enumeration.
#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "mnk/csv.hpp"
#include "mnk/dsl.hpp"
#include "mnk/rng.hpp"
#include "mnk/serialize.hpp"

namespace mnk {

struct CatalogEntry {
    std::string id;
    std::string category;
    std::string provenance;  // "example" (a published example) or "reconstructed"
    GameSpec spec;

    bool operator==(const CatalogEntry&) const = default;
};

struct Catalog {
    std::vector<CatalogEntry> entries;

    std::vector<std::pair<std::string, int>> category_counts() const {
        std::vector<std::pair<std::string, int>> counts;
        for (const CatalogEntry& entry : entries) {
            auto it = std::find_if(counts.begin(), counts.end(),
                                   [&](const auto& c) { return c.first == entry.category; });
            if (it == counts.end())
                counts.push_back({entry.category, 1});
            else
                ++it->second;
        }
        return counts;
    }

    bool operator==(const Catalog&) const = default;
};

// Category labels and counts, in catalog order.
inline const std::vector<std::pair<std::string, int>>& expected_category_counts() {
    static const std::vector<std::pair<std::string, int>> expected = {
        {"M in a row on square boards", 20},
        {"M in a row on rectangular boards", 18},
        {"Infinite boards", 3},
        {"M in a row loses", 10},
        {"No diagonal wins allowed", 10},
        {"Only diagonal wins allowed", 10},
        {"First player moves 2 pieces", 10},
        {"Second player moves 2 pieces", 10},
        {"First player handicap (A)", 10},
        {"First player handicap (B)", 10},
        {"Second player needs M-1 to win", 10},
    };
    return expected;
}

namespace detail {

struct CategoryBuilder {
    std::string label;
    std::string id_prefix;
    std::vector<CatalogEntry> chosen;

    // Candidate parameter points are (m, rows, cols) triples; each category
    // maps them to a full spec through `make`.
    struct Candidate {
        int m = 0;
        int rows = 0;
        int cols = 0;
        bool operator==(const Candidate&) const = default;
    };
    std::vector<Candidate> candidates;
    std::vector<Candidate> anchors;  // published examples, always included

    template <typename MakeSpec>
    void fill(int count, Rng& rng, MakeSpec make) {
        std::vector<Candidate> pool;
        for (const Candidate& c : candidates)
            if (std::find(anchors.begin(), anchors.end(), c) == anchors.end())
                pool.push_back(c);
        // Seeded Fisher-Yates selection of the non-anchor slots.
        std::vector<Candidate> picked = anchors;
        int needed = count - static_cast<int>(anchors.size());
        for (int i = 0; i < needed; ++i) {
            std::size_t j = i + static_cast<std::size_t>(
                                    rng.next_below(pool.size() - i));
            std::swap(pool[i], pool[j]);
            picked.push_back(pool[i]);
        }
        std::sort(picked.begin(), picked.end(), [](const Candidate& a, const Candidate& b) {
            if (a.m != b.m) return a.m < b.m;
            if (a.rows != b.rows) return a.rows < b.rows;
            return a.cols < b.cols;
        });
        for (const Candidate& c : picked) {
            CatalogEntry entry;
            entry.category = label;
            entry.provenance =
                std::find(anchors.begin(), anchors.end(), c) != anchors.end()
                    ? "example"
                    : "reconstructed";
            entry.spec = make(c);
            entry.id = id_prefix + "-m" + std::to_string(c.m);
            if (c.rows > 0)
                entry.id += "-" + std::to_string(c.rows) + "x" + std::to_string(c.cols);
            entry.spec.id = entry.id;
            entry.spec.category = entry.category;
            chosen.push_back(std::move(entry));
        }
    }
};

inline GameSpec plain_spec(int m, int rows, int cols) {
    GameSpec spec;
    spec.geometry = rows > 0 ? BoardGeometry::finite(rows, cols)
                             : BoardGeometry::infinite();
    spec.rule(PlayerId::First).target_run = m;
    spec.rule(PlayerId::Second).target_run = m;
    return spec;
}

inline std::vector<CategoryBuilder::Candidate> square_candidates(int m_lo, int m_hi) {
    std::vector<CategoryBuilder::Candidate> out;
    for (int m = m_lo; m <= m_hi; ++m)
        for (int n = std::max(m, 3); n <= 10; ++n) out.push_back({m, n, n});
    return out;
}

}  // namespace detail

// Builds the full 121-entry catalog. The published example games are always
// present; the remaining slots are drawn (seeded, deterministic) from a
// systematic parameter grid per category.
inline Catalog generate_catalog(std::uint64_t seed) {
    Catalog catalog;
    Rng rng(splitmix64(seed));
    using Candidate = detail::CategoryBuilder::Candidate;

    {  // M in a row on square boards: m in 3..7 on n x n, n in 3..10.
        detail::CategoryBuilder b;
        b.label = "M in a row on square boards";
        b.id_prefix = "square";
        b.candidates = detail::square_candidates(3, 7);
        b.anchors = {{3, 6, 6}, {7, 10, 10}};
        b.fill(20, rng, [](const Candidate& c) {
            return detail::plain_spec(c.m, c.rows, c.cols);
        });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }
    {  // M in a row on rectangular boards: fixed shape/target grid (2 per shape).
        detail::CategoryBuilder b;
        b.label = "M in a row on rectangular boards";
        b.id_prefix = "rect";
        b.candidates = {{3, 1, 5},  {4, 1, 5},  {3, 2, 5},  {4, 2, 5},  {3, 2, 8},
                        {5, 2, 8},  {3, 3, 5},  {4, 3, 5},  {4, 3, 8},  {5, 3, 8},
                        {3, 4, 6},  {4, 4, 6},  {4, 4, 9},  {5, 4, 9},  {4, 5, 8},
                        {5, 5, 8},  {5, 5, 10}, {6, 5, 10}};
        b.anchors = {{3, 1, 5}, {6, 5, 10}};
        b.fill(18, rng, [](const Candidate& c) {
            return detail::plain_spec(c.m, c.rows, c.cols);
        });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }
    {  // Infinite boards: the two published targets plus one intermediate.
        detail::CategoryBuilder b;
        b.label = "Infinite boards";
        b.id_prefix = "infinite";
        b.candidates = {{3, 0, 0}, {5, 0, 0}, {10, 0, 0}};
        b.anchors = {{3, 0, 0}, {10, 0, 0}};
        b.fill(3, rng, [](const Candidate& c) { return detail::plain_spec(c.m, 0, 0); });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }
    {  // M in a row loses: completing the run loses, for both players.
        detail::CategoryBuilder b;
        b.label = "M in a row loses";
        b.id_prefix = "loses";
        b.candidates = detail::square_candidates(3, 6);
        b.anchors = {{5, 5, 5}};
        b.fill(10, rng, [](const Candidate& c) {
            GameSpec spec = detail::plain_spec(c.m, c.rows, c.cols);
            spec.rule(PlayerId::First).polarity = Polarity::CompletingLoses;
            spec.rule(PlayerId::Second).polarity = Polarity::CompletingLoses;
            return spec;
        });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }
    {  // No diagonal wins allowed (both players).
        detail::CategoryBuilder b;
        b.label = "No diagonal wins allowed";
        b.id_prefix = "nodiag";
        b.candidates = detail::square_candidates(3, 6);
        b.anchors = {{4, 10, 10}};
        b.fill(10, rng, [](const Candidate& c) {
            GameSpec spec = detail::plain_spec(c.m, c.rows, c.cols);
            spec.rule(PlayerId::First).directions = DirectionSet::orthogonal();
            spec.rule(PlayerId::Second).directions = DirectionSet::orthogonal();
            return spec;
        });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }
    {  // Only diagonal wins allowed (both players).
        detail::CategoryBuilder b;
        b.label = "Only diagonal wins allowed";
        b.id_prefix = "onlydiag";
        b.candidates = detail::square_candidates(3, 6);
        b.anchors = {{4, 5, 5}};
        b.fill(10, rng, [](const Candidate& c) {
            GameSpec spec = detail::plain_spec(c.m, c.rows, c.cols);
            spec.rule(PlayerId::First).directions = DirectionSet::diagonal();
            spec.rule(PlayerId::Second).directions = DirectionSet::diagonal();
            return spec;
        });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }
    {  // First player moves 2 pieces on their opening turn.
        detail::CategoryBuilder b;
        b.label = "First player moves 2 pieces";
        b.id_prefix = "first2";
        b.candidates = detail::square_candidates(3, 7);
        b.anchors = {{5, 10, 10}};
        b.fill(10, rng, [](const Candidate& c) {
            GameSpec spec = detail::plain_spec(c.m, c.rows, c.cols);
            spec.opening.placements(PlayerId::First) = 2;
            return spec;
        });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }
    {  // Second player moves 2 pieces on their opening turn.
        detail::CategoryBuilder b;
        b.label = "Second player moves 2 pieces";
        b.id_prefix = "second2";
        b.candidates = detail::square_candidates(3, 10);
        b.anchors = {{10, 10, 10}};
        b.fill(10, rng, [](const Candidate& c) {
            GameSpec spec = detail::plain_spec(c.m, c.rows, c.cols);
            spec.opening.placements(PlayerId::Second) = 2;
            return spec;
        });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }
    {  // First player handicap (A): first player cannot win diagonally.
        detail::CategoryBuilder b;
        b.label = "First player handicap (A)";
        b.id_prefix = "handicapA";
        b.candidates = detail::square_candidates(3, 6);
        b.anchors = {{3, 3, 3}};
        b.fill(10, rng, [](const Candidate& c) {
            GameSpec spec = detail::plain_spec(c.m, c.rows, c.cols);
            spec.rule(PlayerId::First).directions = DirectionSet::orthogonal();
            return spec;
        });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }
    {  // First player handicap (B): first player can only win diagonally.
        detail::CategoryBuilder b;
        b.label = "First player handicap (B)";
        b.id_prefix = "handicapB";
        b.candidates = detail::square_candidates(3, 6);
        b.anchors = {{4, 7, 7}};
        b.fill(10, rng, [](const Candidate& c) {
            GameSpec spec = detail::plain_spec(c.m, c.rows, c.cols);
            spec.rule(PlayerId::First).directions = DirectionSet::diagonal();
            return spec;
        });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }
    {  // Second player needs M-1 to win.
        detail::CategoryBuilder b;
        b.label = "Second player needs M-1 to win";
        b.id_prefix = "needs1less";
        b.candidates = detail::square_candidates(4, 7);
        b.anchors = {{4, 5, 5}};
        b.fill(10, rng, [](const Candidate& c) {
            GameSpec spec = detail::plain_spec(c.m, c.rows, c.cols);
            spec.rule(PlayerId::Second).target_run = c.m - 1;
            return spec;
        });
        catalog.entries.insert(catalog.entries.end(), b.chosen.begin(), b.chosen.end());
    }

    return catalog;
}

// Every check a stored catalog must pass; empty result means valid.
inline std::vector<std::string> validate_catalog(const Catalog& catalog) {
    std::vector<std::string> problems;
    if (catalog.entries.size() != 121)
        problems.push_back("expected 121 entries, found " +
                           std::to_string(catalog.entries.size()));

    std::set<std::string> ids;
    for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
        const CatalogEntry& entry = catalog.entries[i];
        if (!ids.insert(entry.id).second)
            problems.push_back("duplicate id '" + entry.id + "' at entry " +
                               std::to_string(i));
        ValidationReport report = validate_spec(entry.spec);
        for (const std::string& error : report.errors())
            problems.push_back("entry '" + entry.id + "': " + error);
    }

    auto actual = catalog.category_counts();
    const auto& expected = expected_category_counts();
    for (const auto& [label, count] : expected) {
        auto it = std::find_if(actual.begin(), actual.end(),
                               [&](const auto& c) { return c.first == label; });
        int found = it == actual.end() ? 0 : it->second;
        if (found != count)
            problems.push_back("category '" + label + "': expected " +
                               std::to_string(count) + " entries, found " +
                               std::to_string(found));
    }
    for (const auto& [label, count] : actual) {
        bool known = std::find_if(expected.begin(), expected.end(),
                                  [&](const auto& c) { return c.first == label; }) !=
                     expected.end();
        if (!known)
            problems.push_back("unknown category '" + label + "' (" +
                               std::to_string(count) + " entries)");
    }
    return problems;
}

inline Json catalog_to_json(const Catalog& catalog) {
    Json entries = Json::array();
    for (const CatalogEntry& entry : catalog.entries)
        entries.push_back(Json{{"id", entry.id},
                               {"category", entry.category},
                               {"provenance", entry.provenance},
                               {"dsl", print_spec(entry.spec)},
                               {"spec", spec_to_json(entry.spec)}});
    return entries;
}

// Accepts each entry's spec as either a DSL string or the canonical JSON
// object; order is preserved.
inline Catalog catalog_from_json(const Json& j) {
    if (!j.is_array()) throw DataError("catalog JSON must be an array of entries");
    Catalog catalog;
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& e = j[i];
        CatalogEntry entry;
        try {
            entry.id = e.at("id").get<std::string>();
            entry.category = e.at("category").get<std::string>();
            entry.provenance = e.value("provenance", std::string{"reconstructed"});
            const Json& spec_field = e.at("spec");
            if (spec_field.is_string()) {
                ParseResult parsed = parse_spec(spec_field.get<std::string>());
                if (!parsed.ok()) {
                    for (const ParseError& pe : parsed.errors)
                        problems.push_back("entry " + std::to_string(i) + " ('" +
                                           entry.id + "') line " +
                                           std::to_string(pe.line) + ", column " +
                                           std::to_string(pe.column) + ": " +
                                           pe.message);
                    continue;
                }
                entry.spec = *parsed.spec;
            } else {
                entry.spec = spec_from_json(spec_field);
            }
        } catch (const Json::exception& ex) {
            problems.push_back("entry " + std::to_string(i) + ": " + ex.what());
            continue;
        }
        entry.spec.id = entry.id;
        entry.spec.category = entry.category;
        catalog.entries.push_back(std::move(entry));
    }
    for (std::size_t i = 0; i < catalog.entries.size(); ++i)
        for (std::size_t k = i + 1; k < catalog.entries.size(); ++k)
            if (catalog.entries[i].id == catalog.entries[k].id)
                problems.push_back("duplicate id '" + catalog.entries[i].id +
                                   "' at entries " + std::to_string(i) + " and " +
                                   std::to_string(k));
    if (!problems.empty()) {
        std::string message = "catalog load failed:";
        for (const std::string& p : problems) message += "\n  " + p;
        throw DataError(message);
    }
    return catalog;
}

inline void save_catalog(const std::string& path, const Catalog& catalog) {
    write_text_file(path, catalog_to_json(catalog).dump(2) + "\n");
}

inline Catalog load_catalog(const std::string& path) {
    Json parsed;
    try {
        parsed = Json::parse(read_text_file(path));
    } catch (const Json::exception& ex) {
        throw DataError("catalog JSON parse failed (" + path + "): " + ex.what());
    }
    return catalog_from_json(parsed);
}

}  // namespace mnk
