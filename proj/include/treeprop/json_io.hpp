#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "treeprop/coloring.hpp"
#include "treeprop/patterns.hpp"
#include "treeprop/structure.hpp"
#include "treeprop/types_consistency.hpp"

namespace treeprop {

using json = nlohmann::json;

// Structure:  {"variant": "tree"|"plain", "levels": [..], "domain": [..],
//              "sort": {"<id>": "O"|"P<l>"|"none"}, "funs": {"p_0": [[x, y], ..], "f_0_1": ..}}
// Elements missing from "sort" are unsorted; only non-identity values are listed.
json structure_to_json(const FinStructure& m);
FinStructure structure_from_json(const json& j);

// Coloring:   {"n": .., "theta": .., "default": c, "pairs": [[i, j, c], ..]}
// Pairs equal to the default are omitted on output; the default is the most
// frequent color (ties to the smaller).
json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const json& j);

json literal_to_json(const Literal& l);
Literal literal_from_json(const json& j);

// Instance:   {"kind": "O"|"P<l>", "level_set": [..],
//              "params": {"structure": <structure>, "tuple": [..]},
//              "literals": [{"shape": "p_eq", "indices": [..], "sign": "+"|"-"}, ..]}
json type_instance_to_json(const TypeInstance& t);
TypeInstance type_instance_from_json(const json& j);

// Pattern:    {"kind", "height", "branching", "rows": [..], "params": {"<address>": [..]},
//              "structure": <structure> | "<path relative to the pattern file>",
//              "coloring": <coloring> | "<path>"}          (coloring optional)
json pattern_to_json(const Pattern& p, const json& structure_field);
Pattern pattern_from_json(const json& j);

struct PatternFile {
  FinStructure m;
  Pattern pattern;
  std::optional<Coloring> coloring;
};

/// Reads a pattern file and the structure (and coloring) it carries or points to.
PatternFile load_pattern_file(const std::filesystem::path& path);

/// An array of integer arrays.
std::vector<std::vector<int>> sets_from_json(const json& j);

/// Throws PreconditionError when the file cannot be read or parsed.
json read_json_file(const std::filesystem::path& path);
/// Two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace treeprop
