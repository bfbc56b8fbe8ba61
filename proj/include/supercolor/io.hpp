#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "supercolor/demand_coloring.hpp"
#include "supercolor/set_family.hpp"

// JSON text formats. Every parser throws InvalidInput; for malformed JSON the
// message carries the line and column of the failure.
namespace supercolor::io {

enum class InstanceKind { graph, demand, family, coloring };

/// Classifies a document by its keys: "ground" → family, "graph" → demand,
/// "colors" → coloring, "n" + "edges" → graph.
InstanceKind detect_kind(std::string_view text);

/// {"n": int, "edges": [[a, b], ...]}; edge order gives edge ids.
Multigraph parse_graph(std::string_view text);
/// {"graph": {...}, "k": int, "c": [int per vertex]}.
demand::DemandInstance parse_demand(std::string_view text);
/// {"ground": int, "k": int, "sets": [[0-based elements], ...], "g": [int, ...]}.
family::FamilyInstance parse_family(std::string_view text);
/// {"colors": [int, ...]}, colors 1-based.
std::vector<Color> parse_colors(std::string_view text);

std::string to_json(const Multigraph& g);
std::string to_json(const demand::DemandInstance& inst);
std::string to_json(const family::FamilyInstance& inst);
std::string colors_to_json(const std::vector<Color>& colors);

/// Whole file as a string; throws InvalidInput if it cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

} // namespace supercolor::io
