#pragma once
// Flat-file artifact formats: grid raster, network edge list, decision log.

#include <string>
#include <vector>

#include "pnav/explore.hpp"
#include "pnav/passage_map.hpp"

namespace pnav {

/// Text raster, one row per line, top row first: '.' unlabeled,
/// '#' obstructed, base-36 digit for the passage id (mod 36).
std::string serialize_grid(const PassageGrid& grid);

/// `edge i1 j1 i2 j2` lines, lexicographic order.
std::string serialize_network(const PassageNetwork& network);

/// One line per decision: x y theta F|R magnitude traveled trunc.
std::string serialize_decision_log(const std::vector<DecisionRecord>& log);
std::vector<DecisionRecord> load_decision_log(const std::string& text);

}  // namespace pnav
