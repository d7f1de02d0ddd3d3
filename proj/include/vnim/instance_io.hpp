#pragma once

#include <string>
#include <string_view>

#include "vnim/rules.hpp"

namespace vnim {

/**
 * Line-oriented instance format, '#' starts a comment:
 *
 *     game <vertexnim|stockman> <normal|misere>
 *     graph <directed|undirected>
 *     v <id> <weight>
 *     e <id> <id>          # "e a a" declares a loop
 *     start <id>
 *
 * Throws ParseError carrying the offending line (0 when the error concerns
 * the whole file, such as a disconnected graph).
 */
Position parse_instance(std::string_view text);

Position load_instance(const std::string& path);

/// Normalized text: vertices and edges sorted, undirected edges once with the smaller id first.
std::string serialize_instance(const Position& pos);

/// One-way Graphviz export; the current vertex is drawn as a double circle.
std::string to_dot(const Position& pos);

} // namespace vnim
