#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vnim/graph.hpp"

namespace vnim {

/// vertexnim deletes emptied vertices; stockman keeps them and blocks on zero.
enum class Ruleset { vertexnim, stockman };

enum class Convention { normal, misere };

enum class Player { first, second };

enum class Outcome { P, N };

std::string_view to_string(Orientation o);
std::string_view to_string(Ruleset r);
std::string_view to_string(Convention c);
std::string_view to_string(Player p);
std::string_view to_string(Outcome o);

std::optional<Orientation> parse_orientation(std::string_view text);
std::optional<Ruleset> parse_ruleset(std::string_view text);
std::optional<Convention> parse_convention(std::string_view text);

inline Player other(Player p) { return p == Player::first ? Player::second : Player::first; }
inline Outcome flip(Outcome o) { return o == Outcome::P ? Outcome::N : Outcome::P; }

struct Move
{
    Weight reduce_to = 0;
    /// nullopt is the end-of-game marker (emptying the last vertex).
    std::optional<VertexId> destination;

    friend bool operator==(const Move&, const Move&) = default;
};

/// "reduce <id> to <k>, go <id|end>"
std::string describe(const Move& m, const VertexId& from);

struct Position
{
    GameGraph graph;
    /// Empty only when the graph is empty.
    std::optional<VertexIndex> current;
    Ruleset ruleset = Ruleset::vertexnim;
    Convention convention = Convention::normal;
    Player to_move = Player::first;

    const VertexId& current_id() const { return graph.id(current.value()); }
    Weight current_weight() const { return graph.weight(current.value()); }

    friend bool operator==(const Position&, const Position&) = default;
};

/**
 * Checks the ruleset/convention pair and the graph, then builds a Position.
 * Throws UnsupportedCombination for misère Stockman, GraphError for zero
 * weights under vertexnim or an unplayable graph, UnknownVertex for a bad start.
 */
Position make_position(GameGraph graph, const VertexId& start, Ruleset ruleset,
                       Convention convention = Convention::normal);

enum class Terminal { nonterminal, previous_mover_wins, mover_to_act_wins };

Terminal terminal_status(const Position& pos);
inline bool is_terminal(const Position& pos) { return terminal_status(pos) != Terminal::nonterminal; }

/// Moves ordered by reduce_to ascending, then destination id (end marker last).
std::vector<Move> legal_moves(const Position& pos);

/// Legal destinations for one reduction value; empty if the reduction is illegal.
std::vector<std::optional<VertexId>> legal_destinations(const Position& pos, Weight reduce_to);

Position apply_move(const Position& pos, const Move& m);

} // namespace vnim
