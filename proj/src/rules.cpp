#include "vnim/rules.hpp"

#include "vnim/errors.hpp"

namespace vnim {

std::string_view to_string(Orientation o)
{
    return o == Orientation::directed ? "directed" : "undirected";
}

std::string_view to_string(Ruleset r)
{
    return r == Ruleset::vertexnim ? "vertexnim" : "stockman";
}

std::string_view to_string(Convention c)
{
    return c == Convention::normal ? "normal" : "misere";
}

std::string_view to_string(Player p)
{
    return p == Player::first ? "first" : "second";
}

std::string_view to_string(Outcome o)
{
    return o == Outcome::P ? "P" : "N";
}

std::optional<Orientation> parse_orientation(std::string_view text)
{
    if (text == "directed" || text == "D")
        return Orientation::directed;
    if (text == "undirected" || text == "U")
        return Orientation::undirected;
    return std::nullopt;
}

std::optional<Ruleset> parse_ruleset(std::string_view text)
{
    if (text == "vertexnim")
        return Ruleset::vertexnim;
    if (text == "stockman")
        return Ruleset::stockman;
    return std::nullopt;
}

std::optional<Convention> parse_convention(std::string_view text)
{
    if (text == "normal")
        return Convention::normal;
    if (text == "misere")
        return Convention::misere;
    return std::nullopt;
}

std::string describe(const Move& m, const VertexId& from)
{
    return "reduce " + from + " to " + std::to_string(m.reduce_to) + ", go " +
           (m.destination ? *m.destination : std::string("end"));
}

Position make_position(GameGraph graph, const VertexId& start, Ruleset ruleset, Convention convention)
{
    if (ruleset == Ruleset::stockman && convention == Convention::misere)
        throw UnsupportedCombination();
    if (graph.empty())
        throw GraphError("graph has no vertices");
    if (ruleset == Ruleset::vertexnim) {
        for (VertexIndex v = 0; v < graph.size(); ++v)
            if (graph.weight(v) == 0)
                throw GraphError("vertex '" + graph.id(v) + "' has weight 0; vertexnim weights must be positive");
        if (auto report = validate_playable(graph); !report.ok)
            throw GraphError("graph is not " +
                             std::string(graph.directed() ? "strongly connected: " : "connected: ") +
                             report.describe());
    } else {
        bool positive = false;
        for (Weight w : graph.weights())
            positive = positive || w > 0;
        if (!positive)
            throw GraphError("stockman instance needs at least one positive weight");
    }
    Position pos;
    pos.current = graph.require(start);
    pos.graph = std::move(graph);
    pos.ruleset = ruleset;
    pos.convention = convention;
    return pos;
}

Terminal terminal_status(const Position& pos)
{
    if (pos.ruleset == Ruleset::vertexnim) {
        if (!pos.graph.empty())
            return Terminal::nonterminal;
        return pos.convention == Convention::normal ? Terminal::previous_mover_wins : Terminal::mover_to_act_wins;
    }
    if (pos.current_weight() != 0)
        return Terminal::nonterminal;
    // Blocked on a zero: the player to act cannot move and loses.
    return Terminal::previous_mover_wins;
}

std::vector<std::optional<VertexId>> legal_destinations(const Position& pos, Weight reduce_to)
{
    std::vector<std::optional<VertexId>> result;
    if (is_terminal(pos))
        return result;
    const GameGraph& g = pos.graph;
    const VertexIndex u = *pos.current;
    if (reduce_to >= g.weight(u))
        return result;
    const bool deleting = pos.ruleset == Ruleset::vertexnim && reduce_to == 0;
    for (VertexIndex x : g.out_neighbors(u))
        if (!(deleting && x == u))
            result.emplace_back(g.id(x));
    if (deleting && g.size() == 1)
        result.emplace_back(std::nullopt);
    return result;
}

std::vector<Move> legal_moves(const Position& pos)
{
    if (is_terminal(pos))
        throw TerminalPosition();
    std::vector<Move> moves;
    const Weight w = pos.current_weight();
    for (Weight k = 0; k < w; ++k)
        for (auto& dest : legal_destinations(pos, k))
            moves.push_back({k, std::move(dest)});
    return moves;
}

Position apply_move(const Position& pos, const Move& m)
{
    if (is_terminal(pos))
        throw TerminalPosition();
    const GameGraph& g = pos.graph;
    const VertexIndex u = *pos.current;
    if (m.reduce_to >= g.weight(u))
        throw IllegalMove("bad reduction: " + std::to_string(m.reduce_to) + " is not below the current weight " +
                          std::to_string(g.weight(u)));

    const bool deleting = pos.ruleset == Ruleset::vertexnim && m.reduce_to == 0;
    Position next;
    next.ruleset = pos.ruleset;
    next.convention = pos.convention;
    next.to_move = other(pos.to_move);

    if (!m.destination) {
        if (!(deleting && g.size() == 1))
            throw IllegalMove("bad destination: the game only ends by emptying the last vertex");
        next.graph = remove_zero_vertex(g, u);
        return next;
    }

    auto target = g.index_of(*m.destination);
    if (!target)
        throw IllegalMove("bad destination: unknown vertex '" + *m.destination + "'");
    if (deleting && *target == u)
        throw IllegalMove("deleted-vertex destination: '" + *m.destination + "' is removed by this move");
    if (!g.has_arc(u, *target))
        throw IllegalMove("bad destination: '" + *m.destination + "' is not adjacent to '" + g.id(u) + "'");

    if (deleting) {
        next.graph = remove_zero_vertex(g, u);
        next.current = next.graph.require(*m.destination);
    } else {
        next.graph = g.with_weight(u, m.reduce_to);
        next.current = *target;
    }
    return next;
}

} // namespace vnim
