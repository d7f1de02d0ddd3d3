#include "vnim/instance_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "vnim/errors.hpp"

namespace vnim {

namespace {

std::vector<std::string_view> tokenize(std::string_view line)
{
    if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
            ++j;
        if (j > i)
            tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

void expect_arity(const std::vector<std::string_view>& tokens, std::size_t arity, std::size_t line)
{
    if (tokens.size() != arity + 1)
        throw ParseError(line, "'" + std::string(tokens[0]) + "' expects " + std::to_string(arity) + " argument" +
                                   (arity == 1 ? "" : "s"));
}

} // namespace

Position parse_instance(std::string_view text)
{
    std::optional<Ruleset> ruleset;
    std::optional<Convention> convention;
    std::optional<Orientation> orientation;
    std::optional<VertexId> start;
    std::size_t start_line = 0;
    std::size_t game_line = 0;
    std::vector<VertexSpec> vertices;
    std::map<VertexId, std::size_t> vertex_line;
    std::vector<EdgeSpec> edges;
    std::vector<std::size_t> edge_lines;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        auto tokens = tokenize(line);
        if (tokens.empty())
            continue;
        const std::string_view kw = tokens[0];
        if (kw == "game") {
            expect_arity(tokens, 2, line_no);
            if (ruleset)
                throw ParseError(line_no, "duplicate 'game' line");
            ruleset = parse_ruleset(tokens[1]);
            convention = parse_convention(tokens[2]);
            if (!ruleset)
                throw ParseError(line_no, "unknown ruleset '" + std::string(tokens[1]) + "'");
            if (!convention)
                throw ParseError(line_no, "unknown convention '" + std::string(tokens[2]) + "'");
            game_line = line_no;
        } else if (kw == "graph") {
            expect_arity(tokens, 1, line_no);
            if (orientation)
                throw ParseError(line_no, "duplicate 'graph' line");
            orientation = tokens[1] == "directed"     ? std::optional(Orientation::directed)
                          : tokens[1] == "undirected" ? std::optional(Orientation::undirected)
                                                      : std::nullopt;
            if (!orientation)
                throw ParseError(line_no, "unknown orientation '" + std::string(tokens[1]) + "'");
        } else if (kw == "v") {
            expect_arity(tokens, 2, line_no);
            std::int64_t weight = 0;
            auto w = tokens[2];
            auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
            if (ec != std::errc() || ptr != w.data() + w.size() || weight < 0)
                throw ParseError(line_no, "weight must be a non-negative integer, got '" + std::string(w) + "'");
            VertexId id(tokens[1]);
            if (!vertex_line.emplace(id, line_no).second)
                throw ParseError(line_no, "duplicate vertex '" + id + "'");
            vertices.push_back({std::move(id), weight});
        } else if (kw == "e") {
            expect_arity(tokens, 2, line_no);
            edges.emplace_back(VertexId(tokens[1]), VertexId(tokens[2]));
            edge_lines.push_back(line_no);
        } else if (kw == "start") {
            expect_arity(tokens, 1, line_no);
            if (start)
                throw ParseError(line_no, "duplicate 'start' line");
            start = VertexId(tokens[1]);
            start_line = line_no;
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(kw) + "'");
        }
    }

    const std::size_t eof = line_no;
    if (!ruleset)
        throw ParseError(eof, "missing 'game' line");
    if (!orientation)
        throw ParseError(eof, "missing 'graph' line");
    if (!start)
        throw ParseError(eof, "missing 'start' line");
    if (vertices.empty())
        throw ParseError(eof, "no vertices declared");

    for (std::size_t i = 0; i < edges.size(); ++i)
        for (const auto* id : {&edges[i].first, &edges[i].second})
            if (!vertex_line.count(*id))
                throw ParseError(edge_lines[i], "edge endpoint '" + *id + "' is not a declared vertex");
    if (!vertex_line.count(*start))
        throw ParseError(start_line, "unknown start vertex '" + *start + "'");
    if (*ruleset == Ruleset::vertexnim)
        for (const auto& v : vertices)
            if (v.weight == 0)
                throw ParseError(vertex_line[v.id], "vertex '" + v.id + "' has weight 0; vertexnim needs positive weights");
    if (*ruleset == Ruleset::stockman && *convention == Convention::misere)
        throw ParseError(game_line, "misere convention is not supported for the stockman ruleset");

    try {
        GameGraph g = build_graph(*orientation, vertices, edges);
        return make_position(std::move(g), *start, *ruleset, *convention);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(0, e.what());
    }
}

Position load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

std::string serialize_instance(const Position& pos)
{
    const GameGraph& g = pos.graph;
    std::ostringstream out;
    out << "game " << to_string(pos.ruleset) << ' ' << to_string(pos.convention) << '\n';
    out << "graph " << to_string(g.orientation()) << '\n';
    for (VertexIndex v = 0; v < g.size(); ++v)
        out << "v " << g.id(v) << ' ' << g.weight(v) << '\n';
    for (auto [a, b] : g.edges())
        out << "e " << g.id(a) << ' ' << g.id(b) << '\n';
    if (pos.current)
        out << "start " << g.id(*pos.current) << '\n';
    return out.str();
}

std::string to_dot(const Position& pos)
{
    const GameGraph& g = pos.graph;
    const char* arrow = g.directed() ? " -> " : " -- ";
    std::ostringstream out;
    out << (g.directed() ? "digraph" : "graph") << " vertexnim {\n";
    for (VertexIndex v = 0; v < g.size(); ++v) {
        out << "  \"" << g.id(v) << "\" [label=\"" << g.id(v) << "\\n" << g.weight(v) << "\"";
        if (pos.current == v)
            out << ", shape=doublecircle";
        out << "];\n";
    }
    for (auto [a, b] : g.edges())
        out << "  \"" << g.id(a) << '"' << arrow << '"' << g.id(b) << "\";\n";
    out << "}\n";
    return out.str();
}

} // namespace vnim
