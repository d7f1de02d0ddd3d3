#include "vnim/session.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "vnim/instance_io.hpp"

namespace vnim {

using nlohmann::json;

namespace {

json move_to_json(const Move& m)
{
    return m.destination ? json(*m.destination) : json("end");
}

std::optional<VertexId> destination_from_json(const json& value, const Position& pos)
{
    const auto text = value.get<std::string>();
    // "end" names the end marker unless a vertex is literally called "end".
    if (text == "end" && !pos.graph.index_of(text))
        return std::nullopt;
    return text;
}

std::optional<Player> engine_player(EngineSide side)
{
    switch (side) {
    case EngineSide::first:
        return Player::first;
    case EngineSide::second:
        return Player::second;
    case EngineSide::none:
        break;
    }
    return std::nullopt;
}

} // namespace

std::string_view to_string(EngineSide side)
{
    switch (side) {
    case EngineSide::first:
        return "first";
    case EngineSide::second:
        return "second";
    case EngineSide::none:
        break;
    }
    return "none";
}

std::optional<EngineSide> parse_engine_side(std::string_view text)
{
    if (text == "none")
        return EngineSide::none;
    if (text == "first" || text == "engine-moves-first")
        return EngineSide::first;
    if (text == "second" || text == "engine-moves-second")
        return EngineSide::second;
    return std::nullopt;
}

InvalidInstance::InvalidInstance(std::vector<Field> fields)
    : Error("invalid instance: " + (fields.empty() ? std::string("?") : fields.front().field + ": " + fields.front().message)),
      fields_(std::move(fields))
{
}

std::optional<Player> GameSession::winner() const
{
    switch (terminal_status(position)) {
    case Terminal::previous_mover_wins:
        return other(position.to_move);
    case Terminal::mover_to_act_wins:
        return position.to_move;
    case Terminal::nonterminal:
        break;
    }
    return std::nullopt;
}

bool GameSession::engine_to_move() const
{
    return !finished() && engine_player(engine) == position.to_move;
}

Position position_from_json(const json& body)
{
    std::vector<InvalidInstance::Field> problems;
    auto fail = [&](std::string field, std::string message) { problems.push_back({std::move(field), std::move(message)}); };

    if (!body.is_object())
        throw InvalidInstance("body", "expected a JSON object");

    Ruleset ruleset = Ruleset::vertexnim;
    Convention convention = Convention::normal;
    const json& game = body.contains("game") ? body["game"] : json::object();
    if (game.is_string()) {
        if (auto r = parse_ruleset(game.get<std::string>()))
            ruleset = *r;
        else
            fail("game", "unknown ruleset");
    } else if (game.is_object()) {
        if (game.contains("ruleset")) {
            auto r = game["ruleset"].is_string() ? parse_ruleset(game["ruleset"].get<std::string>()) : std::nullopt;
            r ? void(ruleset = *r) : fail("game.ruleset", "expected \"vertexnim\" or \"stockman\"");
        }
        if (game.contains("convention")) {
            auto c = game["convention"].is_string() ? parse_convention(game["convention"].get<std::string>())
                                                    : std::nullopt;
            c ? void(convention = *c) : fail("game.convention", "expected \"normal\" or \"misere\"");
        }
    } else {
        fail("game", "expected an object");
    }

    if (!body.contains("graph") || !body["graph"].is_object())
        throw InvalidInstance("graph", "missing graph object");
    const json& graph = body["graph"];

    Orientation orientation = Orientation::undirected;
    if (graph.contains("orientation")) {
        auto o = graph["orientation"].is_string() ? parse_orientation(graph["orientation"].get<std::string>())
                                                  : std::nullopt;
        o ? void(orientation = *o) : fail("graph.orientation", "expected \"directed\" or \"undirected\"");
    }

    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;
    if (!graph.contains("vertices") || !graph["vertices"].is_array() || graph["vertices"].empty()) {
        fail("graph.vertices", "expected a non-empty array");
    } else {
        std::size_t i = 0;
        for (const json& v : graph["vertices"]) {
            const std::string where = "graph.vertices[" + std::to_string(i++) + "]";
            if (!v.is_object() || !v.contains("id") || !v["id"].is_string() || v["id"].get<std::string>().empty()) {
                fail(where + ".id", "expected a non-empty string");
                continue;
            }
            const auto id = v["id"].get<std::string>();
            if (id.find_first_of(" \t\r\n#") != std::string::npos)
                fail(where + ".id", "ids may not contain whitespace or '#'");
            if (!v.contains("weight") || !v["weight"].is_number_integer() || v["weight"].get<std::int64_t>() < 0) {
                fail(where + ".weight", "expected a non-negative integer");
                continue;
            }
            const auto weight = v["weight"].get<std::int64_t>();
            if (ruleset == Ruleset::vertexnim && weight == 0)
                fail(where + ".weight", "vertexnim weights must be positive");
            vertices.push_back({id, weight});
            if (v.contains("loop") && v["loop"].is_boolean() && v["loop"].get<bool>())
                edges.emplace_back(id, id);
        }
    }
    if (graph.contains("edges")) {
        if (!graph["edges"].is_array()) {
            fail("graph.edges", "expected an array of [from, to] pairs");
        } else {
            std::size_t i = 0;
            for (const json& e : graph["edges"]) {
                const std::string where = "graph.edges[" + std::to_string(i++) + "]";
                if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
                    fail(where, "expected [from, to]");
                    continue;
                }
                edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
            }
        }
    }
    std::string start;
    if (!graph.contains("start") || !graph["start"].is_string())
        fail("graph.start", "expected a vertex id");
    else
        start = graph["start"].get<std::string>();

    if (!problems.empty())
        throw InvalidInstance(std::move(problems));
    if (ruleset == Ruleset::stockman && convention == Convention::misere)
        throw UnsupportedCombination();

    try {
        return make_position(build_graph(orientation, vertices, edges), start, ruleset, convention);
    } catch (const UnknownVertex& e) {
        throw InvalidInstance("graph.start", e.what());
    } catch (const UnsupportedCombination&) {
        throw;
    } catch (const Error& e) {
        throw InvalidInstance("graph", e.what());
    }
}

json state_to_json(const GameSession& session)
{
    const Position& pos = session.position;
    const GameGraph& g = pos.graph;
    json vertices = json::array();
    for (VertexIndex v = 0; v < g.size(); ++v)
        vertices.push_back({{"id", g.id(v)}, {"weight", g.weight(v)}, {"loop", g.has_loop(v)}});
    json edges = json::array();
    for (auto [a, b] : g.edges())
        if (a != b)
            edges.push_back({g.id(a), g.id(b)});

    json state = {
        {"orientation", to_string(g.orientation())},
        {"ruleset", to_string(pos.ruleset)},
        {"convention", to_string(pos.convention)},
        {"vertices", vertices},
        {"edges", edges},
        {"current", pos.current ? json(g.id(*pos.current)) : json(nullptr)},
        {"to_move", to_string(pos.to_move)},
        {"engine_side", to_string(session.engine)},
        {"status", session.finished() ? "finished" : "ongoing"},
    };
    if (auto w = session.winner())
        state["winner"] = to_string(*w);
    return state;
}

json history_to_json(const std::vector<HistoryEntry>& history)
{
    json out = json::array();
    for (const auto& h : history)
        out.push_back({{"player", to_string(h.player)},
                       {"from", h.from},
                       {"reduce_to", h.move.reduce_to},
                       {"move_to", move_to_json(h.move)}});
    return out;
}

json report_to_json(const SolveReport& report, const Position& pos)
{
    json out = {
        {"outcome", report.outcome ? json(to_string(*report.outcome)) : json(nullptr)},
        {"method", to_string(report.method)},
    };
    if (report.witness && pos.current)
        out["witness"] = {{"from", pos.current_id()},
                          {"reduce_to", report.witness->reduce_to},
                          {"move_to", move_to_json(*report.witness)},
                          {"text", describe(*report.witness, pos.current_id())}};
    return out;
}

Position replay(const Position& initial, const std::vector<HistoryEntry>& history)
{
    Position pos = initial;
    for (const auto& h : history) {
        if (is_terminal(pos))
            throw IllegalMove("history continues past the end of the game");
        if (pos.current_id() != h.from || pos.to_move != h.player)
            throw IllegalMove("history does not match the position it is replayed on");
        pos = apply_move(pos, h.move);
    }
    return pos;
}

Move engine_move(const Position& pos, const SolveOptions& options)
{
    try {
        if (auto m = winning_move(pos, options))
            return *m;
    } catch (const BudgetExceeded&) {
    } catch (const OutOfScope&) {
    }
    std::optional<Move> best;
    auto better = [](const Move& a, const Move& b) {
        // End marker sorts after every vertex.
        if (a.destination.has_value() != b.destination.has_value())
            return a.destination.has_value();
        if (a.destination != b.destination)
            return *a.destination < *b.destination;
        return a.reduce_to < b.reduce_to;
    };
    const Weight w = pos.current_weight();
    for (Weight k = 0; k < std::min<Weight>(w, 2); ++k)
        for (auto& dest : legal_destinations(pos, k)) {
            Move m{k, std::move(dest)};
            if (!best || better(m, *best))
                best = std::move(m);
        }
    if (!best)
        throw TerminalPosition();
    return *best;
}

SessionStore::SessionStore(OracleBudget budget) : budget_(budget), oracle_(std::make_unique<Oracle>(budget)) {}

std::string SessionStore::fresh_id()
{
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    std::ostringstream out;
    out << std::hex;
    for (int i = 0; i < 2; ++i) {
        out.width(16);
        out.fill('0');
        out << rng();
    }
    return out.str();
}

std::shared_ptr<SessionStore::Slot> SessionStore::find(const std::string& id) const
{
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end())
        throw UnknownSession(id);
    return it->second;
}

std::optional<HistoryEntry> SessionStore::play_engine(GameSession& session)
{
    if (!session.engine_to_move())
        return std::nullopt;
    SolveOptions options{MethodPreference::automatic, budget_, oracle_.get()};
    Position& pos = session.position;
    HistoryEntry entry{pos.to_move, pos.current_id(), engine_move(pos, options)};
    pos = apply_move(pos, entry.move);
    session.history.push_back(entry);
    session.analysis.reset();
    return entry;
}

GameSession SessionStore::create(Position initial, EngineSide engine)
{
    auto slot = std::make_shared<Slot>();
    GameSession& s = slot->session;
    s.initial = initial;
    s.position = std::move(initial);
    s.engine = engine;
    play_engine(s);
    s.analysis = solve(s.position, {MethodPreference::automatic, budget_, oracle_.get()});

    std::unique_lock lock(mutex_);
    do {
        s.id = fresh_id();
    } while (sessions_.count(s.id));
    sessions_.emplace(s.id, slot);
    return s;
}

GameSession SessionStore::get(const std::string& id) const
{
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    return slot->session;
}

SessionStore::MoveResult SessionStore::submit(const std::string& id, const Move& m)
{
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    GameSession& s = slot->session;
    if (s.finished())
        throw WrongTurn("game is already finished");
    if (s.engine_to_move())
        throw WrongTurn("it is the engine's turn");

    HistoryEntry entry{s.position.to_move, s.position.current_id(), m};
    s.position = apply_move(s.position, m);
    s.history.push_back(std::move(entry));
    s.analysis.reset();

    MoveResult result;
    result.engine_reply = play_engine(s);
    result.session = s;
    return result;
}

SessionStore::MoveResult SessionStore::submit(const std::string& id, Weight reduce_to, const std::string& move_to)
{
    std::optional<VertexId> destination;
    {
        auto slot = find(id);
        std::lock_guard lock(slot->mutex);
        destination = destination_from_json(json(move_to), slot->session.position);
    }
    return submit(id, Move{reduce_to, destination});
}

SolveReport SessionStore::analyze(const std::string& id)
{
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    GameSession& s = slot->session;
    if (!s.analysis)
        s.analysis = solve(s.position, {MethodPreference::automatic, budget_, oracle_.get()});
    return *s.analysis;
}

std::size_t SessionStore::size() const
{
    std::shared_lock lock(mutex_);
    return sessions_.size();
}

json SessionStore::snapshot() const
{
    std::vector<std::shared_ptr<Slot>> slots;
    {
        std::shared_lock lock(mutex_);
        for (const auto& [id, slot] : sessions_)
            slots.push_back(slot);
    }
    json sessions = json::array();
    for (const auto& slot : slots) {
        std::lock_guard lock(slot->mutex);
        const GameSession& s = slot->session;
        sessions.push_back({{"id", s.id},
                            {"engine_side", to_string(s.engine)},
                            {"initial", serialize_instance(s.initial)},
                            {"history", history_to_json(s.history)}});
    }
    return {{"sessions", sessions}};
}

void SessionStore::restore(const json& snapshot)
{
    std::map<std::string, std::shared_ptr<Slot>> loaded;
    for (const json& entry : snapshot.at("sessions")) {
        auto slot = std::make_shared<Slot>();
        GameSession& s = slot->session;
        s.id = entry.at("id").get<std::string>();
        s.engine = parse_engine_side(entry.at("engine_side").get<std::string>()).value_or(EngineSide::none);
        s.initial = parse_instance(entry.at("initial").get<std::string>());
        Position pos = s.initial;
        for (const json& h : entry.at("history")) {
            HistoryEntry e;
            e.player = h.at("player").get<std::string>() == "first" ? Player::first : Player::second;
            e.from = h.at("from").get<std::string>();
            e.move.reduce_to = h.at("reduce_to").get<Weight>();
            e.move.destination = destination_from_json(h.at("move_to"), pos);
            pos = apply_move(pos, e.move);
            s.history.push_back(std::move(e));
        }
        s.position = replay(s.initial, s.history);
        loaded.emplace(s.id, std::move(slot));
    }
    std::unique_lock lock(mutex_);
    for (auto& [id, slot] : loaded)
        sessions_[id] = std::move(slot);
}

void SessionStore::save(const std::string& path) const
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write state file '" + path + "'");
    out << snapshot().dump(2) << '\n';
}

void SessionStore::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        return;
    restore(json::parse(in));
}

} // namespace vnim
