#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "vnim/errors.hpp"
#include "vnim/oracle.hpp"
#include "vnim/rules.hpp"
#include "vnim/solver.hpp"

namespace vnim {

/// Which player, if any, the engine controls.
enum class EngineSide { none, first, second };

std::string_view to_string(EngineSide side);
std::optional<EngineSide> parse_engine_side(std::string_view text);

struct HistoryEntry
{
    Player player = Player::first;
    VertexId from;
    Move move;
};

struct GameSession
{
    std::string id;
    Position initial;
    Position position;
    std::vector<HistoryEntry> history;
    EngineSide engine = EngineSide::none;
    std::optional<SolveReport> analysis;

    bool finished() const { return is_terminal(position); }
    std::optional<Player> winner() const;
    bool engine_to_move() const;
};

class UnknownSession : public Error
{
public:
    explicit UnknownSession(const std::string& id) : Error("unknown game '" + id + "'") {}
};

class WrongTurn : public Error
{
public:
    using Error::Error;
};

/// Field-level problems in a game description.
class InvalidInstance : public Error
{
public:
    struct Field
    {
        std::string field;
        std::string message;
    };

    explicit InvalidInstance(std::vector<Field> fields);
    InvalidInstance(std::string field, std::string message)
        : InvalidInstance(std::vector<Field>{{std::move(field), std::move(message)}})
    {
    }
    const std::vector<Field>& fields() const noexcept { return fields_; }

private:
    std::vector<Field> fields_;
};

/// Builds a position from the {game, graph} members of a create request.
Position position_from_json(const nlohmann::json& body);

nlohmann::json state_to_json(const GameSession& session);
nlohmann::json history_to_json(const std::vector<HistoryEntry>& history);
nlohmann::json report_to_json(const SolveReport& report, const Position& pos);

/// Replays history from the initial position; throws IllegalMove if it does not apply.
Position replay(const Position& initial, const std::vector<HistoryEntry>& history);

/**
 * The engine's reply: a winning move when one exists, otherwise the legal move
 * with the lowest destination id and then the smallest reduction.
 */
Move engine_move(const Position& pos, const SolveOptions& options);

/**
 * In-memory game sessions. Different sessions may be used concurrently;
 * operations on one session are serialized by its own lock.
 */
class SessionStore
{
public:
    explicit SessionStore(OracleBudget budget = {});

    GameSession create(Position initial, EngineSide engine);
    GameSession get(const std::string& id) const;

    struct MoveResult
    {
        GameSession session;
        std::optional<HistoryEntry> engine_reply;
    };

    MoveResult submit(const std::string& id, const Move& m);
    /// move_to is a vertex id or "end".
    MoveResult submit(const std::string& id, Weight reduce_to, const std::string& move_to);
    SolveReport analyze(const std::string& id);

    std::size_t size() const;

    nlohmann::json snapshot() const;
    void restore(const nlohmann::json& snapshot);
    void save(const std::string& path) const;
    /// Missing files are not an error.
    void load(const std::string& path);

private:
    struct Slot
    {
        std::mutex mutex;
        GameSession session;
    };

    std::shared_ptr<Slot> find(const std::string& id) const;
    std::optional<HistoryEntry> play_engine(GameSession& session);
    std::string fresh_id();

    OracleBudget budget_;
    std::unique_ptr<Oracle> oracle_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

} // namespace vnim
