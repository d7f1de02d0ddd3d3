#include "vnim/oracle.hpp"

#include <bit>
#include <mutex>
#include <sstream>

#include "vnim/errors.hpp"

namespace vnim {

namespace {

constexpr std::uint8_t flag_directed = 1;
constexpr std::uint8_t flag_stockman = 2;
constexpr std::uint8_t flag_misere = 4;

std::uint8_t byte_at(std::uint64_t word, unsigned i)
{
    return static_cast<std::uint8_t>(word >> (8 * i));
}

void set_byte(std::uint64_t& word, unsigned i, std::uint8_t value)
{
    word &= ~(std::uint64_t{0xff} << (8 * i));
    word |= std::uint64_t{value} << (8 * i);
}

/// Drops bit v and shifts the higher bits down.
std::uint8_t squeeze_bit(std::uint8_t mask, unsigned v)
{
    const unsigned low = mask & ((1u << v) - 1u);
    const unsigned high = (static_cast<unsigned>(mask) >> (v + 1)) << v;
    return static_cast<std::uint8_t>(low | high);
}

/// Drops byte v and shifts the higher bytes down.
std::uint64_t squeeze_byte(std::uint64_t word, unsigned v)
{
    const std::uint64_t low = v == 0 ? 0 : (word & ((std::uint64_t{1} << (8 * v)) - 1));
    const std::uint64_t high = v >= 7 ? 0 : (word >> (8 * (v + 1))) << (8 * v);
    return low | high;
}

/// Zero-vertex deletion on a packed state; current is left for the caller.
Oracle::Packed remove_packed(const Oracle::Packed& s, unsigned v)
{
    const std::uint8_t self = static_cast<std::uint8_t>(1u << v);
    const std::uint8_t succs = byte_at(s.adjacency, v) & static_cast<std::uint8_t>(~self);
    Oracle::Packed out = s;
    for (unsigned p = 0; p < s.count; ++p) {
        if (p == v)
            continue;
        std::uint8_t adj = byte_at(s.adjacency, p);
        if (adj & self)
            adj |= succs;
        set_byte(out.adjacency, p, adj);
    }
    out.adjacency = squeeze_byte(out.adjacency, v);
    out.weights = squeeze_byte(out.weights, v);
    out.count = static_cast<std::uint8_t>(s.count - 1);
    for (unsigned p = 0; p < out.count; ++p)
        set_byte(out.adjacency, p, squeeze_bit(byte_at(out.adjacency, p), v));
    return out;
}

} // namespace

Oracle::Packed pack(const Position& pos)
{
    const GameGraph& g = pos.graph;
    if (g.size() > Oracle::max_supported_vertices)
        throw BudgetExceeded("oracle supports at most 8 vertices");
    Oracle::Packed s;
    s.count = static_cast<std::uint8_t>(g.size());
    s.current = pos.current ? static_cast<std::uint8_t>(*pos.current) : 0;
    s.flags = static_cast<std::uint8_t>((g.directed() ? flag_directed : 0) |
                                        (pos.ruleset == Ruleset::stockman ? flag_stockman : 0) |
                                        (pos.convention == Convention::misere ? flag_misere : 0));
    for (VertexIndex v = 0; v < g.size(); ++v) {
        if (g.weight(v) > 255)
            throw BudgetExceeded("oracle supports weights up to 255");
        set_byte(s.weights, static_cast<unsigned>(v), static_cast<std::uint8_t>(g.weight(v)));
        std::uint8_t adj = 0;
        for (VertexIndex x : g.out_neighbors(v))
            adj |= static_cast<std::uint8_t>(1u << x);
        set_byte(s.adjacency, static_cast<unsigned>(v), adj);
    }
    return s;
}

std::string state_key(const Position& pos)
{
    const GameGraph& g = pos.graph;
    std::ostringstream out;
    out << (g.directed() ? 'D' : 'U') << '|' << to_string(pos.ruleset) << '|' << to_string(pos.convention) << '|';
    for (VertexIndex v = 0; v < g.size(); ++v)
        out << (v ? "," : "") << g.id(v) << ':' << g.weight(v);
    out << '|';
    bool first = true;
    for (auto [a, b] : g.edges()) {
        out << (first ? "" : ",") << g.id(a) << (g.directed() ? ">" : "-") << g.id(b);
        first = false;
    }
    out << "|@" << (pos.current ? g.id(*pos.current) : std::string("-"));
    return out.str();
}

std::size_t Oracle::PackedHash::operator()(const Packed& p) const noexcept
{
    std::uint64_t h = p.adjacency * 0x9e3779b97f4a7c15ULL;
    h ^= (p.weights + 0x632be59bd9b4e019ULL) * 0xc2b2ae3d27d4eb4fULL;
    h ^= (std::uint64_t{p.count} << 16 | std::uint64_t{p.current} << 8 | p.flags) * 0x165667b19e3779f9ULL;
    h ^= h >> 31;
    return static_cast<std::size_t>(h);
}

Oracle::Oracle(OracleBudget budget, bool memoize)
    : budget_(budget), memoize_(memoize), shards_(std::make_unique<std::array<Shard, shard_count>>())
{
}

bool Oracle::within_budget(const Position& pos) const
{
    const GameGraph& g = pos.graph;
    if (g.size() > budget_.max_vertices || g.size() > max_supported_vertices)
        return false;
    if (g.total_weight() > budget_.max_total_weight)
        return false;
    for (Weight w : g.weights())
        if (w > 255)
            return false;
    return true;
}

void Oracle::check_budget(const Position& pos) const
{
    if (!within_budget(pos)) {
        std::ostringstream msg;
        msg << "oracle budget exceeded: " << pos.graph.size() << " vertices, total weight "
            << pos.graph.total_weight() << " (limits " << budget_.max_vertices << " vertices, total weight "
            << budget_.max_total_weight << ")";
        throw BudgetExceeded(msg.str());
    }
}

std::size_t Oracle::size() const
{
    std::size_t total = 0;
    for (const Shard& shard : *shards_) {
        std::shared_lock lock(shard.mutex);
        total += shard.table.size();
    }
    return total;
}

std::optional<Outcome> Oracle::lookup(const Packed& state) const
{
    const Shard& shard = (*shards_)[PackedHash{}(state) % shard_count];
    std::shared_lock lock(shard.mutex);
    auto it = shard.table.find(state);
    if (it == shard.table.end())
        return std::nullopt;
    return it->second;
}

void Oracle::publish(const Packed& state, Outcome outcome)
{
    Shard& shard = (*shards_)[PackedHash{}(state) % shard_count];
    std::unique_lock lock(shard.mutex);
    shard.table.try_emplace(state, outcome);
}

Outcome Oracle::search(const Packed& s)
{
    const bool stockman = s.flags & flag_stockman;
    const bool misere = s.flags & flag_misere;

    if (!stockman && s.count == 0)
        return misere ? Outcome::N : Outcome::P;
    const unsigned u = s.current;
    const std::uint8_t w = byte_at(s.weights, u);
    if (stockman && w == 0)
        return Outcome::P;

    if (memoize_) {
        if (auto hit = lookup(s)) {
            hits_.fetch_add(1, std::memory_order_relaxed);
            return *hit;
        }
        misses_.fetch_add(1, std::memory_order_relaxed);
    }

    const std::uint8_t adj = byte_at(s.adjacency, u);
    Outcome result = Outcome::P;
    for (unsigned k = 0; k < w && result == Outcome::P; ++k) {
        if (!stockman && k == 0) {
            if (s.count == 1) {
                // Emptying the last vertex ends the game.
                if (!misere)
                    result = Outcome::N;
                continue;
            }
            Packed base = remove_packed(s, u);
            for (unsigned d = 0; d < s.count; ++d) {
                if (d == u || !(adj & (1u << d)))
                    continue;
                Packed child = base;
                child.current = static_cast<std::uint8_t>(d > u ? d - 1 : d);
                if (search(child) == Outcome::P) {
                    result = Outcome::N;
                    break;
                }
            }
            continue;
        }
        Packed base = s;
        set_byte(base.weights, u, static_cast<std::uint8_t>(k));
        for (unsigned d = 0; d < s.count; ++d) {
            if (!(adj & (1u << d)))
                continue;
            Packed child = base;
            child.current = static_cast<std::uint8_t>(d);
            if (search(child) == Outcome::P) {
                result = Outcome::N;
                break;
            }
        }
    }

    if (memoize_)
        publish(s, result);
    return result;
}

Outcome Oracle::solve(const Position& pos)
{
    check_budget(pos);
    return search(pack(pos));
}

std::optional<Move> Oracle::best_move(const Position& pos)
{
    check_budget(pos);
    if (is_terminal(pos))
        return std::nullopt;
    for (const Move& m : legal_moves(pos)) {
        Position child = apply_move(pos, m);
        if (search(pack(child)) == Outcome::P)
            return m;
    }
    return std::nullopt;
}

} // namespace vnim
