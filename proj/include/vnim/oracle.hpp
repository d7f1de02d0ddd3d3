#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "vnim/rules.hpp"

namespace vnim {

struct OracleBudget
{
    std::size_t max_vertices = 8;
    Weight max_total_weight = 16;
};

/// Canonical text of a position: orientation, rules, sorted vertices and edges, current vertex.
std::string state_key(const Position& pos);

/**
 * Exhaustive memoized minimax over the game tree.
 *
 * Internally positions are packed into a fixed-width record indexed by
 * vertex rank (at most 8 vertices, weights below 256), which is what the
 * memo is keyed on. Vertex names never influence the value of a position,
 * so two positions that differ only in naming share an entry.
 *
 * The memo may be shared between threads: lookups take a shared lock on
 * one shard, inserts publish once per key.
 */
class Oracle
{
public:
    static constexpr std::size_t max_supported_vertices = 8;

    explicit Oracle(OracleBudget budget = {}, bool memoize = true);

    Oracle(const Oracle&) = delete;
    Oracle& operator=(const Oracle&) = delete;

    const OracleBudget& budget() const noexcept { return budget_; }
    bool within_budget(const Position& pos) const;

    /// Throws BudgetExceeded when the position is outside the budget.
    Outcome solve(const Position& pos);

    /// A move to a P successor, or nullopt at P positions and terminal ones.
    std::optional<Move> best_move(const Position& pos);

    std::size_t hits() const noexcept { return hits_.load(std::memory_order_relaxed); }
    std::size_t misses() const noexcept { return misses_.load(std::memory_order_relaxed); }
    std::size_t size() const;

    struct Packed
    {
        std::uint64_t adjacency = 0; // byte i = out-neighbor mask of vertex i
        std::uint64_t weights = 0;   // byte i = weight of vertex i
        std::uint8_t count = 0;
        std::uint8_t current = 0;
        std::uint8_t flags = 0; // bit0 directed, bit1 stockman, bit2 misere

        friend bool operator==(const Packed&, const Packed&) = default;
    };

private:
    struct PackedHash
    {
        std::size_t operator()(const Packed& p) const noexcept;
    };

    struct Shard
    {
        mutable std::shared_mutex mutex;
        std::unordered_map<Packed, Outcome, PackedHash> table;
    };

    static constexpr std::size_t shard_count = 64;

    void check_budget(const Position& pos) const;
    Outcome search(const Packed& state);
    std::optional<Outcome> lookup(const Packed& state) const;
    void publish(const Packed& state, Outcome outcome);

    OracleBudget budget_;
    bool memoize_;
    std::unique_ptr<std::array<Shard, shard_count>> shards_;
    std::atomic<std::size_t> hits_{0};
    std::atomic<std::size_t> misses_{0};
};

Oracle::Packed pack(const Position& pos);

enum class LoopPolicy { all_subsets, all_loops, no_loops };
enum class ShapeFilter { any, circuits };

/// The family of instances a check or an experiment ranges over.
struct Envelope
{
    Orientation orientation = Orientation::undirected;
    Ruleset ruleset = Ruleset::vertexnim;
    Convention convention = Convention::normal;
    std::size_t min_vertices = 1;
    std::size_t max_vertices = 3;
    Weight min_weight = 1;
    Weight max_weight = 2;
    LoopPolicy loops = LoopPolicy::all_subsets;
    ShapeFilter shape = ShapeFilter::any;
    /// When false only the first vertex (v1 for circuits) is used as start.
    bool all_starts = true;
};

/**
 * Calls visit for every valid instance of the envelope in a fixed order:
 * vertex count, edge subset, loop subset, weight vector, start vertex.
 * Vertex ids are a, b, c, ... except for circuits, which use v1..vN with arcs
 * v_i -> v_{i+1}. Only connected (undirected) or strongly connected
 * (directed) graphs are emitted; Stockman instances need a positive weight.
 */
void for_each_instance(const Envelope& env, const std::function<void(const Position&)>& visit);

std::vector<Position> enumerate_instances(const Envelope& env);

/// Seeded uniform sample (with replacement) of the envelope's instances.
std::vector<Position> sample_instances(const Envelope& env, std::size_t count, std::uint64_t seed);

} // namespace vnim
