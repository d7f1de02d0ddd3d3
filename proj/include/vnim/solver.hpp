#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vnim/graph.hpp"
#include "vnim/oracle.hpp"
#include "vnim/rules.hpp"

namespace vnim {

/// Per-vertex P/N labels plus the peeling sequence that produced them.
struct Labeling
{
    struct Step
    {
        std::vector<VertexIndex> s;
        std::vector<VertexIndex> t;
    };

    std::vector<Outcome> label;
    std::vector<Step> steps;

    Outcome operator[](VertexIndex v) const { return label.at(v); }
};

/// Which sink component lo_labeling peels when several are available.
enum class SinkChoice { first, last, seeded };

/**
 * Peels a sink strongly connected component S per round. An even S is
 * labeled N and removed alone; an odd S is labeled P and removed together
 * with T, the outside vertices having an arc into S, which are labeled N.
 */
Labeling lo_labeling(const GameGraph& g, SinkChoice choice = SinkChoice::first, std::uint64_t seed = 0);

/**
 * Peels the local weight minima S (weight <= every neighbor) and their
 * neighbors T per round; S is labeled P and T is labeled N. Requires an
 * undirected loop-free graph.
 */
Labeling lu_labeling(const GameGraph& g);

/// Throws OutOfScope for weights <= 1 (open case) and PreconditionError for fewer than 3 heaps.
Outcome solve_adjacent_nim(std::span<const Weight> weights);

/// Same formula under Stockman's rules, where weight-1 heaps are allowed.
Outcome solve_stockman_circuit(std::span<const Weight> weights);

/// Circuit weights listed from the current vertex along the arcs, or nullopt if g is not a circuit of length >= 3.
std::optional<std::vector<Weight>> circuit_weights_from(const GameGraph& g, VertexIndex start);

Outcome solve_directed_all_loops(const Position& pos);
Outcome solve_undirected_all_loops(const Position& pos);
Outcome solve_undirected(const Position& pos);
Outcome solve_stockman_undirected(const Position& pos);
Outcome solve_misere(const Position& pos);

enum class Method {
    terminal,
    circuit_formula,
    directed_all_loops,
    undirected_all_loops,
    undirected_general,
    stockman_undirected,
    stockman_circuit,
    misere_reduction,
    oracle_fallback,
    open_problem,
};

std::string_view to_string(Method m);

enum class MethodPreference { automatic, theorem, oracle };

struct SolveOptions
{
    MethodPreference preference = MethodPreference::automatic;
    OracleBudget budget{};
    /// Shared memo for fallbacks; a private one is created when null.
    Oracle* oracle = nullptr;
};

struct SolveReport
{
    /// Empty for open-problem instances outside the oracle budget.
    std::optional<Outcome> outcome;
    Method method = Method::open_problem;
    std::optional<Move> witness;
};

/// Routes a position to the matching closed form, else to the oracle.
SolveReport solve(const Position& pos, const SolveOptions& options = {});

/// Outcome and method only; no witness search.
SolveReport classify(const Position& pos, const SolveOptions& options = {});

struct WitnessSearch
{
    std::optional<Move> move;
    /// Set when no move from the {0, 1, w-1} candidates reached a P successor.
    bool fallback_used = false;
};

WitnessSearch find_winning_move(const Position& pos, const SolveOptions& options = {});

inline std::optional<Move> winning_move(const Position& pos, const SolveOptions& options = {})
{
    return find_winning_move(pos, options).move;
}

/// Number of fallback activations since program start.
std::uint64_t witness_fallback_count();

} // namespace vnim
