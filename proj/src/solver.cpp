#include "vnim/solver.hpp"

#include <algorithm>
#include <atomic>
#include <memory>

#include "vnim/errors.hpp"

namespace vnim {

namespace {

std::atomic<std::uint64_t> fallback_activations{0};

bool all_weights_one(const GameGraph& g)
{
    return std::all_of(g.weights().begin(), g.weights().end(), [](Weight w) { return w == 1; });
}

bool parity_odd(std::size_t n)
{
    return n % 2 == 1;
}

Outcome n_if(bool condition)
{
    return condition ? Outcome::N : Outcome::P;
}

/// Shared checks for the remove-then-delete solvers.
void require_vertexnim(const Position& pos, Orientation orientation, std::string_view who)
{
    const std::string name(who);
    if (pos.ruleset != Ruleset::vertexnim)
        throw PreconditionError(name + ": ruleset must be vertexnim");
    if (pos.graph.orientation() != orientation)
        throw PreconditionError(name + ": graph must be " + std::string(to_string(orientation)));
    if (pos.graph.empty() || !pos.current)
        throw TerminalPosition();
    for (Weight w : pos.graph.weights())
        if (w == 0)
            throw PreconditionError(name + ": weights must be positive");
    if (auto report = validate_playable(pos.graph); !report.ok)
        throw PreconditionError(name + ": graph is not playable, " + report.describe());
}

void require_normal(const Position& pos, std::string_view who)
{
    if (pos.convention != Convention::normal)
        throw PreconditionError(std::string(who) + ": normal convention expected (use solve_misere)");
}

/// Size of the component of `start` inside the vertex set `member`.
std::size_t component_size(const GameGraph& g, VertexIndex start, const std::vector<bool>& member)
{
    std::vector<bool> seen(g.size(), false);
    std::vector<VertexIndex> stack{start};
    seen[start] = true;
    std::size_t count = 0;
    while (!stack.empty()) {
        VertexIndex v = stack.back();
        stack.pop_back();
        ++count;
        for (VertexIndex x : g.out_neighbors(v))
            if (member[x] && !seen[x]) {
                seen[x] = true;
                stack.push_back(x);
            }
    }
    return count;
}

/// Vertices of weight >= 2 without a loop whose neighbors all weigh >= 2.
std::vector<bool> heavy_core(const GameGraph& g)
{
    std::vector<bool> core(g.size(), false);
    for (VertexIndex v = 0; v < g.size(); ++v) {
        if (g.weight(v) < 2 || g.has_loop(v))
            continue;
        auto nb = g.out_neighbors(v);
        core[v] = std::all_of(nb.begin(), nb.end(), [&](VertexIndex x) { return g.weight(x) >= 2; });
    }
    return core;
}

/// lu label of u, computed on u's component of the vertex set `core`.
Outcome lu_label_in_core(const GameGraph& g, VertexIndex u, const std::vector<bool>& core)
{
    // lu never crosses components, so the rest of the core is irrelevant.
    std::vector<bool> keep(g.size(), false);
    std::vector<VertexIndex> stack{u};
    keep[u] = true;
    while (!stack.empty()) {
        VertexIndex v = stack.back();
        stack.pop_back();
        for (VertexIndex x : g.out_neighbors(v))
            if (core[x] && !keep[x]) {
                keep[x] = true;
                stack.push_back(x);
            }
    }
    GameGraph sub = induced_subgraph(g, keep);
    return lu_labeling(sub)[sub.require(g.id(u))];
}

bool has_zero_neighbor(const GameGraph& g, VertexIndex v)
{
    for (VertexIndex x : g.out_neighbors(v))
        if (x != v && g.weight(x) == 0)
            return true;
    return false;
}

/// Stockman weight-1 vertices that lose for the player on them: no loop and no zero neighbor.
bool stockman_cold(const GameGraph& g, VertexIndex v)
{
    return g.weight(v) == 1 && !g.has_loop(v) && !has_zero_neighbor(g, v);
}

/// Stockman vertices whose play stays inside the lu game.
std::vector<bool> stockman_core(const GameGraph& g)
{
    std::vector<bool> core(g.size(), false);
    for (VertexIndex v = 0; v < g.size(); ++v) {
        if (g.weight(v) < 2 || g.has_loop(v) || has_zero_neighbor(g, v))
            continue;
        auto nb = g.out_neighbors(v);
        core[v] = std::none_of(nb.begin(), nb.end(), [&](VertexIndex x) { return stockman_cold(g, x); });
    }
    return core;
}

std::optional<std::pair<Outcome, Method>> theorem_route(const Position& pos)
{
    const GameGraph& g = pos.graph;
    const VertexIndex u = *pos.current;

    if (pos.ruleset == Ruleset::stockman) {
        if (!g.directed()) {
            if (!validate_playable(g).ok)
                return std::nullopt;
            return std::pair{solve_stockman_undirected(pos), Method::stockman_undirected};
        }
        auto circuit = circuit_weights_from(g, u);
        if (circuit && std::none_of(circuit->begin(), circuit->end(), [](Weight w) { return w == 0; }))
            return std::pair{solve_stockman_circuit(*circuit), Method::stockman_circuit};
        return std::nullopt;
    }

    if (pos.convention == Convention::misere) {
        if (!g.directed() || g.all_loops())
            return std::pair{solve_misere(pos), Method::misere_reduction};
        return std::nullopt;
    }

    if (!g.directed()) {
        if (g.all_loops())
            return std::pair{solve_undirected_all_loops(pos), Method::undirected_all_loops};
        return std::pair{solve_undirected(pos), Method::undirected_general};
    }
    if (g.all_loops())
        return std::pair{solve_directed_all_loops(pos), Method::directed_all_loops};
    auto circuit = circuit_weights_from(g, u);
    if (circuit && std::all_of(circuit->begin(), circuit->end(), [](Weight w) { return w >= 2; }))
        return std::pair{solve_adjacent_nim(*circuit), Method::circuit_formula};
    return std::nullopt;
}

SolveReport classify_with(const Position& pos, MethodPreference preference, Oracle& oracle)
{
    SolveReport report;
    if (preference == MethodPreference::oracle) {
        report.outcome = oracle.solve(pos);
        report.method = Method::oracle_fallback;
        return report;
    }
    if (auto status = terminal_status(pos); status != Terminal::nonterminal) {
        report.outcome = n_if(status == Terminal::mover_to_act_wins);
        report.method = Method::terminal;
        return report;
    }
    if (auto routed = theorem_route(pos)) {
        report.outcome = routed->first;
        report.method = routed->second;
        return report;
    }
    if (preference == MethodPreference::theorem)
        throw OutOfScope("no closed form covers this instance");
    if (oracle.within_budget(pos)) {
        report.outcome = oracle.solve(pos);
        report.method = Method::oracle_fallback;
        return report;
    }
    report.method = Method::open_problem;
    return report;
}

/// True when playing m from pos leaves the opponent in a P position.
bool leads_to_p(const Position& pos, const Move& m, MethodPreference preference, Oracle& oracle)
{
    Position child = apply_move(pos, m);
    if (auto status = terminal_status(child); status != Terminal::nonterminal)
        return status == Terminal::previous_mover_wins;
    try {
        return classify_with(child, preference, oracle).outcome == Outcome::P;
    } catch (const OutOfScope&) {
        // Theorem-only mode: successors without a closed form are not usable witnesses.
        return false;
    }
}

WitnessSearch search_witness(const Position& pos, MethodPreference preference, Oracle& oracle)
{
    WitnessSearch result;
    SolveReport report = classify_with(pos, preference, oracle);
    if (report.method == Method::open_problem)
        throw BudgetExceeded("no closed form and outside the oracle budget");
    if (report.outcome != Outcome::N || report.method == Method::terminal)
        return result;

    const Weight w = pos.current_weight();
    std::vector<Weight> candidates{0, 1, w - 1};
    std::erase_if(candidates, [w](Weight k) { return k >= w; });
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (Weight k : candidates)
        for (auto& dest : legal_destinations(pos, k)) {
            Move m{k, std::move(dest)};
            if (leads_to_p(pos, m, preference, oracle)) {
                result.move = std::move(m);
                return result;
            }
        }

    result.fallback_used = true;
    fallback_activations.fetch_add(1, std::memory_order_relaxed);
    constexpr Weight full_scan_limit = 4096;
    for (Weight k = 0; k < std::min(w, full_scan_limit); ++k) {
        if (std::binary_search(candidates.begin(), candidates.end(), k))
            continue;
        for (auto& dest : legal_destinations(pos, k)) {
            Move m{k, std::move(dest)};
            if (leads_to_p(pos, m, preference, oracle)) {
                result.move = std::move(m);
                return result;
            }
        }
    }
    return result;
}

} // namespace

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::terminal:
        return "terminal";
    case Method::circuit_formula:
        return "circuit-formula";
    case Method::directed_all_loops:
        return "directed-all-loops";
    case Method::undirected_all_loops:
        return "undirected-all-loops";
    case Method::undirected_general:
        return "undirected-general";
    case Method::stockman_undirected:
        return "stockman-undirected";
    case Method::stockman_circuit:
        return "stockman-circuit";
    case Method::misere_reduction:
        return "misere-reduction";
    case Method::oracle_fallback:
        return "oracle-fallback";
    case Method::open_problem:
        return "open-problem";
    }
    return "unknown";
}

Outcome solve_adjacent_nim(std::span<const Weight> weights)
{
    if (weights.size() < 3)
        throw PreconditionError("adjacent nim needs at least 3 heaps");
    if (std::any_of(weights.begin(), weights.end(), [](Weight w) { return w <= 1; }))
        throw OutOfScope("adjacent nim with a heap of size <= 1 is an open case");
    if (parity_odd(weights.size()))
        return Outcome::N;
    // 1-based index of the first minimum; the player who must play it loses.
    const auto first_min = std::min_element(weights.begin(), weights.end()) - weights.begin() + 1;
    return n_if(first_min % 2 == 0);
}

Outcome solve_stockman_circuit(std::span<const Weight> weights)
{
    if (weights.size() < 3)
        throw PreconditionError("stockman circuit needs at least 3 vertices");
    if (std::any_of(weights.begin(), weights.end(), [](Weight w) { return w == 0; }))
        throw OutOfScope("stockman circuit with a zero weight is not covered");
    if (parity_odd(weights.size()))
        return Outcome::N;
    const auto first_min = std::min_element(weights.begin(), weights.end()) - weights.begin() + 1;
    return n_if(first_min % 2 == 0);
}

std::optional<std::vector<Weight>> circuit_weights_from(const GameGraph& g, VertexIndex start)
{
    const std::size_t n = g.size();
    if (!g.directed() || n < 3 || start >= n)
        return std::nullopt;
    for (VertexIndex v = 0; v < n; ++v)
        if (g.out_neighbors(v).size() != 1 || g.in_neighbors(v).size() != 1 || g.has_loop(v))
            return std::nullopt;
    std::vector<Weight> weights;
    VertexIndex v = start;
    do {
        weights.push_back(g.weight(v));
        v = g.out_neighbors(v)[0];
    } while (v != start && weights.size() <= n);
    if (weights.size() != n)
        return std::nullopt;
    return weights;
}

Outcome solve_directed_all_loops(const Position& pos)
{
    require_vertexnim(pos, Orientation::directed, "solve_directed_all_loops");
    require_normal(pos, "solve_directed_all_loops");
    const GameGraph& g = pos.graph;
    if (!g.all_loops())
        throw PreconditionError("solve_directed_all_loops: every vertex needs a loop");

    if (all_weights_one(g))
        return n_if(parity_odd(g.size()));
    const VertexIndex u = *pos.current;
    if (g.weight(u) >= 2)
        return Outcome::N;

    std::vector<bool> ones(g.size());
    for (VertexIndex v = 0; v < g.size(); ++v)
        ones[v] = g.weight(v) == 1;
    GameGraph light = induced_subgraph(g, ones);
    return lo_labeling(light)[light.require(g.id(u))];
}

Outcome solve_undirected_all_loops(const Position& pos)
{
    require_vertexnim(pos, Orientation::undirected, "solve_undirected_all_loops");
    require_normal(pos, "solve_undirected_all_loops");
    const GameGraph& g = pos.graph;
    if (!g.all_loops())
        throw PreconditionError("solve_undirected_all_loops: every vertex needs a loop");

    if (all_weights_one(g))
        return n_if(parity_odd(g.size()));
    const VertexIndex u = *pos.current;
    if (g.weight(u) >= 2)
        return Outcome::N;

    std::vector<bool> ones(g.size());
    for (VertexIndex v = 0; v < g.size(); ++v)
        ones[v] = g.weight(v) == 1;
    return n_if(component_size(g, u, ones) % 2 == 0);
}

Outcome solve_undirected(const Position& pos)
{
    require_vertexnim(pos, Orientation::undirected, "solve_undirected");
    require_normal(pos, "solve_undirected");
    const GameGraph& g = pos.graph;
    const VertexIndex u = *pos.current;
    const Weight wu = g.weight(u);

    std::vector<bool> light(g.size());
    bool everything_light = true;
    for (VertexIndex v = 0; v < g.size(); ++v) {
        light[v] = g.weight(v) == 1 || v == u;
        everything_light = everything_light && light[v];
    }

    if (everything_light)
        return wu == 1 ? n_if(parity_odd(g.size())) : Outcome::N;
    if (wu >= 2 && g.has_loop(u))
        return Outcome::N;
    if (wu == 1)
        return n_if(component_size(g, u, light) % 2 == 0);
    for (VertexIndex x : g.out_neighbors(u))
        if (g.weight(x) == 1)
            return Outcome::N;
    return lu_label_in_core(g, u, heavy_core(g));
}

Outcome solve_stockman_undirected(const Position& pos)
{
    const GameGraph& g = pos.graph;
    if (pos.ruleset != Ruleset::stockman)
        throw PreconditionError("solve_stockman_undirected: ruleset must be stockman");
    if (pos.convention != Convention::normal)
        throw UnsupportedCombination();
    if (g.directed())
        throw PreconditionError("solve_stockman_undirected: graph must be undirected");
    if (g.empty() || !pos.current)
        throw PreconditionError("solve_stockman_undirected: no current vertex");
    if (auto report = validate_playable(g); !report.ok)
        throw PreconditionError("solve_stockman_undirected: graph is not connected, " + report.describe());

    const VertexIndex u = *pos.current;
    const Weight wu = g.weight(u);
    if (wu == 0)
        return Outcome::P;
    if (has_zero_neighbor(g, u))
        return Outcome::N;
    if (g.has_loop(u))
        return Outcome::N;
    if (wu == 1)
        return Outcome::P;
    // A weight-1 neighbor only wins for us when the opponent cannot escape it
    // through a loop or a zero neighbor.
    for (VertexIndex x : g.out_neighbors(u))
        if (stockman_cold(g, x))
            return Outcome::N;
    return lu_label_in_core(g, u, stockman_core(g));
}

Outcome solve_misere(const Position& pos)
{
    if (pos.ruleset == Ruleset::stockman)
        throw UnsupportedCombination();
    if (pos.graph.empty())
        return pos.convention == Convention::misere ? Outcome::N : Outcome::P;

    Position normal = pos;
    normal.convention = Convention::normal;
    const GameGraph& g = pos.graph;
    if (g.directed() && !g.all_loops())
        throw OutOfScope("misere play is only solved for undirected graphs and digraphs with all loops");
    require_vertexnim(pos, g.orientation(), "solve_misere");

    if (all_weights_one(g))
        return n_if(g.size() % 2 == 0);
    // A lone vertex without a loop must be emptied at once, and emptying it loses.
    if (g.size() == 1 && !g.has_loop(0))
        return Outcome::P;
    return g.directed() ? solve_directed_all_loops(normal) : solve_undirected(normal);
}

SolveReport classify(const Position& pos, const SolveOptions& options)
{
    std::unique_ptr<Oracle> local;
    Oracle* oracle = options.oracle;
    if (!oracle) {
        local = std::make_unique<Oracle>(options.budget);
        oracle = local.get();
    }
    return classify_with(pos, options.preference, *oracle);
}

SolveReport solve(const Position& pos, const SolveOptions& options)
{
    std::unique_ptr<Oracle> local;
    Oracle* oracle = options.oracle;
    if (!oracle) {
        local = std::make_unique<Oracle>(options.budget);
        oracle = local.get();
    }
    SolveReport report = classify_with(pos, options.preference, *oracle);
    if (report.outcome == Outcome::N && report.method != Method::terminal)
        report.witness = search_witness(pos, options.preference, *oracle).move;
    return report;
}

WitnessSearch find_winning_move(const Position& pos, const SolveOptions& options)
{
    std::unique_ptr<Oracle> local;
    Oracle* oracle = options.oracle;
    if (!oracle) {
        local = std::make_unique<Oracle>(options.budget);
        oracle = local.get();
    }
    return search_witness(pos, options.preference, *oracle);
}

std::uint64_t witness_fallback_count()
{
    return fallback_activations.load(std::memory_order_relaxed);
}

} // namespace vnim
