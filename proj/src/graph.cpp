#include "vnim/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "vnim/errors.hpp"

namespace vnim {

namespace {

void sort_unique(std::vector<VertexIndex>& list)
{
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
}

std::vector<bool> reachable_from(const GameGraph& g, VertexIndex start, bool forward)
{
    std::vector<bool> seen(g.size(), false);
    std::vector<VertexIndex> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        VertexIndex v = stack.back();
        stack.pop_back();
        auto next = forward ? g.out_neighbors(v) : g.in_neighbors(v);
        for (VertexIndex x : next) {
            if (!seen[x]) {
                seen[x] = true;
                stack.push_back(x);
            }
        }
    }
    return seen;
}

} // namespace

std::optional<VertexIndex> GameGraph::index_of(const VertexId& id) const
{
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id)
        return std::nullopt;
    return static_cast<VertexIndex>(it - ids_.begin());
}

VertexIndex GameGraph::require(const VertexId& id) const
{
    auto v = index_of(id);
    if (!v)
        throw UnknownVertex(id);
    return *v;
}

Weight GameGraph::total_weight() const noexcept
{
    return std::accumulate(weights_.begin(), weights_.end(), Weight{0});
}

bool GameGraph::has_arc(VertexIndex from, VertexIndex to) const
{
    const auto& list = out_.at(from);
    return std::binary_search(list.begin(), list.end(), to);
}

bool GameGraph::all_loops() const
{
    for (VertexIndex v = 0; v < size(); ++v)
        if (!has_loop(v))
            return false;
    return true;
}

std::size_t GameGraph::edge_count() const noexcept
{
    std::size_t arcs = 0;
    std::size_t loops = 0;
    for (VertexIndex v = 0; v < out_.size(); ++v) {
        arcs += out_[v].size();
        if (std::binary_search(out_[v].begin(), out_[v].end(), v))
            ++loops;
    }
    if (directed())
        return arcs;
    return (arcs - loops) / 2 + loops;
}

std::vector<std::pair<VertexIndex, VertexIndex>> GameGraph::edges() const
{
    std::vector<std::pair<VertexIndex, VertexIndex>> result;
    for (VertexIndex v = 0; v < size(); ++v)
        for (VertexIndex x : out_[v])
            if (directed() || v <= x)
                result.emplace_back(v, x);
    return result;
}

GameGraph GameGraph::with_weight(VertexIndex v, Weight w) const
{
    GameGraph copy = *this;
    copy.weights_.at(v) = w;
    return copy;
}

GameGraph GameGraph::from_arcs(Orientation orientation, std::vector<VertexId> ids, std::vector<Weight> weights,
                               std::vector<std::vector<VertexIndex>> out)
{
    GameGraph g;
    g.orientation_ = orientation;
    g.ids_ = std::move(ids);
    g.weights_ = std::move(weights);
    g.out_ = std::move(out);
    for (auto& list : g.out_)
        sort_unique(list);
    if (g.directed()) {
        g.in_.assign(g.size(), {});
        for (VertexIndex v = 0; v < g.size(); ++v)
            for (VertexIndex s : g.out_[v])
                g.in_[s].push_back(v);
    }
    return g;
}

GameGraph build_graph(Orientation orientation, const std::vector<VertexSpec>& vertices,
                      const std::vector<EdgeSpec>& edges)
{
    std::vector<VertexId> ids;
    ids.reserve(vertices.size());
    for (const auto& spec : vertices) {
        if (spec.id.empty())
            throw GraphError("empty vertex id");
        if (spec.weight < 0)
            throw GraphError("negative weight on vertex '" + spec.id + "'");
        ids.push_back(spec.id);
    }
    std::sort(ids.begin(), ids.end());
    if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end())
        throw GraphError("duplicate vertex id '" + *dup + "'");

    std::unordered_map<VertexId, VertexIndex> index;
    index.reserve(ids.size());
    for (VertexIndex v = 0; v < ids.size(); ++v)
        index.emplace(ids[v], v);

    std::vector<Weight> weights(ids.size());
    for (const auto& spec : vertices)
        weights[index.at(spec.id)] = static_cast<Weight>(spec.weight);

    auto lookup = [&](const VertexId& id) {
        auto it = index.find(id);
        if (it == index.end())
            throw GraphError("edge endpoint '" + id + "' is not a declared vertex");
        return it->second;
    };

    std::vector<std::vector<VertexIndex>> out(ids.size());
    for (const auto& [from, to] : edges) {
        VertexIndex a = lookup(from);
        VertexIndex b = lookup(to);
        out[a].push_back(b);
        if (orientation == Orientation::undirected)
            out[b].push_back(a);
    }
    return GameGraph::from_arcs(orientation, std::move(ids), std::move(weights), std::move(out));
}

GameGraph induced_subgraph(const GameGraph& g, const std::vector<bool>& keep)
{
    std::vector<VertexIndex> remap(g.size(), g.size());
    std::vector<VertexId> ids;
    std::vector<Weight> weights;
    for (VertexIndex v = 0; v < g.size(); ++v) {
        if (keep.at(v)) {
            remap[v] = ids.size();
            ids.push_back(g.id(v));
            weights.push_back(g.weight(v));
        }
    }
    std::vector<std::vector<VertexIndex>> out(ids.size());
    for (VertexIndex v = 0; v < g.size(); ++v) {
        if (!keep[v])
            continue;
        for (VertexIndex x : g.out_neighbors(v))
            if (keep[x])
                out[remap[v]].push_back(remap[x]);
    }
    return GameGraph::from_arcs(g.orientation(), std::move(ids), std::move(weights), std::move(out));
}

GameGraph remove_zero_vertex(const GameGraph& g, VertexIndex v)
{
    if (v >= g.size())
        throw UnknownVertex("#" + std::to_string(v));

    // Vertices after v shift down by one.
    auto shift = [v](VertexIndex x) { return x > v ? x - 1 : x; };

    std::vector<VertexId> ids;
    std::vector<Weight> weights;
    ids.reserve(g.size() - 1);
    weights.reserve(g.size() - 1);
    for (VertexIndex x = 0; x < g.size(); ++x) {
        if (x != v) {
            ids.push_back(g.id(x));
            weights.push_back(g.weight(x));
        }
    }

    std::vector<std::vector<VertexIndex>> out(ids.size());
    for (VertexIndex x = 0; x < g.size(); ++x) {
        if (x == v)
            continue;
        for (VertexIndex y : g.out_neighbors(x))
            if (y != v)
                out[shift(x)].push_back(shift(y));
    }

    std::vector<VertexIndex> preds;
    std::vector<VertexIndex> succs;
    for (VertexIndex p : g.in_neighbors(v))
        if (p != v)
            preds.push_back(shift(p));
    for (VertexIndex s : g.out_neighbors(v))
        if (s != v)
            succs.push_back(shift(s));

    // For undirected graphs preds == succs, so this builds the clique and the loops.
    for (VertexIndex p : preds)
        for (VertexIndex s : succs)
            out[p].push_back(s);

    return GameGraph::from_arcs(g.orientation(), std::move(ids), std::move(weights), std::move(out));
}

GameGraph remove_zero_vertex(const GameGraph& g, const VertexId& v)
{
    return remove_zero_vertex(g, g.require(v));
}

SccPartition strongly_connected_components(const GameGraph& g)
{
    if (!g.directed())
        throw PreconditionError("strongly connected components require a directed graph");

    // Iterative Tarjan. Components come out sinks first.
    const std::size_t n = g.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> order(n, unvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<VertexIndex> stack;
    std::vector<std::vector<VertexIndex>> reversed;
    std::size_t counter = 0;

    struct Frame
    {
        VertexIndex v;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (VertexIndex root = 0; root < n; ++root) {
        if (order[root] != unvisited)
            continue;
        call.push_back({root, 0});
        order[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            auto succ = g.out_neighbors(f.v);
            if (f.next < succ.size()) {
                VertexIndex x = succ[f.next++];
                if (order[x] == unvisited) {
                    order[x] = low[x] = counter++;
                    stack.push_back(x);
                    on_stack[x] = true;
                    call.push_back({x, 0});
                } else if (on_stack[x]) {
                    low[f.v] = std::min(low[f.v], order[x]);
                }
                continue;
            }
            VertexIndex v = f.v;
            call.pop_back();
            if (!call.empty())
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == order[v]) {
                std::vector<VertexIndex> component;
                VertexIndex x;
                do {
                    x = stack.back();
                    stack.pop_back();
                    on_stack[x] = false;
                    component.push_back(x);
                } while (x != v);
                std::sort(component.begin(), component.end());
                reversed.push_back(std::move(component));
            }
        }
    }

    SccPartition p;
    p.components.assign(std::make_move_iterator(reversed.rbegin()), std::make_move_iterator(reversed.rend()));
    p.component_of.assign(n, 0);
    for (std::size_t c = 0; c < p.components.size(); ++c)
        for (VertexIndex v : p.components[c])
            p.component_of[v] = c;
    p.successors.assign(p.components.size(), {});
    for (VertexIndex v = 0; v < n; ++v)
        for (VertexIndex x : g.out_neighbors(v))
            if (p.component_of[v] != p.component_of[x])
                p.successors[p.component_of[v]].push_back(p.component_of[x]);
    for (auto& list : p.successors)
        sort_unique(list);
    return p;
}

std::vector<std::vector<VertexIndex>> sink_components(const SccPartition& p)
{
    std::vector<std::vector<VertexIndex>> sinks;
    for (std::size_t c = 0; c < p.components.size(); ++c)
        if (p.successors[c].empty())
            sinks.push_back(p.components[c]);
    return sinks;
}

std::vector<VertexIndex> connected_component_of(const GameGraph& g, VertexIndex v)
{
    if (v >= g.size())
        throw UnknownVertex("#" + std::to_string(v));
    std::vector<bool> seen = reachable_from(g, v, true);
    if (g.directed()) {
        // Weak connectivity for digraphs.
        std::vector<VertexIndex> stack{v};
        std::fill(seen.begin(), seen.end(), false);
        seen[v] = true;
        while (!stack.empty()) {
            VertexIndex x = stack.back();
            stack.pop_back();
            for (auto list : {g.out_neighbors(x), g.in_neighbors(x)})
                for (VertexIndex y : list)
                    if (!seen[y]) {
                        seen[y] = true;
                        stack.push_back(y);
                    }
        }
    }
    std::vector<VertexIndex> component;
    for (VertexIndex x = 0; x < g.size(); ++x)
        if (seen[x])
            component.push_back(x);
    return component;
}

std::string PlayabilityReport::describe() const
{
    if (ok)
        return "ok";
    std::ostringstream out;
    out << "no path from '" << unreachable->first << "' to '" << unreachable->second << "'";
    return out.str();
}

PlayabilityReport validate_playable(const GameGraph& g)
{
    PlayabilityReport report;
    if (g.empty())
        return report;
    auto forward = reachable_from(g, 0, true);
    for (VertexIndex v = 0; v < g.size(); ++v) {
        if (!forward[v]) {
            report.ok = false;
            report.unreachable = {g.id(0), g.id(v)};
            return report;
        }
    }
    if (g.directed()) {
        auto backward = reachable_from(g, 0, false);
        for (VertexIndex v = 0; v < g.size(); ++v) {
            if (!backward[v]) {
                report.ok = false;
                report.unreachable = {g.id(v), g.id(0)};
                return report;
            }
        }
    }
    return report;
}

std::vector<VertexId> ids_of(const GameGraph& g, std::span<const VertexIndex> vertices)
{
    std::vector<VertexId> result;
    result.reserve(vertices.size());
    for (VertexIndex v : vertices)
        result.push_back(g.id(v));
    return result;
}

} // namespace vnim
