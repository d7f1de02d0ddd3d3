#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vnim {

using VertexId = std::string;
using VertexIndex = std::size_t;
using Weight = std::uint64_t;

enum class Orientation { directed, undirected };

struct VertexSpec
{
    VertexId id;
    std::int64_t weight = 1;
};

using EdgeSpec = std::pair<VertexId, VertexId>;

/**
 * Vertex-weighted graph with optional loops and no parallel edges.
 *
 * Vertices are stored sorted by id, so a VertexIndex is the rank of the id.
 * Every adjacency list is sorted and duplicate free. For undirected graphs
 * out_neighbors() and in_neighbors() coincide. Values are immutable: every
 * transformation returns a new graph.
 */
class GameGraph
{
public:
    GameGraph() = default;

    Orientation orientation() const noexcept { return orientation_; }
    bool directed() const noexcept { return orientation_ == Orientation::directed; }

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }

    const VertexId& id(VertexIndex v) const { return ids_.at(v); }
    const std::vector<VertexId>& ids() const noexcept { return ids_; }
    std::optional<VertexIndex> index_of(const VertexId& id) const;
    VertexIndex require(const VertexId& id) const;

    Weight weight(VertexIndex v) const { return weights_.at(v); }
    const std::vector<Weight>& weights() const noexcept { return weights_; }
    Weight total_weight() const noexcept;

    std::span<const VertexIndex> out_neighbors(VertexIndex v) const { return out_.at(v); }
    std::span<const VertexIndex> in_neighbors(VertexIndex v) const
    {
        return directed() ? std::span<const VertexIndex>(in_.at(v)) : std::span<const VertexIndex>(out_.at(v));
    }

    bool has_arc(VertexIndex from, VertexIndex to) const;
    bool has_loop(VertexIndex v) const { return has_arc(v, v); }
    bool all_loops() const;

    /// Arcs for directed graphs; edges counted once (loops included) for undirected ones.
    std::size_t edge_count() const noexcept;

    /// Each arc once; undirected edges listed once with from <= to.
    std::vector<std::pair<VertexIndex, VertexIndex>> edges() const;

    GameGraph with_weight(VertexIndex v, Weight w) const;

    friend bool operator==(const GameGraph&, const GameGraph&) = default;

private:
    friend GameGraph build_graph(Orientation, const std::vector<VertexSpec>&, const std::vector<EdgeSpec>&);
    friend GameGraph induced_subgraph(const GameGraph&, const std::vector<bool>&);
    friend GameGraph remove_zero_vertex(const GameGraph&, VertexIndex);

    static GameGraph from_arcs(Orientation orientation, std::vector<VertexId> ids, std::vector<Weight> weights,
                               std::vector<std::vector<VertexIndex>> out);

    Orientation orientation_ = Orientation::undirected;
    std::vector<VertexId> ids_;
    std::vector<Weight> weights_;
    std::vector<std::vector<VertexIndex>> out_;
    std::vector<std::vector<VertexIndex>> in_;
};

/// Validates ids and endpoints, sorts vertices by id, collapses duplicate edges.
GameGraph build_graph(Orientation orientation, const std::vector<VertexSpec>& vertices,
                      const std::vector<EdgeSpec>& edges);

GameGraph induced_subgraph(const GameGraph& g, const std::vector<bool>& keep);

/**
 * Deletes v after its weight reached zero.
 *
 * Undirected: the other neighbors of v become a clique and each of them gets
 * a loop. Directed: every pair of arcs (p,v),(v,s) with p,s != v is replaced
 * by (p,s), which is a loop when p == s. A loop on v itself is ignored.
 */
GameGraph remove_zero_vertex(const GameGraph& g, VertexIndex v);
GameGraph remove_zero_vertex(const GameGraph& g, const VertexId& v);

struct SccPartition
{
    /// Components in topological order of the condensation; each sorted.
    std::vector<std::vector<VertexIndex>> components;
    std::vector<std::size_t> component_of;
    /// Condensation successors per component, sorted.
    std::vector<std::vector<std::size_t>> successors;
};

SccPartition strongly_connected_components(const GameGraph& g);

/// Components with no arc leaving them.
std::vector<std::vector<VertexIndex>> sink_components(const SccPartition& p);

std::vector<VertexIndex> connected_component_of(const GameGraph& g, VertexIndex v);

struct PlayabilityReport
{
    bool ok = true;
    /// When not ok: a pair (from, to) with no path from -> to.
    std::optional<std::pair<VertexId, VertexId>> unreachable;

    std::string describe() const;
};

/// Directed graphs must be strongly connected, undirected graphs connected.
PlayabilityReport validate_playable(const GameGraph& g);

std::vector<VertexId> ids_of(const GameGraph& g, std::span<const VertexIndex> vertices);

} // namespace vnim
