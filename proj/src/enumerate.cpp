#include <algorithm>
#include <random>

#include "vnim/errors.hpp"
#include "vnim/oracle.hpp"

namespace vnim {

namespace {

using Arc = std::pair<unsigned, unsigned>;

bool strongly_connected_mask(const std::vector<std::uint32_t>& out, bool directed)
{
    const unsigned n = static_cast<unsigned>(out.size());
    auto reach = [&](bool forward) {
        std::uint32_t seen = 1;
        std::uint32_t frontier = 1;
        while (frontier) {
            std::uint32_t next = 0;
            for (unsigned v = 0; v < n; ++v) {
                if (!(frontier & (1u << v)))
                    continue;
                if (forward) {
                    next |= out[v];
                } else {
                    for (unsigned p = 0; p < n; ++p)
                        if (out[p] & (1u << v))
                            next |= 1u << p;
                }
            }
            frontier = next & ~seen;
            seen |= next;
        }
        return seen;
    };
    const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1u;
    if (reach(true) != all)
        return false;
    return !directed || reach(false) == all;
}

VertexId letter_id(unsigned i)
{
    return VertexId(1, static_cast<char>('a' + i));
}

/// Candidate arc sets (without loops) for n vertices, filtered for connectivity.
std::vector<std::vector<Arc>> structures(const Envelope& env, unsigned n)
{
    const bool directed = env.orientation == Orientation::directed;
    std::vector<std::vector<Arc>> result;
    if (env.shape == ShapeFilter::circuits) {
        if (n < 3)
            return result;
        std::vector<Arc> cycle;
        for (unsigned i = 0; i < n; ++i)
            cycle.emplace_back(i, (i + 1) % n);
        result.push_back(std::move(cycle));
        return result;
    }

    std::vector<Arc> candidates;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (i != j && (directed || i < j))
                candidates.emplace_back(i, j);
    const std::uint64_t subsets = std::uint64_t{1} << candidates.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::vector<std::uint32_t> out(n, 0);
        std::vector<Arc> arcs;
        for (std::size_t b = 0; b < candidates.size(); ++b) {
            if (mask & (std::uint64_t{1} << b)) {
                auto [i, j] = candidates[b];
                out[i] |= 1u << j;
                if (!directed)
                    out[j] |= 1u << i;
                arcs.push_back(candidates[b]);
            }
        }
        if (strongly_connected_mask(out, directed))
            result.push_back(std::move(arcs));
    }
    return result;
}

std::vector<std::uint32_t> loop_sets(const Envelope& env, unsigned n)
{
    const std::uint32_t all = (1u << n) - 1u;
    switch (env.loops) {
    case LoopPolicy::all_loops:
        return {all};
    case LoopPolicy::no_loops:
        return {0};
    case LoopPolicy::all_subsets:
        break;
    }
    std::vector<std::uint32_t> sets;
    for (std::uint32_t m = 0; m <= all; ++m)
        sets.push_back(m);
    return sets;
}

void validate(const Envelope& env)
{
    if (env.max_vertices < env.min_vertices || env.max_vertices == 0)
        throw PreconditionError("empty envelope: vertex range is empty");
    if (env.max_weight < env.min_weight)
        throw PreconditionError("empty envelope: weight range is empty");
    if (env.max_vertices > Oracle::max_supported_vertices)
        throw PreconditionError("envelope exceeds 8 vertices");
    if (env.ruleset == Ruleset::stockman && env.convention == Convention::misere)
        throw UnsupportedCombination();
}

/// Visits every instance; stops early when visit returns false.
template <typename Visit>
void walk(const Envelope& env, Visit&& visit)
{
    validate(env);
    const Weight low = env.ruleset == Ruleset::vertexnim ? std::max<Weight>(env.min_weight, 1) : env.min_weight;
    if (env.max_weight < low)
        return;
    const bool circuit = env.shape == ShapeFilter::circuits;
    for (unsigned n = static_cast<unsigned>(std::max<std::size_t>(env.min_vertices, 1));
         n <= env.max_vertices; ++n) {
        std::vector<VertexId> ids;
        for (unsigned i = 0; i < n; ++i)
            ids.push_back(circuit ? "v" + std::to_string(i + 1) : letter_id(i));
        for (const auto& arcs : structures(env, n)) {
            for (std::uint32_t loops : loop_sets(env, n)) {
                std::vector<EdgeSpec> edges;
                for (auto [i, j] : arcs)
                    edges.emplace_back(ids[i], ids[j]);
                for (unsigned i = 0; i < n; ++i)
                    if (loops & (1u << i))
                        edges.emplace_back(ids[i], ids[i]);

                std::vector<VertexSpec> vertices;
                for (unsigned i = 0; i < n; ++i)
                    vertices.push_back({ids[i], static_cast<std::int64_t>(low)});
                // Odometer over weight vectors.
                while (true) {
                    bool positive = false;
                    for (const auto& v : vertices)
                        positive = positive || v.weight > 0;
                    if (positive) {
                        GameGraph g = build_graph(env.orientation, vertices, edges);
                        const unsigned starts = env.all_starts ? n : 1;
                        for (unsigned s = 0; s < starts; ++s)
                            if (!visit(make_position(g, ids[s], env.ruleset, env.convention)))
                                return;
                    }
                    unsigned i = 0;
                    while (i < n && static_cast<Weight>(vertices[i].weight) == env.max_weight) {
                        vertices[i].weight = static_cast<std::int64_t>(low);
                        ++i;
                    }
                    if (i == n)
                        break;
                    ++vertices[i].weight;
                }
            }
        }
    }
}

} // namespace

void for_each_instance(const Envelope& env, const std::function<void(const Position&)>& visit)
{
    walk(env, [&](Position&& pos) {
        visit(pos);
        return true;
    });
}

std::vector<Position> enumerate_instances(const Envelope& env)
{
    std::vector<Position> all;
    walk(env, [&](Position&& pos) {
        all.push_back(std::move(pos));
        return true;
    });
    return all;
}

std::vector<Position> sample_instances(const Envelope& env, std::size_t count, std::uint64_t seed)
{
    std::size_t total = 0;
    walk(env, [&](Position&&) {
        ++total;
        return true;
    });
    if (total == 0 || count == 0)
        return {};

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> picks(count);
    for (auto& p : picks)
        p = static_cast<std::size_t>(rng() % total);
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return picks[a] < picks[b]; });

    std::vector<Position> result(count);
    std::size_t index = 0;
    std::size_t cursor = 0;
    walk(env, [&](Position&& pos) {
        while (cursor < count && picks[order[cursor]] == index)
            result[order[cursor++]] = pos;
        ++index;
        return cursor < count;
    });
    return result;
}

} // namespace vnim
