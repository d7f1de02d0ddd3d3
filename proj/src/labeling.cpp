#include <algorithm>
#include <random>

#include "vnim/errors.hpp"
#include "vnim/solver.hpp"

namespace vnim {

Labeling lo_labeling(const GameGraph& g, SinkChoice choice, std::uint64_t seed)
{
    if (!g.directed())
        throw PreconditionError("lo labeling needs a directed graph");
    if (g.empty())
        throw PreconditionError("lo labeling of an empty graph");

    std::mt19937_64 rng(seed);
    Labeling result;
    result.label.assign(g.size(), Outcome::P);
    std::vector<bool> alive(g.size(), true);
    std::size_t remaining = g.size();

    while (remaining > 0) {
        std::vector<VertexIndex> original;
        for (VertexIndex v = 0; v < g.size(); ++v)
            if (alive[v])
                original.push_back(v);
        GameGraph residual = induced_subgraph(g, alive);
        auto sinks = sink_components(strongly_connected_components(residual));

        std::size_t pick = 0;
        if (choice == SinkChoice::last)
            pick = sinks.size() - 1;
        else if (choice == SinkChoice::seeded)
            pick = static_cast<std::size_t>(rng() % sinks.size());

        Labeling::Step step;
        for (VertexIndex local : sinks[pick])
            step.s.push_back(original[local]);

        std::vector<bool> in_s(g.size(), false);
        for (VertexIndex v : step.s)
            in_s[v] = true;

        if (step.s.size() % 2 == 0) {
            for (VertexIndex v : step.s)
                result.label[v] = Outcome::N;
        } else {
            std::vector<bool> in_t(g.size(), false);
            for (VertexIndex v : step.s)
                for (VertexIndex p : g.in_neighbors(v))
                    if (alive[p] && !in_s[p] && !in_t[p]) {
                        in_t[p] = true;
                        step.t.push_back(p);
                    }
            std::sort(step.t.begin(), step.t.end());
            for (VertexIndex v : step.s)
                result.label[v] = Outcome::P;
            for (VertexIndex v : step.t)
                result.label[v] = Outcome::N;
        }
        for (auto part : {&step.s, &step.t})
            for (VertexIndex v : *part) {
                alive[v] = false;
                --remaining;
            }
        result.steps.push_back(std::move(step));
    }
    return result;
}

Labeling lu_labeling(const GameGraph& g)
{
    if (g.directed())
        throw PreconditionError("lu labeling needs an undirected graph");
    if (g.empty())
        throw PreconditionError("lu labeling of an empty graph");
    for (VertexIndex v = 0; v < g.size(); ++v)
        if (g.has_loop(v))
            throw PreconditionError("lu labeling is undefined on looped vertex '" + g.id(v) + "'");

    Labeling result;
    result.label.assign(g.size(), Outcome::P);
    std::vector<bool> alive(g.size(), true);
    std::vector<VertexIndex> remaining(g.size());
    for (VertexIndex v = 0; v < g.size(); ++v)
        remaining[v] = v;

    std::vector<bool> in_s(g.size(), false);
    while (!remaining.empty()) {
        Labeling::Step step;
        for (VertexIndex v : remaining) {
            bool minimum = true;
            for (VertexIndex x : g.out_neighbors(v))
                if (alive[x] && g.weight(x) < g.weight(v)) {
                    minimum = false;
                    break;
                }
            if (minimum) {
                step.s.push_back(v);
                in_s[v] = true;
            }
        }
        for (VertexIndex v : remaining) {
            if (in_s[v])
                continue;
            for (VertexIndex x : g.out_neighbors(v))
                if (alive[x] && in_s[x]) {
                    step.t.push_back(v);
                    break;
                }
        }
        for (VertexIndex v : step.s) {
            result.label[v] = Outcome::P;
            alive[v] = false;
        }
        for (VertexIndex v : step.t) {
            result.label[v] = Outcome::N;
            alive[v] = false;
        }
        std::erase_if(remaining, [&](VertexIndex v) { return !alive[v]; });
        result.steps.push_back(std::move(step));
    }
    return result;
}

} // namespace vnim
