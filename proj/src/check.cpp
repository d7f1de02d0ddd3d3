#include "vnim/check.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "vnim/errors.hpp"
#include "vnim/instance_io.hpp"

namespace vnim {

namespace {

struct InstanceResult
{
    bool routed = false;
    bool witness_checked = false;
    bool fallback = false;
    bool fast_path_checked = false;
    std::optional<std::string> problem;
};

std::string outcome_text(std::optional<Outcome> o)
{
    return o ? std::string(to_string(*o)) : std::string("none");
}

/// Oracle verdict on the position reached by m.
Outcome oracle_after(const Position& pos, const Move& m, Oracle& oracle)
{
    Position child = apply_move(pos, m);
    if (auto status = terminal_status(child); status != Terminal::nonterminal)
        return status == Terminal::previous_mover_wins ? Outcome::P : Outcome::N;
    return oracle.solve(child);
}

InstanceResult check_one(const Position& pos, const CheckOptions& options, Oracle& oracle)
{
    InstanceResult r;
    SolveOptions theorem_only{MethodPreference::theorem, options.budget, &oracle};
    SolveReport theorem;
    try {
        theorem = classify(pos, theorem_only);
    } catch (const OutOfScope&) {
        return r;
    }
    r.routed = true;

    const Outcome truth = oracle.solve(pos);
    std::ostringstream problem;
    if (theorem.outcome != truth)
        problem << "solve=" << outcome_text(theorem.outcome) << " (" << to_string(theorem.method)
                << ") oracle=" << to_string(truth) << "; ";

    if (options.compare_fast_path && pos.ruleset == Ruleset::vertexnim && pos.convention == Convention::normal &&
        !pos.graph.directed() && pos.graph.all_loops() && !is_terminal(pos)) {
        r.fast_path_checked = true;
        const Outcome fast = solve_undirected_all_loops(pos);
        const Outcome general = solve_undirected(pos);
        if (fast != general || fast != truth)
            problem << "fast-path=" << to_string(fast) << " general=" << to_string(general)
                    << " oracle=" << to_string(truth) << "; ";
    }

    if (options.verify_witness && !is_terminal(pos)) {
        SolveOptions automatic{MethodPreference::automatic, options.budget, &oracle};
        WitnessSearch w = find_winning_move(pos, automatic);
        r.witness_checked = true;
        r.fallback = w.fallback_used;
        if (w.fallback_used)
            problem << "witness needed the full-scan fallback; ";
        if (truth == Outcome::N) {
            if (!w.move)
                problem << "no witness for an N position; ";
            else if (oracle_after(pos, *w.move, oracle) != Outcome::P)
                problem << "witness '" << describe(*w.move, pos.current_id()) << "' leaves an N position; ";
        } else if (w.move) {
            problem << "witness returned for a P position; ";
        }
    }

    if (problem.tellp() > 0)
        r.problem = problem.str();
    return r;
}

InstanceResult guarded_check(const Position& pos, const CheckOptions& options, Oracle& oracle)
{
    try {
        return check_one(pos, options, oracle);
    } catch (const std::exception& e) {
        InstanceResult r;
        r.routed = true;
        r.problem = std::string("error: ") + e.what();
        return r;
    }
}

CheckReport merge(std::span<const Position> instances, const std::vector<InstanceResult>& results)
{
    CheckReport report;
    report.tested = instances.size();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const InstanceResult& r = results[i];
        (r.routed ? report.routed : report.unroutable) += 1;
        report.witnesses_checked += r.witness_checked;
        report.fallback_activations += r.fallback;
        report.fast_path_checked += r.fast_path_checked;
        if (r.problem)
            report.mismatches.push_back({state_key(instances[i]), serialize_instance(instances[i]), *r.problem});
    }
    std::sort(report.mismatches.begin(), report.mismatches.end(),
              [](const Mismatch& a, const Mismatch& b) { return a.key < b.key; });
    return report;
}

} // namespace

CheckReport check_instances_serial(std::span<const Position> instances, const CheckOptions& options, Oracle& oracle)
{
    std::vector<InstanceResult> results;
    results.reserve(instances.size());
    for (const Position& pos : instances)
        results.push_back(guarded_check(pos, options, oracle));
    return merge(instances, results);
}

CheckReport check_instances_parallel(std::span<const Position> instances, const CheckOptions& options,
                                     Oracle& oracle)
{
    std::vector<InstanceResult> results(instances.size());
    const auto n = static_cast<std::int64_t>(instances.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i)
        results[static_cast<std::size_t>(i)] = guarded_check(instances[static_cast<std::size_t>(i)], options, oracle);
    return merge(instances, results);
}

CheckReport run_check(const Envelope& env, const CheckOptions& options, std::optional<Sampling> sampling,
                      bool parallel)
{
    const Weight largest = static_cast<Weight>(env.max_vertices) * env.max_weight;
    if (env.max_vertices > options.budget.max_vertices || largest > options.budget.max_total_weight)
        throw BudgetExceeded("envelope reaches " + std::to_string(env.max_vertices) + " vertices and total weight " +
                             std::to_string(largest) + ", beyond the oracle budget");

    std::vector<Position> instances =
        sampling ? sample_instances(env, sampling->count, sampling->seed) : enumerate_instances(env);
    Oracle oracle(options.budget);
    return parallel ? check_instances_parallel(instances, options, oracle)
                    : check_instances_serial(instances, options, oracle);
}

std::vector<std::string> write_reproductions(const CheckReport& report, const std::string& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    for (std::size_t i = 0; i < report.mismatches.size(); ++i) {
        const Mismatch& m = report.mismatches[i];
        auto path = std::filesystem::path(dir) / ("mismatch-" + std::to_string(i + 1) + ".vnim");
        std::ofstream out(path);
        out << "# " << m.detail << "\n" << m.instance;
        paths.push_back(path.string());
    }
    return paths;
}

void explore_circuits(const ExploreRange& range, std::ostream& out)
{
    out << "n,weights,start,outcome,formula\n";
    if (range.n_min > range.n_max || range.max_weight < 1)
        return;
    if (range.n_max * range.max_weight > range.budget.max_total_weight || range.n_max > range.budget.max_vertices)
        throw BudgetExceeded("circuits up to " + std::to_string(range.n_max) + " vertices of weight " +
                             std::to_string(range.max_weight) + " exceed the oracle budget");

    Envelope env;
    env.orientation = Orientation::directed;
    env.shape = ShapeFilter::circuits;
    env.loops = LoopPolicy::no_loops;
    env.min_vertices = range.n_min;
    env.max_vertices = range.n_max;
    env.min_weight = 1;
    env.max_weight = range.max_weight;

    Oracle oracle(range.budget);
    for_each_instance(env, [&](const Position& pos) {
        const GameGraph& g = pos.graph;
        const auto ones = static_cast<std::size_t>(std::count(g.weights().begin(), g.weights().end(), Weight{1}));
        if (ones < range.min_ones)
            return;
        // Circuit ids are v1..vN, so rank order is circuit order for N <= 9.
        auto from_v1 = circuit_weights_from(g, g.require("v1"));
        std::ostringstream weights;
        for (std::size_t i = 0; i < from_v1->size(); ++i)
            weights << (i ? ";" : "") << (*from_v1)[i];
        std::string formula = "-";
        auto from_start = circuit_weights_from(g, *pos.current);
        if (ones == 0)
            formula = std::string(to_string(solve_adjacent_nim(*from_start)));
        out << g.size() << ',' << weights.str() << ',' << pos.current_id() << ',' << to_string(oracle.solve(pos))
            << ',' << formula << '\n';
    });
}

} // namespace vnim
