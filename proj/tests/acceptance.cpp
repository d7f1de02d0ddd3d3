// One line per acceptance criterion: "PASS name: detail" or "FAIL name: detail".
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "vnim/check.hpp"
#include "vnim/errors.hpp"
#include "vnim/instance_io.hpp"
#include "vnim/solver.hpp"

using namespace vnim;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail)
{
    failures += !pass;
    std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

void note(const std::string& text)
{
    std::cout << "  note: " << text << std::endl;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed(double x, int digits = 2)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

struct Totals
{
    std::size_t witnesses = 0;
    std::size_t fallbacks = 0;
    std::size_t witness_problems = 0;
    std::size_t envelopes = 0;
} witness_totals;

/// Outcome mismatches, leaving witness problems to the witness criterion.
std::size_t outcome_mismatches(const CheckReport& r, std::vector<std::string>* examples = nullptr)
{
    std::size_t count = 0;
    for (const auto& m : r.mismatches) {
        const bool outcome = m.detail.find("solve=") != std::string::npos ||
                             m.detail.find("fast-path=") != std::string::npos ||
                             m.detail.find("error:") != std::string::npos;
        if (outcome) {
            ++count;
            if (examples && examples->size() < 3)
                examples->push_back(m.key + " " + m.detail);
        }
    }
    return count;
}

CheckReport checked(const Envelope& env, CheckOptions options = {})
{
    options.verify_witness = true;
    CheckReport r = run_check(env, options);
    witness_totals.witnesses += r.witnesses_checked;
    witness_totals.fallbacks += r.fallback_activations;
    witness_totals.envelopes += 1;
    for (const auto& m : r.mismatches)
        if (m.detail.find("witness") != std::string::npos) {
            ++witness_totals.witness_problems;
            if (witness_totals.witness_problems <= 3)
                note("witness problem: " + m.key + " " + m.detail);
        }
    return r;
}

std::string summary(const CheckReport& r, std::size_t mismatches)
{
    std::ostringstream out;
    out << r.tested << " instances, " << r.routed << " routed, " << mismatches << " mismatches";
    return out.str();
}

bool oracle_equivalence(const std::string& name, const Envelope& env, CheckOptions options = {},
                        std::string extra = "")
{
    const auto t0 = Clock::now();
    CheckReport r = checked(env, options);
    std::vector<std::string> examples;
    const std::size_t bad = outcome_mismatches(r, &examples);
    const bool pass = bad == 0 && r.tested > 0 && r.unroutable == 0;
    report(name, pass, summary(r, bad) + extra + ", " + fixed(seconds_since(t0)) + " s");
    for (const auto& e : examples)
        note(e);
    return pass;
}

Envelope undirected_envelope()
{
    Envelope env;
    env.orientation = Orientation::undirected;
    env.max_vertices = 4;
    env.min_weight = 1;
    env.max_weight = 3;
    return env;
}

Envelope directed_loops_envelope()
{
    Envelope env = undirected_envelope();
    env.orientation = Orientation::directed;
    env.loops = LoopPolicy::all_loops;
    return env;
}

void undirected_general()
{
    const auto t0 = Clock::now();
    CheckReport r = checked(undirected_envelope());
    const double elapsed = seconds_since(t0);
    std::vector<std::string> examples;
    const std::size_t bad = outcome_mismatches(r, &examples);
    report("undirected vertexnim", bad == 0 && r.unroutable == 0 && elapsed < 600,
           summary(r, bad) + ", " + fixed(elapsed) + " s (limit 600 s)");
    for (const auto& e : examples)
        note(e);
}

void undirected_fast_path()
{
    Envelope env = undirected_envelope();
    env.loops = LoopPolicy::all_loops;
    CheckOptions options;
    options.compare_fast_path = true;
    const auto t0 = Clock::now();
    CheckReport r = checked(env, options);
    std::vector<std::string> examples;
    const std::size_t bad = outcome_mismatches(r, &examples);
    report("undirected all-loops fast path", bad == 0 && r.fast_path_checked == r.tested && r.tested > 0,
           summary(r, bad) + ", fast path compared on " + std::to_string(r.fast_path_checked) + ", " +
               fixed(seconds_since(t0)) + " s");
    for (const auto& e : examples)
        note(e);
}

void adjacent_nim()
{
    Envelope env;
    env.orientation = Orientation::directed;
    env.shape = ShapeFilter::circuits;
    env.loops = LoopPolicy::no_loops;
    env.min_vertices = 3;
    env.max_vertices = 5;
    env.min_weight = 2;
    env.max_weight = 4;
    env.all_starts = false;
    CheckOptions options;
    options.budget.max_total_weight = 20;

    const auto t0 = Clock::now();
    CheckReport r = checked(env, options);
    std::vector<std::string> examples;
    const std::size_t bad = outcome_mismatches(r, &examples);

    struct Worked
    {
        std::vector<Weight> w;
        Outcome expected;
    };
    const std::vector<Worked> worked{{{2, 2, 2}, Outcome::N}, {{2, 3, 4, 5}, Outcome::P}, {{3, 2, 4, 5}, Outcome::N}};
    std::size_t worked_ok = 0;
    for (const auto& k : worked)
        worked_ok += solve_adjacent_nim(k.w) == k.expected;

    bool routed_by_formula = true;
    for (const auto& pos : enumerate_instances(env))
        routed_by_formula = routed_by_formula && classify(pos).method == Method::circuit_formula;

    report("adjacent nim on circuits", bad == 0 && worked_ok == worked.size() && routed_by_formula && r.tested > 0,
           summary(r, bad) + ", worked values " + std::to_string(worked_ok) + "/3, " +
               fixed(seconds_since(t0)) + " s");
    for (const auto& e : examples)
        note(e);
}

/// The four-case dispatch for Stockman play taken literally: any weight-1 neighbor of a heavy u wins.
Outcome literal_stockman(const Position& pos)
{
    const GameGraph& g = pos.graph;
    const VertexIndex u = *pos.current;
    const auto zero_nb = [&](VertexIndex v) {
        for (auto x : g.out_neighbors(v))
            if (x != v && g.weight(x) == 0)
                return true;
        return false;
    };
    if (g.weight(u) == 0)
        return Outcome::P;
    if (zero_nb(u))
        return Outcome::N;
    if (g.weight(u) == 1 && !g.has_loop(u))
        return Outcome::P;
    if (g.has_loop(u))
        return Outcome::N;
    for (auto x : g.out_neighbors(u))
        if (g.weight(x) == 1)
            return Outcome::N;
    std::vector<bool> core(g.size());
    for (VertexIndex v = 0; v < g.size(); ++v) {
        auto nb = g.out_neighbors(v);
        core[v] = g.weight(v) >= 2 && !g.has_loop(v) &&
                  std::all_of(nb.begin(), nb.end(), [&](VertexIndex x) { return g.weight(x) >= 2; });
    }
    GameGraph sub = induced_subgraph(g, core);
    return lu_labeling(sub)[sub.require(g.id(u))];
}

void stockman_undirected()
{
    Envelope env = undirected_envelope();
    env.ruleset = Ruleset::stockman;
    env.min_weight = 0;
    oracle_equivalence("stockman undirected", env);

    // How far the unconditional weight-1 rule is from the truth on the same envelope.
    Oracle oracle;
    std::size_t tested = 0, wrong = 0;
    std::string first;
    for_each_instance(env, [&](const Position& pos) {
        ++tested;
        if (literal_stockman(pos) != oracle.solve(pos)) {
            if (!wrong++)
                first = state_key(pos);
        }
    });
    note("unconditional weight-1 neighbor rule disagrees with the oracle on " + std::to_string(wrong) + " of " +
         std::to_string(tested) + " instances, e.g. " + first);
}

void stockman_circuits()
{
    Envelope env;
    env.orientation = Orientation::directed;
    env.ruleset = Ruleset::stockman;
    env.shape = ShapeFilter::circuits;
    env.loops = LoopPolicy::no_loops;
    env.min_vertices = 3;
    env.max_vertices = 4;
    env.min_weight = 1;
    env.max_weight = 3;
    oracle_equivalence("stockman circuits", env);
}

void misere()
{
    const auto t0 = Clock::now();
    std::size_t tested = 0, bad = 0;
    std::vector<std::string> examples;
    for (Envelope env : {undirected_envelope(), directed_loops_envelope()}) {
        env.convention = Convention::misere;
        CheckReport r = checked(env);
        tested += r.tested;
        bad += outcome_mismatches(r, &examples);
        bad += r.unroutable;
    }

    // Coherence between the two conventions, on the oracle's outcomes.
    Oracle oracle;
    std::size_t heavy = 0, heavy_bad = 0, ones = 0, ones_bad = 0;
    std::vector<std::string> incoherent;
    for (Envelope env : {undirected_envelope(), directed_loops_envelope()}) {
        for_each_instance(env, [&](const Position& normal) {
            Position mis = normal;
            mis.convention = Convention::misere;
            const Outcome a = oracle.solve(normal);
            const Outcome b = oracle.solve(mis);
            const auto& w = normal.graph.weights();
            if (std::any_of(w.begin(), w.end(), [](Weight x) { return x >= 2; })) {
                ++heavy;
                if (a != b) {
                    ++heavy_bad;
                    incoherent.push_back(state_key(normal));
                }
            } else {
                ++ones;
                ones_bad += b != flip(a);
            }
        });
    }

    std::ostringstream detail;
    detail << "solve=oracle on " << tested - bad << "/" << tested << "; misere=normal on " << heavy - heavy_bad << "/"
           << heavy << " instances with a weight >= 2; parity flip on " << ones - ones_bad << "/" << ones
           << " all-ones instances, " << fixed(seconds_since(t0)) << " s";
    report("misere", bad == 0 && heavy_bad == 0 && ones_bad == 0, detail.str());
    for (const auto& e : examples)
        note(e);
    for (std::size_t i = 0; i < std::min<std::size_t>(incoherent.size(), 5); ++i)
        note("misere differs from normal: " + incoherent[i]);
}

void witness_soundness()
{
    std::ostringstream detail;
    detail << witness_totals.witnesses << " witnesses over " << witness_totals.envelopes << " envelopes, "
           << witness_totals.witness_problems << " unsound, " << witness_totals.fallbacks << " fallback activations";
    report("witness soundness", witness_totals.witness_problems == 0 && witness_totals.fallbacks == 0 &&
                                    witness_totals.witnesses > 0,
           detail.str());
}

void lo_determinism()
{
    std::mt19937_64 rng(2024);
    std::size_t graphs = 0, differing = 0;
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
        const double p = std::uniform_real_distribution<double>(0.5, 3.0)(rng) / n;
        std::vector<VertexSpec> vs;
        for (std::size_t i = 0; i < n; ++i)
            vs.push_back({"v" + std::to_string(i), 1});
        std::vector<EdgeSpec> es;
        std::bernoulli_distribution arc(std::min(p, 1.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && arc(rng))
                    es.emplace_back(vs[i].id, vs[j].id);
        const GameGraph g = build_graph(Orientation::directed, vs, es);
        const Labeling reference = lo_labeling(g);
        ++graphs;

        bool same = true;
        for (int shuffle = 0; shuffle < 10; ++shuffle) {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < n; ++i)
                names.push_back("w" + std::to_string(i));
            std::shuffle(names.begin(), names.end(), rng);
            std::map<VertexId, VertexId> rename;
            for (VertexIndex v = 0; v < n; ++v)
                rename[g.id(v)] = names[v];
            std::vector<VertexSpec> vs2;
            for (const auto& v : vs)
                vs2.push_back({rename[v.id], v.weight});
            std::vector<EdgeSpec> es2;
            for (const auto& [a, b] : es)
                es2.emplace_back(rename[a], rename[b]);
            std::shuffle(vs2.begin(), vs2.end(), rng);
            std::shuffle(es2.begin(), es2.end(), rng);
            const GameGraph h = build_graph(Orientation::directed, vs2, es2);
            const Labeling l = lo_labeling(h, SinkChoice::seeded, rng());
            for (VertexIndex v = 0; v < n; ++v)
                same = same && l[h.require(rename[g.id(v)])] == reference[v];
        }
        differing += !same;
    }
    report("lo determinism", differing == 0,
           std::to_string(graphs) + " digraphs x 10 shuffles, " + std::to_string(differing) + " differ");
}

GameGraph random_connected(std::mt19937_64& rng, std::size_t n, std::size_t m)
{
    std::vector<VertexSpec> vs;
    std::uniform_int_distribution<std::int64_t> wd(1, 1'000'000'000);
    for (std::size_t i = 0; i < n; ++i)
        vs.push_back({"v" + std::to_string(i), wd(rng)});
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 1; i < n; ++i)
        edges.emplace(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), i);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (edges.size() < m) {
        auto a = pick(rng), b = pick(rng);
        if (a != b)
            edges.emplace(std::min(a, b), std::max(a, b));
    }
    std::vector<EdgeSpec> es;
    for (auto [a, b] : edges)
        es.emplace_back(vs[a].id, vs[b].id);
    return build_graph(Orientation::undirected, vs, es);
}

/// Median wall time of solve_undirected from a few start vertices.
double time_solve(const GameGraph& g, std::mt19937_64& rng)
{
    std::vector<double> times;
    for (int i = 0; i < 5; ++i) {
        const VertexIndex u = std::uniform_int_distribution<VertexIndex>(0, g.size() - 1)(rng);
        Position pos = make_position(g, g.id(u), Ruleset::vertexnim);
        const auto t0 = Clock::now();
        volatile Outcome o = solve_undirected(pos);
        (void)o;
        times.push_back(seconds_since(t0));
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

void complexity()
{
    std::mt19937_64 rng(99);
    const GameGraph big = random_connected(rng, 2000, 8000);
    const double big_time = time_solve(big, rng);

    const std::vector<std::size_t> sizes{500, 1000, 2000, 4000};
    std::vector<double> ratio;
    std::ostringstream detail;
    detail << "|V|=2000 |E|=" << big.edge_count() << " in " << fixed(big_time, 3) << " s (limit 5 s); t/(|V||E|) =";
    for (std::size_t n : sizes) {
        const GameGraph g = random_connected(rng, n, 4 * n);
        const double t = time_solve(g, rng);
        ratio.push_back(t / (double(n) * double(g.edge_count())));
        detail << " " << std::scientific << ratio.back() << std::defaultfloat;
    }
    const bool growth_ok = std::all_of(ratio.begin(), ratio.end(), [&](double r) { return r <= 2 * ratio.front(); });
    detail << (growth_ok ? ", within 2x of the smallest" : ", exceeds 2x of the smallest");
    report("complexity", big_time < 5.0 && growth_ok, detail.str());
}

} // namespace

int main()
{
    undirected_general();
    undirected_fast_path();
    oracle_equivalence("directed all-loops", directed_loops_envelope());
    adjacent_nim();
    stockman_undirected();
    stockman_circuits();
    misere();
    witness_soundness();
    lo_determinism();
    complexity();
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
