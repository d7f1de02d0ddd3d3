#include "cli.hpp"

#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "vnim/check.hpp"
#include "vnim/errors.hpp"
#include "vnim/http_service.hpp"
#include "vnim/instance_io.hpp"
#include "vnim/solver.hpp"

namespace vnim::cli {

namespace {

struct SolveArgs
{
    std::string file;
    std::string method = "auto";
    bool witness = false;
    Weight max_total_weight = OracleBudget{}.max_total_weight;
};

struct CheckArgs
{
    std::string orientation = "U";
    std::string ruleset = "vertexnim";
    std::string convention = "normal";
    std::string loops = "any";
    std::size_t max_vertices = 3;
    Weight max_weight = 2;
    std::optional<Weight> min_weight;
    bool exhaustive = false;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    bool circuits = false;
    bool first_start_only = false;
    bool witness = false;
    bool serial = false;
    Weight max_total_weight = OracleBudget{}.max_total_weight;
    std::string repro_dir = "check-mismatches";
};

int cmd_solve(const SolveArgs& a, std::ostream& out)
{
    static const std::map<std::string, MethodPreference> methods = {
        {"auto", MethodPreference::automatic},
        {"theorem", MethodPreference::theorem},
        {"oracle", MethodPreference::oracle},
    };
    Position pos = load_instance(a.file);
    SolveOptions options;
    options.preference = methods.at(a.method);
    options.budget.max_total_weight = a.max_total_weight;
    SolveReport report = a.witness ? solve(pos, options) : classify(pos, options);
    if (!report.outcome) {
        out << "open-problem\nmethod: " << to_string(report.method) << "\n";
        return exit_budget;
    }
    out << to_string(*report.outcome) << "\nmethod: " << to_string(report.method) << "\n";
    if (a.witness && report.witness)
        out << "witness: " << describe(*report.witness, pos.current_id()) << "\n";
    return exit_ok;
}

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err)
{
    Envelope env;
    auto orientation = parse_orientation(a.orientation);
    auto ruleset = parse_ruleset(a.ruleset);
    auto convention = parse_convention(a.convention);
    if (!orientation || !ruleset || !convention) {
        err << "check: bad orientation, ruleset or convention\n";
        return exit_usage;
    }
    env.orientation = *orientation;
    env.ruleset = *ruleset;
    env.convention = *convention;
    env.max_vertices = a.max_vertices;
    env.max_weight = a.max_weight;
    env.min_weight = a.min_weight.value_or(*ruleset == Ruleset::stockman ? 0 : 1);
    env.loops = a.loops == "all" ? LoopPolicy::all_loops : a.loops == "none" ? LoopPolicy::no_loops : LoopPolicy::all_subsets;
    env.shape = a.circuits ? ShapeFilter::circuits : ShapeFilter::any;
    env.all_starts = !a.first_start_only;
    if (a.exhaustive == (a.samples > 0)) {
        err << "check: pass exactly one of --exhaustive or --samples\n";
        return exit_usage;
    }

    CheckOptions options;
    options.verify_witness = a.witness;
    options.budget.max_total_weight = a.max_total_weight;
    std::optional<Sampling> sampling;
    if (a.samples > 0)
        sampling = Sampling{a.samples, a.seed};

    CheckReport report = run_check(env, options, sampling, !a.serial);
    out << "tested " << report.tested << ", routed " << report.routed << ", unroutable " << report.unroutable
        << ", mismatches " << report.mismatches.size() << "\n";
    if (a.witness)
        out << "witnesses " << report.witnesses_checked << ", fallback activations " << report.fallback_activations
            << "\n";
    if (report.clean())
        return exit_ok;
    auto paths = write_reproductions(report, a.repro_dir);
    for (std::size_t i = 0; i < report.mismatches.size(); ++i)
        out << "mismatch " << report.mismatches[i].key << ": " << report.mismatches[i].detail << " -> " << paths[i]
            << "\n";
    return exit_mismatch;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Outcome solver for VertexNim and Vertex NimG"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Print P or N for an instance file");
    solve_cmd->add_option("file", solve_args.file, "Instance file")->required();
    solve_cmd->add_option("--method", solve_args.method, "auto, theorem or oracle")
        ->check(CLI::IsMember({"auto", "theorem", "oracle"}));
    solve_cmd->add_flag("--witness", solve_args.witness, "Also print a winning move");
    solve_cmd->add_option("--max-total-weight", solve_args.max_total_weight, "Oracle budget on total weight");

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Compare the closed forms with the oracle over an envelope");
    check_cmd->add_option("--orientation", check_args.orientation, "D or U")
        ->check(CLI::IsMember({"D", "U", "directed", "undirected"}));
    check_cmd->add_option("--ruleset", check_args.ruleset)->check(CLI::IsMember({"vertexnim", "stockman"}));
    check_cmd->add_option("--convention", check_args.convention)->check(CLI::IsMember({"normal", "misere"}));
    check_cmd->add_option("--max-vertices", check_args.max_vertices)->required();
    check_cmd->add_option("--max-weight", check_args.max_weight)->required();
    check_cmd->add_option("--min-weight", check_args.min_weight);
    check_cmd->add_option("--loops", check_args.loops, "any, all or none")
        ->check(CLI::IsMember({"any", "all", "none"}));
    check_cmd->add_flag("--circuits", check_args.circuits, "Only directed circuits v1 -> v2 -> ... -> v1");
    check_cmd->add_flag("--first-start-only", check_args.first_start_only);
    check_cmd->add_flag("--exhaustive", check_args.exhaustive);
    check_cmd->add_option("--samples", check_args.samples);
    check_cmd->add_option("--seed", check_args.seed);
    check_cmd->add_flag("--witness", check_args.witness, "Also verify winning moves");
    check_cmd->add_flag("--serial", check_args.serial, "Use the single-threaded reference checker");
    check_cmd->add_option("--max-total-weight", check_args.max_total_weight);
    check_cmd->add_option("--repro-dir", check_args.repro_dir);

    std::vector<std::string> heaps;
    auto* adj_cmd = app.add_subcommand("adjacent-nim", "Outcome of Adjacent Nim from the first heap");
    adj_cmd->add_option("weights", heaps)->required();

    ExploreRange explore;
    auto* explore_cmd = app.add_subcommand("explore-circuits", "Oracle outcomes on circuits with weight-1 vertices");
    explore_cmd->add_option("--n-min", explore.n_min);
    explore_cmd->add_option("--n-max", explore.n_max);
    explore_cmd->add_option("--max-weight", explore.max_weight);
    explore_cmd->add_option("--min-ones", explore.min_ones);
    explore_cmd->add_option("--max-total-weight", explore.budget.max_total_weight);

    std::string dot_file;
    auto* dot_cmd = app.add_subcommand("dot", "Export an instance file to Graphviz");
    dot_cmd->add_option("file", dot_file)->required();

    ServeOptions serve_options;
    auto* serve_cmd = app.add_subcommand("serve", "Run the game service");
    serve_cmd->add_option("--port", serve_options.port)->required();
    serve_cmd->add_option("--host", serve_options.host);
    serve_cmd->add_option("--static", serve_options.static_dir);
    serve_cmd->add_option("--state-file", serve_options.state_file);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*solve_cmd)
            return cmd_solve(solve_args, out);
        if (*check_cmd)
            return cmd_check(check_args, out, err);
        if (*adj_cmd) {
            std::vector<Weight> weights;
            for (const auto& h : heaps) {
                std::size_t used = 0;
                long long value = std::stoll(h, &used);
                if (used != h.size() || value < 0)
                    throw PreconditionError("heap sizes must be non-negative integers, got '" + h + "'");
                weights.push_back(static_cast<Weight>(value));
            }
            out << to_string(solve_adjacent_nim(weights)) << "\n";
            return exit_ok;
        }
        if (*explore_cmd) {
            explore_circuits(explore, out);
            return exit_ok;
        }
        if (*dot_cmd) {
            out << to_dot(load_instance(dot_file));
            return exit_ok;
        }
        if (*serve_cmd)
            return serve(serve_options);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return exit_budget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace vnim::cli
