#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "support.hpp"
#include "vnim/check.hpp"
#include "vnim/errors.hpp"

using namespace vnim;

namespace {

bool same_report(const CheckReport& a, const CheckReport& b)
{
    if (a.tested != b.tested || a.routed != b.routed || a.unroutable != b.unroutable ||
        a.witnesses_checked != b.witnesses_checked || a.fallback_activations != b.fallback_activations ||
        a.fast_path_checked != b.fast_path_checked || a.mismatches.size() != b.mismatches.size())
        return false;
    for (std::size_t i = 0; i < a.mismatches.size(); ++i)
        if (a.mismatches[i].key != b.mismatches[i].key || a.mismatches[i].detail != b.mismatches[i].detail)
            return false;
    return true;
}

} // namespace

TEST_CASE("serial and parallel checkers produce the same report")
{
    Envelope env;
    env.max_vertices = 3;
    env.max_weight = 3;
    auto instances = enumerate_instances(env);
    CheckOptions options;
    options.verify_witness = true;
    options.compare_fast_path = true;

    Oracle o1, o2;
    auto serial = check_instances_serial(instances, options, o1);
    auto parallel = check_instances_parallel(instances, options, o2);
    CHECK(serial.tested == instances.size());
    CHECK(serial.clean());
    CHECK(serial.fast_path_checked > 0);
    CHECK(same_report(serial, parallel));
}

TEST_CASE("write_reproductions")
{
    std::vector<Position> instances{
        vnim::test::undirected("v a 2\nv b 3\ne a b", "b"),
        vnim::test::undirected("v a 2\ne a a", "a", "vertexnim misere"),
    };
    CheckReport report;
    for (std::size_t i = 0; i < instances.size(); ++i)
        report.mismatches.push_back({state_key(instances[i]), serialize_instance(instances[i]), "detail"});
    auto dir = std::filesystem::temp_directory_path() / "vnim-repro-test";
    std::filesystem::remove_all(dir);
    auto paths = write_reproductions(report, dir.string());
    REQUIRE(paths.size() == 2);
    for (std::size_t i = 0; i < paths.size(); ++i)
        CHECK(load_instance(paths[i]) == instances[i]);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run_check")
{
    Envelope env;
    env.orientation = Orientation::directed;
    env.loops = LoopPolicy::all_loops;
    env.max_vertices = 3;
    env.max_weight = 2;
    auto report = run_check(env, CheckOptions{});
    CHECK(report.tested > 0);
    CHECK(report.routed == report.tested);
    CHECK(report.clean());

    auto sampled_a = run_check(env, CheckOptions{}, Sampling{40, 3});
    auto sampled_b = run_check(env, CheckOptions{}, Sampling{40, 3}, false);
    CHECK(sampled_a.tested == 40);
    CHECK(same_report(sampled_a, sampled_b));

    env.max_vertices = 8;
    env.max_weight = 3;
    CHECK_THROWS_AS(run_check(env, CheckOptions{}), BudgetExceeded);
}

TEST_CASE("unroutable instances are counted, not compared")
{
    Envelope env;
    env.orientation = Orientation::directed;
    env.loops = LoopPolicy::no_loops;
    env.max_vertices = 3;
    env.max_weight = 1;
    auto report = run_check(env, CheckOptions{});
    CHECK(report.unroutable > 0);
    CHECK(report.routed + report.unroutable == report.tested);
}

TEST_CASE("explore_circuits")
{
    std::ostringstream out;
    explore_circuits(ExploreRange{3, 3, 2, 1}, out);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "n,weights,start,outcome,formula");
    std::vector<std::string> rows;
    for (std::string row; std::getline(lines, row);)
        rows.push_back(row);
    // every row has a weight 1, so no formula column applies
    CHECK_FALSE(rows.empty());
    for (const auto& row : rows) {
        CHECK(row.rfind("3,", 0) == 0);
        CHECK(row.back() == '-');
    }

    const auto with_122 = std::count_if(rows.begin(), rows.end(),
                                        [](const std::string& r) { return r.rfind("3,1;2;2,", 0) == 0; });
    CHECK(with_122 == 3);

    std::ostringstream empty;
    explore_circuits(ExploreRange{5, 4, 2, 1}, empty);
    CHECK(empty.str() == "n,weights,start,outcome,formula\n");
}
