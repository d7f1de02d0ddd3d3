#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = vnim::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& text)
{
    auto path = fs::temp_directory_path() / ("vnim-cli-" + name);
    std::ofstream(path) << text;
    return path.string();
}

const char* path_file = "game vertexnim normal\ngraph undirected\nv a 2\nv b 3\nv c 2\ne a b\ne b c\nstart b\n";

} // namespace

TEST_CASE("solve")
{
    const auto file = write_file("path.vnim", path_file);
    auto r = run({"solve", file, "--witness"});
    CHECK(r.code == 0);
    CHECK(r.out == "N\nmethod: undirected-general\nwitness: reduce b to 2, go a\n");

    auto oracle = run({"solve", file, "--method", "oracle"});
    CHECK(oracle.code == 0);
    CHECK(oracle.out == "N\nmethod: oracle-fallback\n");

    const auto open = write_file("open.vnim", "game vertexnim normal\ngraph directed\nv a 90\nv b 90\nv c 90\n"
                                              "e a b\ne b a\ne b c\ne c a\nstart a\n");
    auto o = run({"solve", open});
    CHECK(o.code == 3);
    CHECK(o.out.rfind("open-problem", 0) == 0);

    auto theorem = run({"solve", open, "--method", "theorem"});
    CHECK(theorem.code == 1);

    const auto broken = write_file("broken.vnim", "game vertexnim normal\ngraph undirected\nv a 0\nstart a\n");
    auto b = run({"solve", broken});
    CHECK(b.code == 1);
    CHECK(b.err.find("line 3") != std::string::npos);

    CHECK(run({"solve", "/nonexistent/file.vnim"}).code == 1);
}

TEST_CASE("adjacent-nim")
{
    CHECK(run({"adjacent-nim", "2", "2", "2"}).out == "N\n");
    CHECK(run({"adjacent-nim", "2", "3", "4", "5"}).out == "P\n");
    CHECK(run({"adjacent-nim", "3", "2", "4", "5"}).out == "N\n");
    CHECK(run({"adjacent-nim", "1", "2", "2"}).code == 1);
    CHECK(run({"adjacent-nim", "2", "x", "2"}).code == 1);
}

TEST_CASE("check")
{
    auto ok = run({"check", "--orientation", "U", "--max-vertices", "3", "--max-weight", "2", "--exhaustive",
                   "--witness"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("mismatches 0") != std::string::npos);
    CHECK(ok.out.find("fallback activations 0") != std::string::npos);

    auto sampled = run({"check", "--orientation", "D", "--loops", "all", "--max-vertices", "3", "--max-weight", "3",
                        "--samples", "200", "--seed", "5", "--serial"});
    CHECK(sampled.code == 0);
    CHECK(sampled.out.rfind("tested 200,", 0) == 0);

    auto budget = run({"check", "--max-vertices", "8", "--max-weight", "3", "--exhaustive"});
    CHECK(budget.code == 3);

    CHECK(run({"check", "--max-vertices", "3", "--max-weight", "2"}).code == 1);
    CHECK(run({"check", "--max-vertices", "3", "--max-weight", "2", "--exhaustive", "--samples", "3"}).code == 1);
    CHECK(run({"check", "--orientation", "X", "--max-vertices", "3", "--max-weight", "2", "--exhaustive"}).code ==
          1);
}

TEST_CASE("explore-circuits and dot")
{
    auto e = run({"explore-circuits", "--n-min", "3", "--n-max", "3", "--max-weight", "2", "--min-ones", "1"});
    CHECK(e.code == 0);
    CHECK(e.out.rfind("n,weights,start,outcome,formula\n", 0) == 0);

    CHECK(run({"explore-circuits", "--n-max", "8", "--max-weight", "4"}).code == 3);

    auto d = run({"dot", write_file("dot.vnim", path_file)});
    CHECK(d.code == 0);
    CHECK(d.out.rfind("graph vertexnim {", 0) == 0);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"solve"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}
