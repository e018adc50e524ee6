#include <catch_amalgamated.hpp>

#include <htasp/cli.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

const std::string kGolden = HTASP_GOLDEN_DIR;

std::string path(const std::string& name) { return kGolden + "/" + name; }

std::string slurp(const std::string& file) {
    std::ifstream      in(file, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Result {
    int         code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = htasp::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("golden outputs") {
    struct Case {
        std::vector<std::string> args;
        std::string              golden;
        int                      code;
    };
    const std::vector<Case> cases{
        {{"solve", path("ab.lp"), "--semantics", "casp", "--engine", "search", "--domain", "0..1"}, "solve_ab.out", 10},
        {{"solve", path("ab.lp")}, "solve_ab.out", 10},
        {{"solve", path("unsat.lp")}, "solve_unsat.out", 20},
        {{"solve", path("unsat.lp"), "--engine", "search"}, "solve_unsat.out", 20},
        {{"solve", path("assign.lp"), "--semantics", "founded", "--domain", "0..1"}, "solve_assign.out", 10},
        {{"solve", path("sum.lp"), "--domain", "0..1"}, "solve_sum.out", 10},
        {{"solve", path("sum.lp"), "--domain", "0..1", "--engine", "search"}, "solve_sum.out", 10},
        {{"solve", path("diff.lp"), "--domain", "0..1"}, "solve_diff.out", 10},
        {{"solve", path("diff.lp"), "--domain", "0..1", "--engine", "search"}, "solve_diff.out", 10},
        {{"solve", path("hybrid.lp"), "--domain", "0..1"}, "solve_hybrid.out", 10},
        {{"solve", path("hybrid.lp"), "--domain", "0..1", "--engine", "search"}, "solve_hybrid.out", 10},
        {{"ground", path("ground.lp"), "--text"}, "ground_text.out", 0},
        {{"check-config", "--model", path("bike.lp"), "--instance", path("bike_ok.lp")}, "check_ok.out", 0},
        {{"check-config", "--model", path("bike.lp"), "--instance", path("bike_bad.lp")}, "check_bad.out", 1},
        {{"translate-config", "--model", path("minibike.lp"), "--semantics", "founded"}, "translate_founded.out", 0},
        {{"translate-config", "--model", path("minibike.lp"), "--instance", path("minibike_partial.lp"),
          "--semantics", "casp"},
         "translate_partial_casp.out", 0},
    };
    for (const auto& c : cases) {
        INFO(c.golden);
        auto first = run(c.args);
        CHECK(first.code == c.code);
        CHECK(first.out == slurp(path(c.golden)));
        CHECK(first.err.empty());
        auto second = run(c.args);
        CHECK(second.out == first.out);
    }
}

TEST_CASE("models limit") {
    auto r = run({"solve", path("sum.lp"), "--domain", "0..1", "--models", "1"});
    CHECK(r.code == 10);
    CHECK(r.out == "Answer: 1\n\nval x=0 y=0\nSATISFIABLE\n");
    CHECK(run({"solve", path("sum.lp"), "--domain", "0..1", "--models", "0"}).out == slurp(path("solve_sum.out")));
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 64);
    CHECK(run({"frobnicate"}).code == 64);
    CHECK(run({"solve"}).code == 64);
    CHECK(run({"solve", path("ab.lp"), "--semantics", "maybe"}).code == 64);
    CHECK(run({"solve", path("ab.lp"), "--engine", "fast"}).code == 64);
    CHECK(run({"solve", path("ab.lp"), "--domain", "3..1"}).code == 64);
    CHECK(run({"solve", path("ab.lp"), "--domain", "one"}).code == 64);
    CHECK(run({"solve", path("ab.lp"), "--models", "-1"}).code == 64);
    CHECK(run({"solve", path("ab.lp"), "--semantics", "founded", "--engine", "search"}).code == 64);
    auto no_domain = run({"solve", path("sum.lp")});
    CHECK(no_domain.code == 64);
    CHECK(no_domain.err.find("--domain") != std::string::npos);
    CHECK(run({"check-config", "--model", path("bike.lp")}).code == 64);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("input errors") {
    auto bad = run({"solve", path("bad.lp")});
    CHECK(bad.code == 65);
    CHECK(bad.err.find("bad.lp:1:10: double negation is not supported") != std::string::npos);
    CHECK(run({"solve", path("missing.lp")}).code == 65);
    CHECK(run({"check-config", "--model", path("bike_ok.lp"), "--instance", path("bike_ok.lp")}).code == 65);
    CHECK(run({"check-config", "--model", path("bike.lp"), "--instance", path("bike.lp")}).code == 65);
    CHECK(run({"translate-config", "--model", path("bike.lp"), "--domain", "0..20"}).code == 65);
}

TEST_CASE("translate-config writes the output file") {
    auto out = std::filesystem::temp_directory_path() / "htasp_translate_test.lp";
    std::filesystem::remove(out);
    auto r = run({"translate-config", "--model", path("minibike.lp"), "--semantics", "founded", "-o", out.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(out.string()) == slurp(path("translate_founded.out")));
    auto solved = run({"solve", out.string(), "--semantics", "founded", "--domain", "16..17"});
    CHECK(solved.code == 10);
    CHECK(solved.out.find("Answer: 4\n") != std::string::npos);
    CHECK(solved.out.find("Answer: 5\n") == std::string::npos);
    std::filesystem::remove(out);
}
