#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out, err;
};

RunResult run(const std::string& args, const std::string& env = "") {
    RunResult res;
    std::string cmd = (env.empty() ? "" : "env " + env + " ") + std::string(CLUBFORGE_BIN) + " " +
                      args + " 2>/tmp/clubforge_stderr.txt";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) res.out.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WEXITSTATUS(status);
    std::ifstream errf("/tmp/clubforge_stderr.txt");
    res.err.assign(std::istreambuf_iterator<char>(errf), std::istreambuf_iterator<char>());
    return res;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("construct emits the subspace and a passing report") {
    RunResult r = run("construct trace-club --p 2 --e 1 --m 3");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["report"]["ok"] == true);
    CHECK(j["report"]["measured"]["classification"]["type"] == "club");
    CHECK(j["report"]["measured"]["classification"]["i"] == 2);
    CHECK(j["report"]["measured"]["rank"] == 3);
    CHECK(j["report"]["measured"]["size"] == 5);
    CHECK(j["subspace"]["field"]["modulus"] == json::array({1, 1, 0, 1}));
}

TEST_CASE("construct output is byte-identical across runs") {
    RunResult a = run("construct cone --p 2 --e 1 --m 4 --k 3 --i 3 --spectrum");
    RunResult b = run("construct cone --p 2 --e 1 --m 4 --k 3 --i 3 --spectrum");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("construct to file, analyze reproduces the report") {
    RunResult c = run("construct trace-club --p 2 --e 1 --m 4 -o /tmp/cf_u.json --report /tmp/cf_rep.json");
    REQUIRE(c.exit_code == 0);
    RunResult a = run("analyze --in /tmp/cf_u.json");
    REQUIRE(a.exit_code == 0);
    json rep = json::parse(std::ifstream("/tmp/cf_rep.json"));
    json ana = json::parse(a.out);
    CHECK(ana["census"] == rep["measured"]["census"]);
    CHECK(ana["classification"] == rep["measured"]["classification"]);
    CHECK(ana["rank"] == rep["measured"]["rank"]);
}

TEST_CASE("analyze rejects a rank-0 subspace") {
    write_file("/tmp/cf_empty.json",
               R"({"field":{"p":2,"e":1,"m":3,"modulus":[1,1,0,1]},"k":2,"basis":[]})");
    RunResult r = run("analyze --in /tmp/cf_empty.json");
    CHECK(r.exit_code == 2);
    json err = json::parse(r.err);
    CHECK(err["error"]["code"] == "ValidationError");
}

TEST_CASE("bounds subcommand") {
    RunResult r = run("bounds --q 2 --m 4 --k 3 --i 3");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["bound"] == 7);
    CHECK(j["case"] == "m/2<=i<=m, k>2");

    RunResult r2 = run("bounds --q 2 --m 4 --k 3 --i 3 --n 8");
    json j2 = json::parse(r2.out);
    CHECK(j2["b2_admissible"] == false);
}

TEST_CASE("dual, code build, weights, MacWilliams pipeline") {
    REQUIRE(run("construct cone --p 2 --e 1 --m 4 --k 3 --i 3 -o /tmp/cf_cone.json --report /dev/null").exit_code == 0);
    REQUIRE(run("dual --in /tmp/cf_cone.json -o /tmp/cf_dual.json").exit_code == 0);
    REQUIRE(run("code build --system /tmp/cf_dual.json -o /tmp/cf_code.json").exit_code == 0);

    json code = json::parse(std::ifstream("/tmp/cf_code.json"));
    CHECK(code["n"] == 5);
    CHECK(code["k"] == 3);

    RunResult we = run("code weights --in /tmp/cf_code.json --method enumerate");
    REQUIRE(we.exit_code == 0);
    json jwe = json::parse(we.out);
    CHECK(jwe["A"] == json::array({1, 15, 0, 1800, 2280}));
    CHECK(jwe["d"] == 1);

    RunResult wg = run("code weights --in /tmp/cf_code.json --method geometric");
    CHECK(json::parse(wg.out)["A"] == jwe["A"]);

    write_file("/tmp/cf_dist.json", jwe.dump());
    RunResult mw = run("macwilliams --in /tmp/cf_dist.json --n 5 --k 3 --m 4 --q 2");
    REQUIRE(mw.exit_code == 0);
    CHECK(json::parse(mw.out)["B"] == json::array({1, 0, 0, 225, 30}));

    RunResult cl = run("code classify --in /tmp/cf_code.json");
    REQUIRE(cl.exit_code == 0);
    json jcl = json::parse(cl.out);
    CHECK(jcl["tag"] == "dual_of_club");
    CHECK(jcl["i"] == 3);
    CHECK(jcl["verified"] == true);
}

TEST_CASE("search subcommand streams hits and a census line") {
    write_file("/tmp/cf_search.json",
               R"({"field":{"p":2,"e":1,"m":3},"k":2,"n":3,"target":{"kind":"club","i":2}})");
    RunResult r = run("search --spec /tmp/cf_search.json --jobs 2");
    REQUIRE(r.exit_code == 0);
    // last line is the census record
    auto pos = r.out.find_last_of('\n', r.out.size() - 2);
    json census = json::parse(r.out.substr(pos + 1));
    CHECK(census["scanned"] == 1395);
    CHECK(census["expected_count"] == 1395);
    json first_line = json::parse(r.out.substr(0, r.out.find('\n')));
    CHECK(first_line.contains("hit"));
}

TEST_CASE("analyze size budget maps to exit 3") {
    REQUIRE(run("construct lift-odd --p 2 --e 1 --m 4 --k 3 --i 2 -o /tmp/cf_lift.json --report /dev/null").exit_code == 0);
    RunResult r = run("analyze --in /tmp/cf_lift.json --budget 10");
    CHECK(r.exit_code == 3);
    json err = json::parse(r.err);
    CHECK(err["error"]["code"] == "SizeBudgetExceeded");
}

TEST_CASE("anchored search via a spec file") {
    // anchor S = trace kernel of F_8 (encodings 4 and 6 span it); the
    // anchored space has [4 choose 1]_2 = 15 subspaces
    write_file("/tmp/cf_anchored.json",
               R"({"field":{"p":2,"e":1,"m":3},"k":2,"n":3,
                   "target":{"kind":"club","i":2},"anchor_S":[4,6]})");
    RunResult r = run("search --spec /tmp/cf_anchored.json");
    REQUIRE(r.exit_code == 0);
    auto pos = r.out.find_last_of('\n', r.out.size() - 2);
    json census = json::parse(r.out.substr(pos + 1));
    CHECK(census["scanned"] == 15);
    CHECK(census["expected_count"] == 15);
}

TEST_CASE("search budget exceeded maps to exit 3") {
    write_file("/tmp/cf_search_big.json",
               R"({"field":{"p":2,"e":1,"m":4},"k":2,"n":4,"target":{"kind":"census"},"budget":100})");
    RunResult r = run("search --spec /tmp/cf_search_big.json");
    CHECK(r.exit_code == 3);
    json err = json::parse(r.err);
    CHECK(err["error"]["code"] == "BudgetExceeded");
}

TEST_CASE("verify runs the full battery") {
    RunResult r = run("verify trace-club --p 2 --e 1 --m 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);

    RunResult rc = run("verify cone --p 2 --e 1 --m 4 --k 3 --i 3");
    CHECK(rc.exit_code == 0);
}

TEST_CASE("parse errors are structured") {
    RunResult r = run("analyze --in /tmp/does_not_exist.json");
    CHECK(r.exit_code == 2);
    json err = json::parse(r.err);
    CHECK(err["error"]["code"] == "ParseError");
}

TEST_CASE("CLUBFORGE_BUDGET environment variable caps iteration") {
    REQUIRE(run("construct lift-odd --p 2 --e 1 --m 4 --k 3 --i 2 -o /tmp/cf_lift2.json --report /dev/null").exit_code == 0);
    RunResult r = run("analyze --in /tmp/cf_lift2.json", "CLUBFORGE_BUDGET=10");
    CHECK(r.exit_code == 3);
    // the flag wins over the environment
    RunResult r2 = run("analyze --in /tmp/cf_lift2.json --budget 1000000", "CLUBFORGE_BUDGET=10");
    CHECK(r2.exit_code == 0);
}

TEST_CASE("timings go to stderr only when asked") {
    RunResult quiet = run("bounds --q 2 --m 4 --k 3 --i 3");
    CHECK(quiet.err.empty());
    write_file("/tmp/cf_search_small.json",
               R"({"field":{"p":2,"e":1,"m":3},"k":2,"n":2,"target":{"kind":"census"}})");
    RunResult timed = run("search --spec /tmp/cf_search_small.json --timings");
    REQUIRE(timed.exit_code == 0);
    json meta = json::parse(timed.err);
    CHECK(meta.contains("metadata"));
    CHECK(meta["metadata"].contains("wall_seconds"));
    // primary output carries no timing
    auto pos = timed.out.find_last_of('\n', timed.out.size() - 2);
    CHECK(json::parse(timed.out.substr(pos + 1)).contains("wall_seconds") == false);
}

TEST_CASE("construct accepts a spec file") {
    write_file("/tmp/cf_spec.json",
               R"({"name":"cone","p":2,"e":1,"m":4,"k":3,"i":3,"S":{"mode":"trace-kernel"}})");
    RunResult a = run("construct --spec /tmp/cf_spec.json");
    RunResult b = run("construct cone --p 2 --e 1 --m 4 --k 3 --i 3");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
}

namespace {
const char* kFixtures[] = {"trace-club-q2m3",
                           "trace-club-q2m4",
                           "trace-club-q2m5",
                           "subfield-trace-club-q2m4",
                           "subfield-trace-club-q2m6",
                           "cone-q2m4i2",
                           "cone-q2m4i3",
                           "lift-odd-q2m4i2",
                           "lift-odd-q2m6i3",
                           "half-club-k4-q2m4",
                           "twisted-gabidulin-q2m5",
                           "redei-scattered-q2m4",
                           "pseudoregulus-q2m4",
                           "complementary-weights-q3m4"};
}

TEST_CASE("committed fixtures reproduce their golden reports") {
    const std::string dir = CLUBFORGE_FIXTURES;
    for (const std::string name : kFixtures) {
        RunResult r = run("analyze --in " + dir + "/" + name + ".subspace.json --hyperplanes");
        REQUIRE(r.exit_code == 0);
        std::ifstream gf(dir + "/" + name + ".report.json");
        REQUIRE(gf.good());
        json golden = json::parse(gf);
        CHECK(json::parse(r.out) == golden);
    }
}

TEST_CASE("weight methods agree on every committed fixture") {
    const std::string dir = CLUBFORGE_FIXTURES;
    for (const std::string name : kFixtures) {
        REQUIRE(run("code build --system " + dir + "/" + name +
                    ".subspace.json -o /tmp/cf_fix_code.json")
                    .exit_code == 0);
        RunResult en = run("code weights --in /tmp/cf_fix_code.json --method enumerate");
        RunResult ge = run("code weights --in /tmp/cf_fix_code.json --method geometric");
        REQUIRE(en.exit_code == 0);
        REQUIRE(ge.exit_code == 0);
        CHECK(json::parse(en.out)["A"] == json::parse(ge.out)["A"]);
    }
}
