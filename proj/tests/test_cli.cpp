#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "equiv/json_io.hpp"
#include "equiv/mc.hpp"
#include "equiv/registry.hpp"
#include "equiv/report.hpp"
#include "equiv/suites.hpp"
#include "json.hpp"

using namespace equiv;

namespace {

int run_binary(const std::string& args) {
    std::string cmd = std::string(EQUIV_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/equiv_test_" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("job parsing") {
    auto job = parse_job(R"({"suite":"prop41","N":3,"n_max":2,"backend":"exact","seed":7})");
    CHECK(job.suite == "prop41");
    CHECK(job.N == 3);
    CHECK(job.backend == Backend::Exact);
    CHECK(job.seed == 7);

    CHECK_THROWS_AS(parse_job("{not json"), input_error);
    CHECK_THROWS_AS(parse_job(R"({"N":3})"), input_error);
    CHECK_THROWS_AS(parse_job(R"({"suite":"prop41","backend":"hex"})"), input_error);
}

TEST_CASE("matrix presets inside jobs") {
    auto job = parse_job(R"({"suite":"convergence","N":2,
        "P":{"preset":"identity","N":2},
        "Q":{"preset":"c_k","k":1,"N":2}})");
    REQUIRE(job.P.has_value());
    REQUIRE(job.Q.has_value());
    CHECK(job.P->n == 2);
    auto rep = run_job(job);
    CHECK(rep.overall);

    auto explicit_job = parse_job(R"({"suite":"convergence","N":1,
        "P":{"dims":[1,1],"entries":[[1.0,0.0]]},
        "Q":{"dims":[1,1],"entries":[[-1.0,0.0]]}})");
    auto rep2 = run_job(explicit_job);
    CHECK(rep2.cases[0].inputs.find("witness") != std::string::npos);
}

TEST_CASE("run_job dispatch and unknown suites") {
    JobSpec job;
    job.suite = "prop41";
    job.N = 2;
    job.n_max = 2;
    auto rep = run_job(job);
    CHECK(rep.overall);
    CHECK(rep.suite == "prop41");
    CHECK(!rep.anchors.empty());

    job.suite = "no-such-suite";
    CHECK_THROWS_AS(run_job(job), input_error);
}

TEST_CASE("report JSON is canonical and round-trips") {
    JobSpec job;
    job.suite = "prop41";
    job.N = 2;
    job.n_max = 2;
    auto rep = run_job(job);
    std::string text = report_to_json(rep);
    auto parsed = nlohmann::json::parse(text);
    CHECK(parsed["suite"] == "prop41");
    CHECK(parsed["overall"] == true);
    CHECK(parsed["cases"].size() == rep.cases.size());
    // deterministic bytes for a fixed job (timing never enters the report)
    CHECK(report_to_json(rep) == report_to_json(run_job(job)));
}

TEST_CASE("wire formats round-trip") {
    CMatrix m = random_complex_matrix(3, 7, 1);
    CMatrix m2 = matrix_from_json_text(matrix_to_json(m));
    CHECK(m2.a == m.a);

    Tensor<Cplx> t(3, 2);
    SeededStream rng = SeededStream::make(9, 1);
    for (auto& v : t.a) v = Cplx(rng.uniform01(), -rng.uniform01());
    auto t2 = tensor_from_json_text(tensor_to_json(t));
    CHECK(t2.D == 3);
    CHECK(t2.a == t.a);

    TOp<Cplx> p(2, 2);
    for (auto& v : p.a) v = Cplx(rng.uniform01(), rng.uniform01());
    auto p2 = top_from_json_text(top_to_json(p));
    CHECK(p2.D == 2);
    CHECK(p2.a == p.a);

    Estimate e;
    e.mean = Cplx(1.5, -0.25);
    e.stderr_ = 0.01;
    e.n = 1234;
    auto e2 = estimate_from_json_text(estimate_to_json(e));
    CHECK(e2.mean == e.mean);
    CHECK(e2.stderr_ == e.stderr_);
    CHECK(e2.n == e.n);

    CHECK_THROWS_AS(tensor_from_json_text("{\"dims\":[2,3],\"entries\":[]}"), input_error);
}

TEST_CASE("registry coverage self-audit") {
    CHECK(suite_catalog().size() >= 15);
    bool has_pillow = false;
    for (const auto& s : suite_catalog())
        if (s.name == "appendix-e-pillow") {
            has_pillow = true;
            bool anchored = false;
            for (const auto& a : s.anchors) anchored = anchored || a == "pillow-closed-form";
            CHECK(anchored);
        }
    CHECK(has_pillow);
    // every registry formula appears in at least one catalogued suite
    for (const auto& f : formula_registry()) {
        CHECK(!f.suites.empty());
        for (const auto& suite : f.suites) {
            bool found = false;
            for (const auto& s : suite_catalog()) found = found || s.name == suite;
            CHECK(found);
        }
    }
}

TEST_CASE("binary exit codes") {
    // 0: passing suite
    std::string ok = write_temp("ok.json", R"({"suite":"convergence"})");
    CHECK(run_binary("run " + ok) == 0);

    // 2: malformed job
    std::string bad = write_temp("bad.json", "{this is not json");
    CHECK(run_binary("run " + bad) == 2);

    // 2: unknown suite
    std::string unk = write_temp("unk.json", R"({"suite":"nope"})");
    CHECK(run_binary("run " + unk) == 2);

    // 1: a suite whose committed comparisons include failing cases
    std::string red = write_temp("red.json", R"({"suite":"appendix-e-quartic"})");
    CHECK(run_binary("run " + red) == 1);

    // 3: enumeration budget exceeded
    std::string big = write_temp("big.json", R"({"suite":"prop41","N":2,"n_max":11})");
    CHECK(run_binary("run " + big) == 3);

    // suites listing works
    CHECK(run_binary("suites") == 0);
    CHECK(run_binary("ck --k 2 --n 6") == 0);
}

TEST_CASE("permutation degree bound honors the environment override") {
    std::string job = write_temp("env.json", R"({"suite":"prop41","N":2,"n_max":4})");
    std::string cmd = "EQUIV_MAX_PERM_DEGREE=3 " + std::string(EQUIV_BIN) + " run " + job +
                      " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 3);  // n = 4 now exceeds the configured bound
}

TEST_CASE("report files are written where asked") {
    std::string ok = write_temp("out.json", R"({"suite":"convergence"})");
    std::string out = "/tmp/equiv_test_report.json";
    CHECK(run_binary("run " + ok + " --out " + out) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    nlohmann::json parsed;
    in >> parsed;
    CHECK(parsed["suite"] == "convergence");
}
