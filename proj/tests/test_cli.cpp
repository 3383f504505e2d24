#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;
namespace cli = iterroot::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = {}) {
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    const int code = cli::run(args, out, err, in);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("iterroot_test_" + name);
}

} // namespace

TEST_CASE("sin half-iterate table") {
    const auto r = run({"root", "--ring", "Q", "--n", "2", "--order", "15", "--preset", "sin"});
    CHECK(r.code == cli::kExitOk);
    CHECK(contains(r.out, "status: unique"));
    CHECK(contains(r.out, "3 -1/12\n"));
    CHECK(contains(r.out, "15 594673187/167382319104000\n"));
    CHECK(contains(r.out, "iterate(ω,2) = sin: OK"));
}

TEST_CASE("integer square root as JSON") {
    const auto r = run({"root", "--ring", "Z", "--n", "2", "--coeffs", "0,1,4,8,12,24,36,48,60,72,120", "--format",
                        "json"});
    REQUIRE(r.code == cli::kExitOk);
    const auto doc = json::parse(r.out);
    CHECK(doc.at("command") == "root");
    CHECK(doc.at("ring") == "Z");
    CHECK(doc.at("result").at("status") == "unique");
    CHECK(doc.at("result").at("omega") ==
          json::parse(R"(["0","1","2","0","2","0","-14","96","-426","1044","2464"])"));
}

TEST_CASE("obstruction exits 2") {
    const auto r = run({"root", "--ring", "Zmod:3", "--n", "3", "--coeffs", "0,1,1"});
    CHECK(r.code == cli::kExitNoSolution);
    CHECK(contains(r.out, "obstruction: index 2"));
}

TEST_CASE("several roots exit 3") {
    const auto r = run({"root", "--ring", "Zmod:2", "--n", "2", "--coeffs", "0,1,0,0"});
    CHECK(r.code == cli::kExitBranches);
    CHECK(contains(r.out, "4 roots, complete"));
    CHECK(contains(r.out, "root 3: 0,1,1,1"));
}

TEST_CASE("branch cap from the environment and from flags") {
    ::setenv(cli::kBranchCapEnv, "2", 1);
    const auto env = run({"root", "--ring", "Zmod:2", "--n", "2", "--coeffs", "0,1,0,0", "--format", "json"});
    CHECK(json::parse(env.out).at("result").at("count") == 2);
    CHECK(json::parse(env.out).at("result").at("complete") == false);
    const auto flag =
        run({"root", "--ring", "Zmod:2", "--n", "2", "--coeffs", "0,1,0,0", "--format", "json", "--cap", "3"});
    CHECK(json::parse(flag.out).at("result").at("count") == 3);
    ::setenv(cli::kBranchCapEnv, "lots", 1);
    CHECK(run({"root", "--ring", "Zmod:2", "--n", "2", "--coeffs", "0,1,0,0"}).code == cli::kExitUsage);
    ::unsetenv(cli::kBranchCapEnv);

    const auto single = run({"root", "--ring", "Zmod:2", "--n", "2", "--coeffs", "0,1,0,0", "--no-branch"});
    CHECK(single.code == cli::kExitBranches);
    CHECK(contains(single.out, "1 roots, incomplete"));
}

TEST_CASE("order truncates the coefficient list") {
    const auto r = run({"root", "--ring", "Q", "--n", "2", "--coeffs", "0,1,1,1,1,1", "--order", "2"});
    CHECK(r.code == cli::kExitOk);
    CHECK(contains(r.out, "order: 2"));
    CHECK(contains(r.out, "2 1/2\n"));
    CHECK(run({"root", "--ring", "Q", "--n", "2", "--coeffs", "0,1,1", "--order", "5"}).code == cli::kExitUsage);
}

TEST_CASE("presets over other rings") {
    const auto r = run({"root", "--ring", "Zmod:7", "--n", "2", "--order", "5", "--preset", "sin"});
    CHECK(r.code == cli::kExitOk);
    CHECK(contains(r.out, "iterate(ω,2) = sin: OK"));
    // 1/2 has no meaning mod 2
    CHECK(run({"root", "--ring", "Zmod:2", "--n", "2", "--order", "5", "--preset", "expm1"}).code == cli::kExitUsage);
}

TEST_CASE("Pascal root") {
    const auto r = run({"rroot", "--ring", "Q", "--n", "2", "--f", "1,1,1,1,1", "--g", "0,1,1,1,1", "--order", "4"});
    CHECK(r.code == cli::kExitOk);
    CHECK(contains(r.out, "alpha: 1,1/2,1/4,1/8,1/16\n"));
    CHECK(contains(r.out, "omega: 0,1,1/2,1/4,1/8\n"));

    const auto z = run({"rroot", "--ring", "Z", "--n", "2", "--f", "1,1,1,1,1", "--g", "0,1,1,1,1", "--format", "json"});
    CHECK(z.code == cli::kExitNoSolution);
    const auto doc = json::parse(z.out);
    CHECK(doc.at("result").at("status") == "no_solution");
    CHECK(doc.at("result").at("stage") == "omega");
    CHECK(doc.at("result").at("index") == 2);
}

TEST_CASE("enumerate") {
    const auto r = run({"enumerate", "--ring", "Zmod:2", "--order", "7"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.rfind("g,root_count,roots\n000000,24,", 0) == 0);
    CHECK(contains(r.out, "\n001010,8,"));
    const auto j = run({"enumerate", "--order", "3", "--format", "json"});
    CHECK(json::parse(j.out).at("classes").size() == 1);
    CHECK(run({"enumerate", "--ring", "Zmod:3", "--order", "3"}).code == cli::kExitUsage);
    CHECK(run({"enumerate", "--order", "9", "--bound", "8"}).code == cli::kExitUsage);
}

TEST_CASE("feasibility") {
    const auto ok = run({"feasibility", "--coeffs", "0,1,4,8,12,24,36,48,60,72,120"});
    CHECK(ok.code == cli::kExitOk);
    CHECK(contains(ok.out, "overall: feasible"));
    CHECK(contains(ok.out, "all g_k = 0 mod 4: yes"));
    const auto bad = run({"feasibility", "--coeffs", "0,1,1"});
    CHECK(bad.code == cli::kExitNoSolution);
    CHECK(contains(bad.out, "2 1 no -"));
    CHECK(run({"feasibility", "--ring", "Q", "--coeffs", "0,1,2"}).code == cli::kExitUsage);
}

TEST_CASE("verify a report and a tampered report") {
    const auto report = run({"root", "--ring", "Q", "--n", "2", "--order", "6", "--preset", "tan", "--format", "json"});
    REQUIRE(report.code == cli::kExitOk);
    const auto good = run({"verify", "--input", "-"}, report.out);
    CHECK(good.code == cli::kExitOk);
    CHECK(contains(good.out, "OK"));

    auto doc = json::parse(report.out);
    doc["result"]["omega"][3] = "1/7";
    const auto bad = run({"verify", "--input", "-"}, doc.dump());
    CHECK(bad.code == cli::kExitNoSolution);
    CHECK(contains(bad.out, "mismatch at entry (3,1)"));
}

TEST_CASE("verify Riordan reports and obstructions") {
    const auto report =
        run({"rroot", "--ring", "Q", "--n", "3", "--f", "1,2,0,1", "--g", "0,1,3,1", "--format", "json"});
    REQUIRE(report.code == cli::kExitOk);
    CHECK(run({"verify", "--input", "-"}, report.out).code == cli::kExitOk);
    auto doc = json::parse(report.out);
    doc["result"]["alpha"][2] = "5";
    CHECK(run({"verify", "--input", "-"}, doc.dump()).code == cli::kExitNoSolution);

    const auto obst = run({"root", "--ring", "Z", "--n", "2", "--coeffs", "0,1,2,3", "--format", "json"});
    CHECK(obst.code == cli::kExitNoSolution);
    CHECK(run({"verify", "--input", "-"}, obst.out).code == cli::kExitOk);
    auto wrong = json::parse(obst.out);
    wrong["result"]["index"] = 2;
    CHECK(run({"verify", "--input", "-"}, wrong.dump()).code == cli::kExitNoSolution);
}

TEST_CASE("verify from flags") {
    CHECK(run({"verify", "--ring", "Q", "--n", "2", "--g", "0,1,1,1", "--omega", "0,1,1/2,1/4"}).code == cli::kExitOk);
    CHECK(run({"verify", "--ring", "Q", "--n", "2", "--g", "0,1,1,1", "--omega", "0,1,1/2,1/3"}).code ==
          cli::kExitNoSolution);
    CHECK(run({"verify", "--ring", "Q", "--n", "2", "--f", "1,1,1,1", "--g", "0,1,1,1", "--alpha", "1,1/2,1/4,1/8",
               "--omega", "0,1,1/2,1/4"})
              .code == cli::kExitOk);
    CHECK(run({"verify", "--ring", "Q", "--n", "2", "--f", "1,1,1,1", "--g", "0,1,1,1", "--omega", "0,1,1/2,1/4"})
              .code == cli::kExitUsage);
}

TEST_CASE("emit a b-file") {
    const auto path = temp_file("sin.b");
    const auto r = run({"emit", "--ring", "Q", "--n", "2", "--order", "5", "--preset", "sin", "--offset", "1",
                        "--output", path.string()});
    CHECK(r.code == cli::kExitOk);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == "1 0\n2 1\n3 0\n4 -1/12\n5 0\n6 -1/160\n");
    std::filesystem::remove(path);

    const auto stdout_b = run({"root", "--ring", "Z", "--n", "2", "--coeffs", "0,1,2,2", "--format", "bfile"});
    CHECK(stdout_b.out == "0 0\n1 1\n2 1\n3 0\n");
    CHECK(run({"emit", "--ring", "Z", "--n", "2", "--coeffs", "0,1,1"}).code == cli::kExitNoSolution);
}

TEST_CASE("series documents as input") {
    const auto path = temp_file("g.json");
    {
        std::ofstream out(path);
        out << R"({"ring": "Q", "order": 3, "coeffs": ["0", "1", "5", "7"]})";
    }
    const auto r = run({"root", "--n", "3", "--input", path.string(), "--format", "json"});
    CHECK(r.code == cli::kExitOk);
    CHECK(json::parse(r.out).at("result").at("omega") == json::parse(R"(["0","1","5/3","-29/9"])"));
    std::filesystem::remove(path);
    CHECK(run({"root", "--n", "3", "--input", "-"}, "{not json").code == cli::kExitUsage);
    CHECK(run({"root", "--n", "3", "--input", "/nonexistent/g.json"}).code == cli::kExitUsage);
}

TEST_CASE("usage errors") {
    const auto no_n = run({"root", "--ring", "Q", "--coeffs", "0,1"});
    CHECK(no_n.code == cli::kExitUsage);
    CHECK(contains(no_n.err, "missing required field: n"));
    const auto no_ring = run({"root", "--n", "2", "--coeffs", "0,1"});
    CHECK(contains(no_ring.err, "missing required field: ring"));
    const auto no_order = run({"root", "--ring", "Q", "--n", "2", "--preset", "sin"});
    CHECK(contains(no_order.err, "missing required field: order"));
    CHECK(run({"root", "--ring", "Q", "--n", "2", "--coeffs", "0,1", "--preset", "sin"}).code == cli::kExitUsage);
    CHECK(run({"root", "--ring", "Q", "--n", "2", "--coeffs", "0,2,1"}).code == cli::kExitUsage);
    CHECK(run({"root", "--ring", "Q", "--n", "2", "--coeffs", "0,1", "--format", "xml"}).code == cli::kExitUsage);
    CHECK(run({"root", "--ring", "R", "--n", "2", "--coeffs", "0,1"}).code == cli::kExitUsage);
    CHECK(run({"bogus"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
}
