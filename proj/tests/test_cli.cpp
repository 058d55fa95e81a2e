#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "csb/catalog.hpp"
#include "csb/json_io.hpp"

using namespace csb;
using json_io::Json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("csb_cli_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::filesystem::path emit(const std::string& example) {
    auto dir = scratch(example);
    auto r = run({"catalog", "emit", example, "--out", dir.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    return dir;
}

std::string path(const std::filesystem::path& p) { return p.string(); }

}  // namespace

TEST(Cli, ValidateDeloopingIsOk) {
    auto dir = scratch("validate");
    json_io::write_file(dir / "z3.json", json_io::to_json(catalog::build("delooping(Z3)")));
    auto r = run({"validate", path(dir / "z3.json")});
    EXPECT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_NE(r.out.find("ok"), std::string::npos);
}

TEST(Cli, ValidateCorruptedTripleIsFalse) {
    auto dir = scratch("corrupt");
    Json j = json_io::to_json(catalog::build("delooping(Z3)"));
    // 1 + 1 = 2 in Z3; claim 0 instead.
    for (auto& t : j["compose"])
        if (t[0] == 1 && t[1] == 1)
            t[2] = 0;
    json_io::write_file(dir / "bad.json", j);
    auto r = run({"validate", path(dir / "bad.json")});
    EXPECT_EQ(r.code, cli::kFalse);
    EXPECT_NE(r.out.find("associativity"), std::string::npos);
}

TEST(Cli, MalformedJsonIsInvalidInput) {
    auto dir = scratch("malformed");
    std::ofstream(dir / "broken.json") << "{\"objects\": ";
    EXPECT_EQ(run({"validate", path(dir / "broken.json")}).code, cli::kInvalidInput);
    EXPECT_EQ(run({"validate", path(dir / "absent.json")}).code, cli::kInvalidInput);
    std::ofstream(dir / "other.json") << "{\"hello\": 1}";
    EXPECT_EQ(run({"validate", path(dir / "other.json")}).code, cli::kInvalidInput);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::kInvalidInput);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kInvalidInput);
    EXPECT_EQ(run({"--format", "xml", "catalog", "list"}).code, cli::kInvalidInput);
    EXPECT_EQ(run({"--help"}).code, cli::kSuccess);
}

TEST(Cli, CheckPointIntoCircle) {
    auto dir = emit("point_into_circle");
    auto emb = run({"check", "embedding", path(dir / "F.json")});
    EXPECT_EQ(emb.code, cli::kFalse);
    EXPECT_NE(emb.out.find("hom(0, 0)"), std::string::npos);
    auto js = run({"--format", "json", "check", "embedding", path(dir / "F.json")});
    Json doc = Json::parse(js.out);
    EXPECT_EQ(doc["holds"], false);
    EXPECT_EQ(doc["counterexample"]["x"], 0);
    EXPECT_EQ(doc["counterexample"]["target_hom_size"], 2);
    EXPECT_EQ(run({"check", "cancellable", path(dir / "F.json")}).code, cli::kSuccess);
}

TEST(Cli, CheckIdentityEquivalence) {
    auto dir = emit("identity");
    EXPECT_EQ(run({"check", "equivalence", path(dir / "F.json")}).code, cli::kSuccess);
    EXPECT_EQ(run({"check", "nonsense", path(dir / "F.json")}).code, cli::kInvalidInput);
}

TEST(Cli, CsbIdentityProblem) {
    auto dir = emit("identity");
    auto cert = dir / "cert.json";
    auto r = run({"csb", path(dir / "problem.json"), "--certificate", path(cert)});
    EXPECT_EQ(r.code, cli::kSuccess) << r.err;
    Json c = json_io::read_file(cert);
    EXPECT_EQ(c["valid"], true);
    EXPECT_EQ(c["h"]["obj_map"], Json::parse("[0,1,2,3]"));
}

TEST(Cli, CsbGeneratedPair) {
    auto dir = scratch("pair");
    auto file = dir / "pair.json";
    auto g = run({"--seed", "7", "--out", path(file), "generate", "pair"});
    ASSERT_EQ(g.code, cli::kSuccess) << g.err;
    auto r = run({"csb", path(file)});
    EXPECT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_NE(r.out.find("certificate: valid"), std::string::npos);
}

TEST(Cli, CsbRejectsCancellableOnlyPair) {
    auto dir = emit("lc_csb_fails");
    auto r = run({"csb", path(dir / "problem.json")});
    EXPECT_EQ(r.code, cli::kInvalidInput);
    EXPECT_NE(r.err.find("not an embedding"), std::string::npos);
}

TEST(Cli, ChainsEvensOdds) {
    auto dir = emit("evens_odds");
    auto r = run({"--format", "json", "chains", path(dir / "problem.json"), "--window", "100"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    Json doc = Json::parse(r.out);
    std::size_t f = 0, gi = 0;
    for (const auto& e : doc["entries"])
        (e["branch"] == "f" ? f : gi) += 1;
    EXPECT_EQ(f, 50u);
    EXPECT_EQ(gi, 50u);
    EXPECT_EQ(doc["h_level"], "groupoid");
}

TEST(Cli, ChainsBudgetOneIsUndetermined) {
    auto dir = emit("evens_odds");
    EXPECT_EQ(run({"chains", path(dir / "problem.json"), "--budget", "1"}).code, cli::kUndetermined);
    EXPECT_EQ(run({"chains", path(dir / "problem.json"), "--window", "-4"}).code, cli::kInvalidInput);
}

TEST(Cli, ChainsPradicOnIndices) {
    auto dir = emit("pradic_pair");
    auto r = run({"--format", "json", "chains", path(dir / "problem.json"), "--window", "30"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    Json doc = Json::parse(r.out);
    EXPECT_EQ(doc["G_status"], "left-cancellable-only");
    EXPECT_EQ(doc["h_level"], "index");
    EXPECT_TRUE(doc["undetermined"].empty());
    for (const auto& e : doc["entries"])
        EXPECT_EQ(e["h"], e["x"]);
}

TEST(Cli, ChainsDivergenceAndDot) {
    auto dir = emit("chain_divergence");
    auto dot = dir / "chains.dot";
    auto on = run({"chains", path(dir / "problem.json"), "--window", "20", "--dot", path(dot)});
    EXPECT_EQ(on.code, cli::kSuccess) << on.err;
    std::ifstream in(dot);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("orange"), std::string::npos);
    auto off = run({"chains", path(dir / "problem.json"), "--window", "20", "--budget", "50", "--no-divergence"});
    EXPECT_EQ(off.code, cli::kUndetermined);
}

TEST(Cli, Bench) {
    auto r = run({"--format", "json", "bench", "1000,4000", "--repeats", "2"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    Json doc = Json::parse(r.out);
    ASSERT_EQ(doc["rows"].size(), 2u);
    EXPECT_EQ(doc["rows"][1]["size"], 4000);
    EXPECT_TRUE(doc["fitted_exponent"].is_number());
    EXPECT_EQ(run({"bench", "100", "--repeats", "0"}).code, cli::kInvalidInput);
}

TEST(Cli, CatalogListEmitCheck) {
    auto list = run({"catalog", "list"});
    EXPECT_EQ(list.code, cli::kSuccess);
    for (const auto& name : catalog::example_names())
        EXPECT_NE(list.out.find(name), std::string::npos);
    auto dir = emit("component_swap");
    for (const char* f : {"X.json", "Y.json", "F.json", "G.json", "problem.json", "expectations.json"})
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    EXPECT_EQ(run({"validate", path(dir / "problem.json")}).code, cli::kSuccess);
    for (const auto& name : catalog::example_names())
        EXPECT_EQ(run({"catalog", "check", name}).code, cli::kSuccess) << name;
    EXPECT_EQ(run({"catalog", "emit", "evens_odds"}).code, cli::kInvalidInput);
    EXPECT_EQ(run({"catalog", "check", "nope"}).code, cli::kInvalidInput);
}

TEST(Cli, GenerateIsSeedDeterministic) {
    auto a = run({"--seed", "5", "generate", "functor"});
    auto b = run({"--seed", "5", "generate", "functor"});
    auto c = run({"--seed", "6", "generate", "functor"});
    EXPECT_EQ(a.code, cli::kSuccess);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
    EXPECT_EQ(json_io::sniff(Json::parse(a.out)), json_io::DocumentKind::Functor);
}

TEST(Cli, ValidateCountableDocuments) {
    auto dir = emit("pradic_pair");
    EXPECT_EQ(run({"validate", path(dir / "G.json")}).code, cli::kSuccess);
    EXPECT_EQ(run({"validate", path(dir / "Y.json")}).code, cli::kSuccess);
    EXPECT_EQ(run({"check", "embedding", path(dir / "G.json")}).code, cli::kFalse);
    EXPECT_EQ(run({"check", "cancellable", path(dir / "G.json")}).code, cli::kSuccess);
}

TEST(Cli, BinaryExitCodes) {
    auto dir = emit("point_into_circle");
    std::string bin = CSB_CLI_PATH;
    auto sh = [&](const std::string& args) {
        int status = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    EXPECT_EQ(sh("catalog list"), 0);
    EXPECT_EQ(sh("check embedding " + path(dir / "F.json")), 1);
    EXPECT_EQ(sh("validate " + path(dir / "missing.json")), 2);
}
