#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "zetalab/cli.hpp"
#include "zetalab/mean_square.hpp"
#include "zetalab/records.hpp"

using namespace zetalab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

int run_binary(const std::string& args) {
    std::string cmd = std::string(ZETALAB_CLI) + " " + args + " >/dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("zetalab_test_" + name);
    fs::remove_all(p);
    return p;
}

const std::string kBroken = std::string(ZETALAB_FIXTURES) + "/broken_registry.json";

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run({"exponents", "verify", "--all"}).code == cli::kExitOk);
    auto broken = run({"exponents", "verify", "--all", "--extra", kBroken});
    CHECK(broken.code == cli::kExitVerificationFailed);
    CHECK(broken.out.find("false") != std::string::npos);
    CHECK(run({"spacing", "count", "--K", "4"}).code == cli::kExitInputError);
    CHECK(run({"frobnicate"}).code == cli::kExitInputError);
    CHECK(run({"zeta", "eval", "--t", "3", "--method", "rs"}).code == cli::kExitInputError);
    auto refused = run({"zeta", "E", "--T", "100", "--nodes", "10"});
    CHECK(refused.code == cli::kExitInputError);
    CHECK(refused.err.find(std::to_string(zeta::resolution_floor(100, 100))) != std::string::npos);
    auto v = run({"--version"});
    CHECK(v.code == cli::kExitOk);
    CHECK(v.out.find(cli::version_string()) != std::string::npos);
}

TEST_CASE("the binary reports the same exit codes") {
    CHECK(run_binary("exponents verify --all") == 0);
    CHECK(run_binary("exponents verify --all --extra " + kBroken) == 1);
    CHECK(run_binary("sieve check --d 9") == 2);
    CHECK(run_binary("--version") == 0);
}

TEST_CASE("spacing count row") {
    auto r = run({"spacing", "count", "--system", "A", "--K", "8", "--L", "2", "--eta", "0.25"});
    REQUIRE(r.code == 0);
    auto rows = records::parse_csv("spacing", r.out);
    REQUIRE(rows.size() == 1);
    CHECK(std::get<std::string>(rows[0].row[0]) == "A");
    CHECK(std::get<std::int64_t>(rows[0].row[1]) == 8);
    CHECK(std::holds_alternative<std::monostate>(rows[0].row[4]));
    CHECK(std::get<std::int64_t>(rows[0].row[5]) == 688);
    CHECK(std::get<std::int64_t>(rows[0].row[6]) == 400);
}

TEST_CASE("repeated runs write identical files") {
    std::vector<std::string> cmd = {"--seed", "7", "sieve", "suite", "--instances", "6"};
    fs::path a = scratch("rep_a"), b = scratch("rep_b");
    auto args_a = cmd, args_b = cmd;
    args_a.insert(args_a.begin(), {"--out", a.string()});
    args_b.insert(args_b.begin(), {"--out", b.string(), "--threads", "3"});
    REQUIRE(run(args_a).code == 0);
    REQUIRE(run(args_b).code == 0);
    CHECK(slurp(a / "sieve_suite.csv") == slurp(b / "sieve_suite.csv"));
    CHECK(slurp(a / "sieve_suite_reports.json") == slurp(b / "sieve_suite_reports.json"));
    auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
    CHECK(manifest["seed"] == 7);
    CHECK(manifest["outputs"].size() == 2);
    CHECK(manifest["parameters"]["sieve.suite.instances"] == "6");
}

TEST_CASE("config file with command-line override") {
    fs::path dir = scratch("cfg");
    fs::create_directories(dir);
    std::ofstream(dir / "run.ini") << "[spacing.count]\nK = 4\nL = 2\neta = 1\n";
    auto from_file = run({"--config", (dir / "run.ini").string(), "spacing", "count"});
    REQUIRE(from_file.code == 0);
    CHECK(std::get<std::int64_t>(records::parse_csv("spacing", from_file.out)[0].row[1]) == 4);
    auto overridden = run({"--config", (dir / "run.ini").string(), "spacing", "count", "--K", "3"});
    REQUIRE(overridden.code == 0);
    CHECK(std::get<std::int64_t>(records::parse_csv("spacing", overridden.out)[0].row[1]) == 3);
}

TEST_CASE("records") {
    std::vector<records::OutputRecord> rows = {
        records::make_record("zeta_point", {1.5, 0.1, -0.2, 0.3, std::string("rs, \"x\""), 1e-12}),
        records::make_record("zeta_point", {2.0, 1.0 / 3, 2.0, 4.0, std::string("em"), 0.0}),
    };
    auto text = records::to_csv("zeta_point", rows);
    auto back = records::parse_csv("zeta_point", text);
    REQUIRE(back.size() == 2);
    CHECK(back[0].row == rows[0].row);
    CHECK(back[1].row == rows[1].row);

    auto empty = records::to_csv("sieve", {});
    CHECK(empty == "d,size_x,size_y,q,lhs,rhs,pair_count,constant,seed\n");
    CHECK(records::parse_csv("sieve", empty).empty());

    rows.push_back(records::make_record("wh_ratio", {1.0, 2.0, 1.0, std::int64_t{1}, 0.5}));
    CHECK_THROWS_AS(records::to_csv("zeta_point", rows), InputError);
    CHECK_THROWS_AS(records::make_record("wh_ratio", {1.0}), InputError);

    auto j = nlohmann::json::parse(records::to_json("wh_ratio", {rows.back()}));
    CHECK(j["schema"] == "wh_ratio");
    CHECK(j["records"][0]["ratio"] == 0.5);
}

TEST_CASE("unwritable output directory") {
    fs::path blocker = scratch("blocker");
    std::ofstream(blocker) << "x";
    auto r = run({"--out", (blocker / "sub").string(), "exponents", "table"});
    CHECK(r.code == cli::kExitInputError);
    CHECK(r.err.find("error") != std::string::npos);
}
