#include "cli.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

using namespace cohomoforge;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cohomoforge");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("cohomoforge-cli-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    return p;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 64") {
    CHECK(run({}).code == cli::exit_usage);
    CHECK(run({"verify", "depth", "--bogus"}).code == cli::exit_usage);
    CHECK(run({"group", "info", "--p", "five"}).code == cli::exit_usage);
    CHECK(run({"group", "info", "--format", "xml"}).code == cli::exit_usage);
    CHECK(run({"--help"}).code == cli::exit_ok);
}

TEST_CASE("parameter errors exit with 1") {
    Run r = run({"verify", "depth", "--p", "5", "--r", "4", "--no-cache"});
    CHECK(r.code == cli::exit_error);
    CHECK(r.err.find("parameter error") != std::string::npos);
    CHECK(run({"group", "info", "--p", "4", "--r", "2"}).code == cli::exit_error);
}

TEST_CASE("group info") {
    Run r = run({"group", "info", "--p", "7", "--r", "3"});
    REQUIRE(r.code == cli::exit_ok);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["order"] == 2401);
    CHECK(doc["exponent"] == 7);
    CHECK(doc["center_rank"] == 1);
    CHECK(doc["gamma_indices"] == nlohmann::json({49, 7, 7}));
    Run t = run({"group", "info", "--presentation", test::data_path("heisenberg_5.pc"), "--format", "table"});
    CHECK(t.code == cli::exit_ok);
    CHECK(t.out.find("order:") != std::string::npos);
}

TEST_CASE("cohomology dims") {
    Run r = run({"cohomology", "dims", "--presentation", test::data_path("c5xc5.pc"), "--max-degree", "2"});
    REQUIRE(r.code == cli::exit_ok);
    CHECK(nlohmann::json::parse(r.out)["dims"] == nlohmann::json({1, 2, 3}));
    Run tight = run({"cohomology", "dims", "--p", "5", "--r", "2", "--max-degree", "3", "--max-unknowns", "10"});
    CHECK(tight.code == cli::exit_inconclusive);
}

TEST_CASE("eta and theta certificates with a cache") {
    const fs::path dir = scratch_dir("cache");
    Run strict = run({"eta", "certify", "--strict", "--cache-dir", dir.string()});
    CHECK(strict.code == cli::exit_error);
    Run first = run({"theta", "certify", "--cache-dir", dir.string()});
    REQUIRE(first.code == cli::exit_ok);
    auto a = nlohmann::json::parse(first.out);
    CHECK(a["status"] == "NOT_COBOUNDARY");
    CHECK(a["timing"]["cache"] == "miss");
    Run second = run({"theta", "certify", "--cache-dir", dir.string()});
    CHECK(second.code == cli::exit_ok);
    auto b = nlohmann::json::parse(second.out);
    CHECK(b["timing"]["cache"] == "hit");
    a.erase("timing");
    b.erase("timing");
    CHECK(a == b);
    Run gc = run({"cache", "gc", "--cache-dir", dir.string()});
    CHECK(gc.code == cli::exit_ok);
    CHECK(nlohmann::json::parse(gc.out)["kept"] == 1);
    fs::remove_all(dir);
}

TEST_CASE("verify depth writes the report") {
    const fs::path dir = scratch_dir("emit");
    fs::create_directories(dir);
    const fs::path out = dir / "report.json";
    Run r = run({"verify", "depth", "--p", "5", "--r", "2", "--no-cache", "--emit", out.string()});
    CHECK(r.code == cli::exit_ok);
    REQUIRE(fs::exists(out));
    std::ifstream in(out);
    auto doc = nlohmann::json::parse(in);
    CHECK(doc["verdict"]["depth"] == 1);
    CHECK(doc["verdict"]["interval"] == nlohmann::json({1, 1}));
    fs::remove_all(dir);
}

}
