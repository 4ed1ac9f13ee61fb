#include "cohomoforge/cache.hpp"
#include "cohomoforge/digest.hpp"

#include <doctest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include <unistd.h>

using namespace cohomoforge;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("cohomoforge-test-" + std::to_string(::getpid()) + "-"
                                               + std::to_string(counter()++));
        fs::remove_all(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static std::atomic<int>& counter() {
        static std::atomic<int> c{0};
        return c;
    }
};

} // namespace

TEST_SUITE("cache") {

TEST_CASE("sha256 known answers") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("keys depend on every component") {
    const std::string k = Cache::make_key("report.v1", "p=5;r=2", "verify_depth");
    CHECK(k == Cache::make_key("report.v1", "p=5;r=2", "verify_depth"));
    CHECK(k != Cache::make_key("report.v2", "p=5;r=2", "verify_depth"));
    CHECK(k != Cache::make_key("report.v1", "p=5;r=3", "verify_depth"));
    CHECK(k != Cache::make_key("report.v1", "p=5;r=2", "eta"));
}

TEST_CASE("store and load round trip") {
    TempDir dir;
    Cache c(dir.path);
    const std::string key = Cache::make_key("s", "p", "x");
    CHECK_FALSE(c.load(key).has_value());
    CHECK(c.store(key, "{\"a\":1}\n"));
    CHECK(c.load(key) == std::optional<std::string>("{\"a\":1}\n"));
    // write once
    CHECK_FALSE(c.store(key, "other"));
    CHECK(c.load(key) == std::optional<std::string>("{\"a\":1}\n"));
    int calls = 0;
    auto [payload, hit] = c.get_or_compute(key, [&] { ++calls; return std::string("fresh"); });
    CHECK(hit);
    CHECK(calls == 0);
    CHECK(payload == "{\"a\":1}\n");
}

TEST_CASE("corrupt entries are detected and removed") {
    TempDir dir;
    Cache c(dir.path);
    const std::string key = Cache::make_key("s", "p", "corrupt");
    REQUIRE(c.store(key, "payload that will be damaged"));
    {
        std::fstream f(c.entry_path(key), std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(-3, std::ios::end);
        f << "XXX";
    }
    std::vector<std::string> warnings;
    CHECK_FALSE(c.load(key, &warnings).has_value());
    CHECK(warnings.size() == 1);
    CHECK_FALSE(fs::exists(c.entry_path(key)));
    auto [payload, hit] = c.get_or_compute(key, [] { return std::string("recomputed"); });
    CHECK_FALSE(hit);
    CHECK(payload == "recomputed");
    CHECK(c.load(key) == std::optional<std::string>("recomputed"));
}

TEST_CASE("concurrent writers have one winner") {
    TempDir dir;
    Cache c(dir.path);
    const std::string key = Cache::make_key("s", "p", "race");
    std::atomic<int> winners{0};
    std::vector<std::thread> threads;
    for (int i = 0; i < 16; ++i)
        threads.emplace_back([&, i] {
            if (c.store(key, "writer " + std::to_string(i)))
                ++winners;
        });
    for (auto& t : threads)
        t.join();
    CHECK(winners == 1);
    auto v = c.load(key);
    REQUIRE(v.has_value());
    CHECK(v->rfind("writer ", 0) == 0);
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(dir.path))
        files += e.is_regular_file() ? 1 : 0;
    CHECK(files == 1);
}

TEST_CASE("garbage collection") {
    TempDir dir;
    Cache c(dir.path);
    const std::string good = Cache::make_key("s", "p", "good");
    const std::string bad = Cache::make_key("s", "p", "bad");
    REQUIRE(c.store(good, "fine"));
    REQUIRE(c.store(bad, "to be broken"));
    {
        std::ofstream f(c.entry_path(bad), std::ios::trunc);
        f << "cohomoforge-cache.v1 0000\nbroken";
    }
    const std::string stale = Cache::make_key("s", "p", "stale");
    fs::create_directories(c.entry_path(stale).parent_path());
    {
        std::ofstream f(c.entry_path(stale));
        f << "cohomoforge-cache.v0 abc\nold";
    }
    CacheGcResult r = c.gc();
    CHECK(r.kept == 1);
    CHECK(r.removed_corrupt == 1);
    CHECK(r.removed_stale == 1);
    CHECK(c.load(good).has_value());
}

}
