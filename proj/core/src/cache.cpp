#include "cohomoforge/cache.hpp"

#include "cohomoforge/digest.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace cohomoforge {

namespace fs = std::filesystem;

namespace {

constexpr const char* entry_suffix = ".entry";

std::string header_for(const std::string& payload) {
    return std::string(cache_format) + " " + sha256_hex(payload) + "\n";
}

enum class EntryState { ok, corrupt, stale };

EntryState parse_entry(const std::string& raw, std::string& payload) {
    auto nl = raw.find('\n');
    if (nl == std::string::npos)
        return EntryState::corrupt;
    std::istringstream head(raw.substr(0, nl));
    std::string format, sum;
    head >> format >> sum;
    if (format.rfind("cohomoforge-cache.", 0) != 0)
        return EntryState::corrupt;
    if (format != cache_format)
        return EntryState::stale;
    payload = raw.substr(nl + 1);
    return sha256_hex(payload) == sum ? EntryState::ok : EntryState::corrupt;
}

std::optional<std::string> read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_name() {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    return ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++) + "." + std::to_string(rd());
}

} // namespace

Cache::Cache(fs::path root) : root_(std::move(root)) {}

fs::path Cache::default_root() {
    if (const char* env = std::getenv("COHOMOFORGE_CACHE"); env && *env)
        return env;
    return ".cohomoforge-cache";
}

std::string Cache::make_key(const std::string& schema, const std::string& params, const std::string& stage) {
    return sha256_hex(std::string(cache_format) + "\n" + schema + "\n" + params + "\n" + stage);
}

fs::path Cache::entry_path(const std::string& key) const {
    return root_ / (key + entry_suffix);
}

std::optional<std::string> Cache::load(const std::string& key, std::vector<std::string>* warnings) const {
    const fs::path path = entry_path(key);
    auto raw = read_file(path);
    if (!raw)
        return std::nullopt;
    std::string payload;
    switch (parse_entry(*raw, payload)) {
    case EntryState::ok:
        return payload;
    case EntryState::stale:
        return std::nullopt;
    case EntryState::corrupt:
        if (warnings)
            warnings->push_back("cache entry " + path.string() + " is corrupt; recomputing");
        std::error_code ec;
        fs::remove(path, ec);
        return std::nullopt;
    }
    return std::nullopt;
}

bool Cache::store(const std::string& key, const std::string& payload) const {
    fs::create_directories(root_);
    const fs::path tmp = root_ / (key + temp_name());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write cache file " + tmp.string());
        out << header_for(payload) << payload;
        out.flush();
        if (!out)
            throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::error_code ec;
    fs::create_hard_link(tmp, entry_path(key), ec);
    std::error_code ignore;
    fs::remove(tmp, ignore);
    if (ec == std::errc::file_exists)
        return false;
    if (ec)
        throw std::runtime_error("cannot publish cache entry " + entry_path(key).string() + ": " + ec.message());
    return true;
}

std::pair<std::string, bool> Cache::get_or_compute(const std::string& key, const std::function<std::string()>& compute,
    std::vector<std::string>* warnings) const {
    if (auto hit = load(key, warnings))
        return {*hit, true};
    std::string payload = compute();
    if (!store(key, payload))
        if (auto other = load(key, warnings))
            return {*other, false};
    return {payload, false};
}

CacheGcResult Cache::gc() const {
    CacheGcResult res;
    std::error_code ec;
    if (!fs::exists(root_, ec))
        return res;
    for (const auto& ent : fs::directory_iterator(root_)) {
        const std::string name = ent.path().filename().string();
        if (name.find(".tmp.") != std::string::npos) {
            // leave temp files of writers that may still be running
            auto age = fs::file_time_type::clock::now() - fs::last_write_time(ent.path(), ec);
            if (!ec && age > std::chrono::minutes(10)) {
                fs::remove(ent.path(), ec);
                ++res.removed_temp;
            }
            continue;
        }
        if (ent.path().extension() != entry_suffix)
            continue;
        auto raw = read_file(ent.path());
        std::string payload;
        EntryState st = raw ? parse_entry(*raw, payload) : EntryState::corrupt;
        if (st == EntryState::ok) {
            ++res.kept;
        } else {
            fs::remove(ent.path(), ec);
            ++(st == EntryState::stale ? res.removed_stale : res.removed_corrupt);
        }
    }
    return res;
}

} // namespace cohomoforge
