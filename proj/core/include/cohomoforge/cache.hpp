#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cohomoforge {

inline constexpr const char* cache_format = "cohomoforge-cache.v1";

struct CacheGcResult {
    std::size_t kept = 0;
    std::size_t removed_corrupt = 0;
    std::size_t removed_stale = 0; // other format versions
    std::size_t removed_temp = 0;
};

// Write-once content store. Each entry carries a checksum of its payload; a
// corrupt entry is reported, removed and treated as a miss.
class Cache {
public:
    explicit Cache(std::filesystem::path root);

    // COHOMOFORGE_CACHE, else .cohomoforge-cache
    [[nodiscard]] static std::filesystem::path default_root();
    [[nodiscard]] static std::string make_key(const std::string& schema, const std::string& params,
        const std::string& stage);

    [[nodiscard]] const std::filesystem::path& root() const { return root_; }
    [[nodiscard]] std::filesystem::path entry_path(const std::string& key) const;

    [[nodiscard]] std::optional<std::string> load(const std::string& key, std::vector<std::string>* warnings = nullptr) const;
    // false when another writer published the key first
    bool store(const std::string& key, const std::string& payload) const;
    // payload and whether it came from the cache
    std::pair<std::string, bool> get_or_compute(const std::string& key, const std::function<std::string()>& compute,
        std::vector<std::string>* warnings = nullptr) const;

    CacheGcResult gc() const;

private:
    std::filesystem::path root_;
};

} // namespace cohomoforge
