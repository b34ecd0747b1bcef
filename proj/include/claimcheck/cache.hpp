#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace claimcheck {

/// Digest identifying one (model, prompt) pair: hex SHA-256 over the two
/// length-framed fields. Always 64 characters.
std::string cache_key(std::string_view model_name, std::string_view prompt);

/// Response cache backed by an append-only JSON-lines file.
///
/// Each record is {"key","model_name","prompt_digest_preimage_omitted",
/// "response","created_at"}; prompts themselves are never stored. Later
/// records win on duplicate keys. An empty path gives a memory-only cache.
/// Safe for concurrent use within one process; every put() appends one line
/// with a single write(2) on an O_APPEND descriptor.
class ResponseCache {
public:
    ResponseCache() = default;
    /// Loads existing records. Throws CacheCorruption on an unreadable line.
    explicit ResponseCache(std::string path);
    ~ResponseCache();

    ResponseCache(const ResponseCache&) = delete;
    ResponseCache& operator=(const ResponseCache&) = delete;

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, std::string_view model_name, std::string_view response);

    std::size_t size() const;
    const std::string& path() const noexcept { return path_; }

    /// Rewrites the file keeping the newest record per key (atomic rename).
    /// Offline operation: no other process may be appending.
    static std::size_t compact(const std::string& path);

private:
    std::string path_;
    int fd_ = -1;
    mutable std::mutex mu_;
    std::unordered_map<std::string, std::string> entries_;
};

/// $CLAIMCHECK_CACHE when set, otherwise `fallback`.
std::string resolve_cache_path(const std::string& fallback);

}  // namespace claimcheck
