#include "claimcheck/cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <vector>

#include <json.hpp>

#include "claimcheck/digest.hpp"
#include "claimcheck/error.hpp"
#include "claimcheck/io.hpp"

namespace claimcheck {

using json = nlohmann::ordered_json;

std::string cache_key(std::string_view model_name, std::string_view prompt) {
    return framed_digest({model_name, prompt});
}

std::string resolve_cache_path(const std::string& fallback) {
    if (const char* env = std::getenv("CLAIMCHECK_CACHE"); env && *env) return env;
    return fallback;
}

namespace {

struct CacheLine {
    std::string key;
    std::string model_name;
    std::string response;
    std::string created_at;
};

std::vector<CacheLine> read_cache_lines(const std::string& path) {
    std::vector<CacheLine> lines;
    std::ifstream in(path, std::ios::binary);
    if (!in) return lines;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        try {
            auto j = json::parse(line);
            lines.push_back({j.at("key").get<std::string>(), j.value("model_name", std::string{}),
                             j.at("response").get<std::string>(), j.value("created_at", std::string{})});
        } catch (const json::exception& e) {
            throw Error(ErrorKind::CacheCorruption, path + ":" + std::to_string(n) + ": " + e.what());
        }
        if (lines.back().key.size() != 64)
            throw Error(ErrorKind::CacheCorruption, path + ":" + std::to_string(n) + ": bad key");
    }
    return lines;
}

std::string encode_line(std::string_view key, std::string_view model, std::string_view response,
                        std::string_view created_at) {
    json j;
    j["key"] = key;
    j["model_name"] = model;
    j["prompt_digest_preimage_omitted"] = true;
    j["response"] = response;
    j["created_at"] = created_at;
    return j.dump() + "\n";
}

}  // namespace

ResponseCache::ResponseCache(std::string path) : path_(std::move(path)) {
    if (path_.empty()) return;
    for (auto& l : read_cache_lines(path_)) entries_[std::move(l.key)] = std::move(l.response);
    fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error(ErrorKind::WriteFailure, "cannot open cache " + path_);
}

ResponseCache::~ResponseCache() {
    if (fd_ >= 0) ::close(fd_);
}

std::optional<std::string> ResponseCache::get(const std::string& key) const {
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    return std::nullopt;
}

void ResponseCache::put(const std::string& key, std::string_view model_name, std::string_view response) {
    std::lock_guard lock(mu_);
    if (fd_ >= 0) {
        const auto line = encode_line(key, model_name, response, utc_now());
        const auto written = ::write(fd_, line.data(), line.size());
        if (written != static_cast<ssize_t>(line.size()))
            throw Error(ErrorKind::WriteFailure, "cache append failed for " + path_);
    }
    entries_[key] = std::string(response);
}

std::size_t ResponseCache::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

std::size_t ResponseCache::compact(const std::string& path) {
    auto lines = read_cache_lines(path);
    // newest record per key survives, at the position of that record
    std::map<std::string, std::size_t> last;
    for (std::size_t i = 0; i < lines.size(); ++i) last[lines[i].key] = i;
    std::string out;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (last[lines[i].key] != i) continue;
        const auto& l = lines[i];
        out += encode_line(l.key, l.model_name, l.response, l.created_at);
        ++kept;
    }
    atomic_write_file(path, out);
    return kept;
}

}  // namespace claimcheck
