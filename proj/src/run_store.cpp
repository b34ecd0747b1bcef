#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>

#include "claimcheck/error.hpp"
#include "claimcheck/experiment.hpp"
#include "claimcheck/io.hpp"
#include "claimcheck/labeling_io.hpp"

namespace claimcheck {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

long long to_ms(std::chrono::system_clock::time_point t) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

std::chrono::system_clock::time_point from_ms(long long ms) {
    return std::chrono::system_clock::time_point(std::chrono::milliseconds(ms));
}

std::string slug(const std::string& name) {
    std::string s;
    for (char c : name) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '.' || c == '_')
            s += static_cast<char>(std::tolower(u));
        else if (!s.empty() && s.back() != '-')
            s += '-';
    }
    while (!s.empty() && s.back() == '-') s.pop_back();
    if (s.size() > 48) s.resize(48);
    return s.empty() ? "run" : s;
}

/// Advisory lock on a sidecar file, released on destruction.
class FileLock {
public:
    explicit FileLock(const std::string& path) : fd_(::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644)) {
        if (fd_ < 0) throw Error(ErrorKind::WriteFailure, "cannot open lock " + path);
        ::flock(fd_, LOCK_EX);
    }
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_;
};

}  // namespace

ojson record_to_json(const RunRecord& r) {
    ojson j;
    j["run_id"] = r.run_id;
    j["name"] = r.name;
    j["config_fingerprint"] = r.config_fingerprint;
    j["status"] = r.status == RunStatus::ok ? "ok" : "failed";
    j["started"] = format_utc(r.started);
    j["finished"] = format_utc(r.finished);
    j["started_ms"] = to_ms(r.started);
    j["finished_ms"] = to_ms(r.finished);
    ojson metrics = ojson::object();
    for (const auto& [split, m] : r.metrics_by_split) metrics[std::string(to_string(split))] = metrics_to_json(m);
    j["metrics_by_split"] = metrics;
    ojson cms = ojson::object();
    for (const auto& [split, cm] : r.confusion_by_split) cms[std::string(to_string(split))] = confusion_to_json(cm);
    j["confusion_by_split"] = cms;
    ojson preds = ojson::object();
    for (const auto& [split, p] : r.prediction_paths) preds[std::string(to_string(split))] = p;
    j["prediction_paths"] = preds;
    j["artifact_paths"] = r.artifact_paths;
    j["errors"] = r.errors;
    j["cache_hits"] = r.cache_hits;
    j["backend_calls"] = r.backend_calls;
    return j;
}

RunRecord record_from_json(const nlohmann::json& j) {
    try {
        RunRecord r;
        r.run_id = j.at("run_id").get<std::string>();
        r.name = j.value("name", std::string{});
        r.config_fingerprint = j.at("config_fingerprint").get<std::string>();
        r.status = j.at("status").get<std::string>() == "ok" ? RunStatus::ok : RunStatus::failed;
        r.started = from_ms(j.at("started_ms").get<long long>());
        r.finished = from_ms(j.at("finished_ms").get<long long>());
        for (const auto& [split, m] : j.at("metrics_by_split").items())
            r.metrics_by_split[split_from_string(split)] = metrics_from_json(m);
        if (j.contains("confusion_by_split"))
            for (const auto& [split, cm] : j.at("confusion_by_split").items())
                r.confusion_by_split[split_from_string(split)] = {cm.at("tp"), cm.at("fp"), cm.at("fn"), cm.at("tn")};
        for (const auto& [split, p] : j.at("prediction_paths").items())
            r.prediction_paths[split_from_string(split)] = p.get<std::string>();
        if (j.contains("artifact_paths"))
            r.artifact_paths = j.at("artifact_paths").get<std::map<std::string, std::string>>();
        r.errors = j.value("errors", std::vector<std::string>{});
        r.cache_hits = j.value("cache_hits", std::size_t{0});
        r.backend_calls = j.value("backend_calls", std::size_t{0});
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed run record: ") + e.what());
    }
}

RunStore::RunStore(std::string root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(runs_dir(), ec);
    if (ec) throw Error(ErrorKind::WriteFailure, "cannot create " + runs_dir());
}

std::string RunStore::runs_dir() const { return (fs::path(root_) / "runs").string(); }

std::string RunStore::run_dir(const std::string& run_id) const { return (fs::path(runs_dir()) / run_id).string(); }

std::string RunStore::reserve_run_id(const std::string& name) {
    const auto base = slug(name);
    for (int n = 1;; ++n) {
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "-%04d", n);
        const auto id = base + suffix;
        std::error_code ec;
        if (fs::create_directory(run_dir(id), ec)) return id;
        if (ec) throw Error(ErrorKind::WriteFailure, "cannot create run directory for " + id);
    }
}

void RunStore::save(RunRecord& record) {
    record.dir = run_dir(record.run_id);
    fs::create_directories(record.dir);
    atomic_write_file((fs::path(record.dir) / "record.json").string(), record_to_json(record).dump(2) + "\n");
    update_index(record);
}

void RunStore::update_index(const RunRecord& record) {
    const auto index_path = (fs::path(runs_dir()) / "index.json").string();
    FileLock lock(index_path + ".lock");
    ojson index = ojson::array();
    if (fs::exists(index_path)) {
        try {
            index = ojson::parse(read_file(index_path));
        } catch (const nlohmann::json::exception&) {
            index = ojson::array();
        }
    }
    ojson entry{{"run_id", record.run_id},
                {"name", record.name},
                {"status", record.status == RunStatus::ok ? "ok" : "failed"},
                {"config_fingerprint", record.config_fingerprint},
                {"started", format_utc(record.started)}};
    auto it = std::find_if(index.begin(), index.end(), [&](const auto& e) { return e.at("run_id") == record.run_id; });
    if (it != index.end())
        *it = entry;
    else
        index.push_back(entry);
    atomic_write_file(index_path, index.dump(2) + "\n");
}

RunRecord RunStore::load(const std::string& run_id) const {
    const auto path = (fs::path(run_dir(run_id)) / "record.json").string();
    if (!fs::exists(path)) throw Error(ErrorKind::Io, "no record for run '" + run_id + "'");
    auto r = record_from_json(nlohmann::json::parse(read_file(path)));
    r.dir = run_dir(run_id);
    return r;
}

std::vector<RunRecord> RunStore::list() const {
    std::vector<std::string> ids;
    for (const auto& entry : fs::directory_iterator(runs_dir()))
        if (entry.is_directory() && fs::exists(entry.path() / "record.json"))
            ids.push_back(entry.path().filename().string());
    std::sort(ids.begin(), ids.end());
    std::vector<RunRecord> out;
    for (const auto& id : ids) out.push_back(load(id));
    return out;
}

PredictionSet load_run_predictions(const RunRecord& record, Split split) {
    auto it = record.prediction_paths.find(split);
    if (it == record.prediction_paths.end())
        throw Error(ErrorKind::MissingSplit, "run '" + record.run_id + "' has no predictions for " +
                                                 std::string(to_string(split)));
    const auto path = fs::path(it->second).is_absolute() ? fs::path(it->second) : fs::path(record.dir) / it->second;
    return parse_predictions(read_file(path.string()));
}

}  // namespace claimcheck
