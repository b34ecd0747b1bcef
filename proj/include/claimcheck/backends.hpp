#pragma once

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimcheck/cache.hpp"
#include "claimcheck/clock.hpp"
#include "claimcheck/corpus.hpp"
#include "claimcheck/prompt.hpp"
#include "claimcheck/retry.hpp"

namespace claimcheck {

enum class BackendKind { remote, mock };

std::string_view to_string(BackendKind kind) noexcept;
BackendKind backend_kind_from_string(std::string_view s);

/// One row of the mock backend's rule table. The first rule whose pattern
/// matches the instance text decides the raw response.
struct MockRule {
    enum class Match { contains, regex };
    Match match = Match::contains;
    std::string pattern;
    std::string response;

    friend bool operator==(const MockRule&, const MockRule&) = default;
};

struct BackendConfig {
    BackendKind kind = BackendKind::mock;
    std::optional<std::string> endpoint_url;
    std::string model_name = "mock";
    double temperature = 0.0;
    int max_output_tokens = 8;
    std::chrono::milliseconds request_timeout{30'000};
    int max_retries = 3;
    int max_in_flight = 4;
    int requests_per_minute = 60;
    std::vector<MockRule> mock_rules;
    std::string mock_default_response = "No";

    /// Throws InvalidConfig on violated invariants (remote needs an endpoint,
    /// mock forbids one, positive limits, temperature >= 0).
    void validate() const;

    /// Digest of the fields that determine responses (kind, endpoint, model,
    /// generation parameters, mock rules). Concurrency and retry knobs are
    /// excluded.
    std::string fingerprint() const;

    friend bool operator==(const BackendConfig&, const BackendConfig&) = default;
};

struct Prediction {
    std::string instance_id;
    Label label = Label::No;
    std::string raw_response;
    bool from_cache = false;
    bool flagged_fallback = false;
    std::uint64_t latency_ms = 0;

    friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct PredictionSet {
    std::string backend_fingerprint;
    std::string corpus_fingerprint;
    std::vector<Prediction> predictions;

    Labeling labels() const;
};

/// Digest of a corpus' language, split and canonical TSV bytes.
std::string corpus_fingerprint(const Corpus& corpus);

struct CompletionRequest {
    std::string_view prompt;
    /// The instance text the prompt was built from. Remote backends ignore it;
    /// the mock matches its rules against it.
    std::string_view subject;
};

class Backend {
public:
    virtual ~Backend() = default;
    /// Raw model output. Throws BackendFailure.
    virtual std::string complete(const CompletionRequest& request) = 0;
    /// Whether calls count against requests_per_minute.
    virtual bool rate_limited() const { return false; }
};

/// Rule-table backend; deterministic and offline.
class MockBackend final : public Backend {
public:
    MockBackend(std::vector<MockRule> rules, std::string default_response);
    explicit MockBackend(const BackendConfig& config)
        : MockBackend(config.mock_rules, config.mock_default_response) {}

    std::string complete(const CompletionRequest& request) override;
    /// Number of complete() calls so far.
    std::size_t calls() const noexcept { return calls_.load(); }

private:
    struct CompiledRule {
        MockRule rule;
        std::optional<std::regex> re;
    };
    std::vector<CompiledRule> rules_;
    std::string default_response_;
    std::atomic<std::size_t> calls_{0};
};

/// Chat-completion client: POST {"model","messages":[{"role":"user",...}],
/// "temperature","max_tokens"} to endpoint_url, read
/// choices[0].message.content. Sends "Authorization: Bearer <key>" when a key
/// is given.
class RemoteBackend final : public Backend {
public:
    RemoteBackend(BackendConfig config, std::string api_key);

    std::string complete(const CompletionRequest& request) override;
    bool rate_limited() const override { return true; }

    /// Builds the JSON request body for a prompt.
    std::string request_body(std::string_view prompt) const;

private:
    BackendConfig config_;
    std::string api_key_;
    std::string origin_;
    std::string path_;
};

/// Split "scheme://host[:port]/path" into origin and path ("/" when absent).
/// Throws InvalidConfig for anything else.
std::pair<std::string, std::string> split_url(std::string_view url);

/// Mock or remote backend for the config. The remote key comes from
/// $CLAIMCHECK_API_KEY.
std::unique_ptr<Backend> make_backend(const BackendConfig& config);

struct BatchOptions {
    Clock* clock = &SystemClock::instance();
    Clock::duration backoff_base{500};
};

struct BatchStats {
    std::size_t cache_hits = 0;
    std::size_t backend_calls = 0;
};

struct CompletionJob {
    std::string prompt;
    std::string subject;
    /// Identifier carried into error messages.
    std::string tag;
};

struct Completion {
    std::string response;
    bool from_cache = false;
    std::uint64_t latency_ms = 0;
};

/// Raw-response engine shared by prediction and style transfer. Cache is
/// consulted first (key = cache_key(model_name, prompt)); misses go to the
/// backend with retries, at most max_in_flight at once and, for rate-limited
/// backends, at most requests_per_minute per 60 s. Fresh responses are cached
/// immediately. Output order matches job order.
std::vector<Completion> complete_batch(std::span<const CompletionJob> jobs, Backend& backend,
                                       const BackendConfig& config, ResponseCache& cache,
                                       const BatchOptions& options = {}, BatchStats* stats = nullptr);

/// One prediction per instance, in corpus order. Throws EmptyCorpus on an
/// empty corpus, BackendUnavailable, or UnparseableResponse (strict parsing
/// without a fallback label).
PredictionSet predict_batch(const Corpus& corpus, Backend& backend, const BackendConfig& config,
                            const PromptConfig& prompt, ResponseCache& cache,
                            const BatchOptions& options = {}, BatchStats* stats = nullptr);

/// Same, with the backend built from the config.
PredictionSet predict_batch(const Corpus& corpus, const BackendConfig& config, const PromptConfig& prompt,
                            ResponseCache& cache);

}  // namespace claimcheck
