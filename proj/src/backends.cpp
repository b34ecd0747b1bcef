#include "claimcheck/backends.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "claimcheck/config_json.hpp"
#include "claimcheck/digest.hpp"
#include "claimcheck/error.hpp"

namespace claimcheck {

std::string_view to_string(BackendKind kind) noexcept { return kind == BackendKind::remote ? "remote" : "mock"; }

BackendKind backend_kind_from_string(std::string_view s) {
    if (s == "remote") return BackendKind::remote;
    if (s == "mock") return BackendKind::mock;
    throw Error(ErrorKind::InvalidConfig, "backend kind must be remote or mock, got '" + std::string(s) + "'");
}

void BackendConfig::validate() const {
    if (kind == BackendKind::remote && (!endpoint_url || endpoint_url->empty()))
        throw Error(ErrorKind::InvalidConfig, "remote backend requires endpoint_url");
    if (kind == BackendKind::mock && endpoint_url)
        throw Error(ErrorKind::InvalidConfig, "mock backend must not set endpoint_url");
    if (kind == BackendKind::remote) split_url(*endpoint_url);
    if (model_name.empty()) throw Error(ErrorKind::InvalidConfig, "model_name must be non-empty");
    if (!(temperature >= 0.0)) throw Error(ErrorKind::InvalidConfig, "temperature must be >= 0");
    if (max_output_tokens <= 0) throw Error(ErrorKind::InvalidConfig, "max_output_tokens must be positive");
    if (request_timeout.count() <= 0) throw Error(ErrorKind::InvalidConfig, "request_timeout must be positive");
    if (max_retries < 0 || max_retries > 10) throw Error(ErrorKind::InvalidConfig, "max_retries must be in [0, 10]");
    if (max_in_flight <= 0) throw Error(ErrorKind::InvalidConfig, "max_in_flight must be positive");
    if (requests_per_minute <= 0) throw Error(ErrorKind::InvalidConfig, "requests_per_minute must be positive");
    for (const auto& r : mock_rules) {
        if (r.pattern.empty()) throw Error(ErrorKind::InvalidConfig, "mock rule pattern must be non-empty");
        if (r.match == MockRule::Match::regex) {
            try {
                std::regex re(r.pattern);
            } catch (const std::regex_error&) {
                throw Error(ErrorKind::InvalidConfig, "bad mock rule regex '" + r.pattern + "'");
            }
        }
    }
}

std::string BackendConfig::fingerprint() const {
    nlohmann::json j = *this;
    for (const char* key : {"request_timeout_ms", "max_retries", "max_in_flight", "requests_per_minute"})
        j.erase(key);
    return sha256_hex(j.dump());
}

Labeling PredictionSet::labels() const {
    Labeling out;
    for (const auto& p : predictions) out.emplace(p.instance_id, p.label);
    return out;
}

std::string corpus_fingerprint(const Corpus& corpus) {
    return framed_digest({to_string(corpus.language()), to_string(corpus.split()), serialize_tsv(corpus)});
}

namespace {

bool icontains(std::string_view hay, std::string_view needle) {
    auto it = std::search(hay.begin(), hay.end(), needle.begin(), needle.end(), [](char a, char b) {
        return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
    });
    return it != hay.end();
}

}  // namespace

MockBackend::MockBackend(std::vector<MockRule> rules, std::string default_response)
    : default_response_(std::move(default_response)) {
    for (auto& r : rules) {
        CompiledRule c{std::move(r), std::nullopt};
        if (c.rule.match == MockRule::Match::regex) c.re.emplace(c.rule.pattern);
        rules_.push_back(std::move(c));
    }
}

std::string MockBackend::complete(const CompletionRequest& request) {
    ++calls_;
    const std::string subject(request.subject);
    for (const auto& r : rules_) {
        const bool hit = r.re ? std::regex_search(subject, *r.re) : icontains(subject, r.rule.pattern);
        if (hit) return r.rule.response;
    }
    return default_response_;
}

std::unique_ptr<Backend> make_backend(const BackendConfig& config) {
    config.validate();
    if (config.kind == BackendKind::mock) return std::make_unique<MockBackend>(config);
    const char* key = std::getenv("CLAIMCHECK_API_KEY");
    return std::make_unique<RemoteBackend>(config, key ? key : "");
}

std::vector<Completion> complete_batch(std::span<const CompletionJob> jobs, Backend& backend,
                                       const BackendConfig& config, ResponseCache& cache,
                                       const BatchOptions& options, BatchStats* stats) {
    Clock& clock = *options.clock;
    std::vector<Completion> results(jobs.size());
    std::optional<RateLimiter> limiter;
    if (backend.rate_limited()) limiter.emplace(config.requests_per_minute, clock);
    const RetryPolicy policy{config.max_retries, options.backoff_base};

    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::atomic<std::size_t> hits{0};
    std::atomic<std::size_t> calls{0};
    std::mutex err_mu;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            if (abort.load()) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const auto& job = jobs[i];
            try {
                const auto start = clock.now();
                const auto key = cache_key(config.model_name, job.prompt);
                if (auto cached = cache.get(key)) {
                    results[i] = {std::move(*cached), true, 0};
                    ++hits;
                    continue;
                }
                std::string response;
                try {
                    response = call_with_retries(
                        [&] {
                            if (limiter) limiter->acquire();
                            ++calls;
                            return backend.complete({job.prompt, job.subject});
                        },
                        policy, clock);
                } catch (const BackendFailure& e) {
                    throw Error(ErrorKind::BackendUnavailable,
                                "request for '" + job.tag + "' failed: " + e.what())
                        .with_detail(job.tag);
                }
                cache.put(key, config.model_name, response);
                const auto elapsed = clock.now() - start;
                results[i] = {std::move(response), false,
                              static_cast<std::uint64_t>(std::max<long long>(0, elapsed.count()))};
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                abort = true;
                return;
            }
        }
    };

    const auto n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(1, config.max_in_flight)), jobs.size());
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }
    if (stats) {
        stats->cache_hits += hits.load();
        stats->backend_calls += calls.load();
    }
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

PredictionSet predict_batch(const Corpus& corpus, Backend& backend, const BackendConfig& config,
                            const PromptConfig& prompt, ResponseCache& cache, const BatchOptions& options,
                            BatchStats* stats) {
    if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot predict on an empty corpus");
    std::vector<CompletionJob> jobs;
    jobs.reserve(corpus.size());
    for (const auto& inst : corpus.instances())
        jobs.push_back({build_checkworthy_prompt(inst.text, prompt), inst.text, inst.id});

    auto completions = complete_batch(jobs, backend, config, cache, options, stats);

    PredictionSet set;
    set.backend_fingerprint = config.fingerprint();
    set.corpus_fingerprint = corpus_fingerprint(corpus);
    set.predictions.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto& c = completions[i];
        const auto& id = corpus.instances()[i].id;
        ParsedLabel parsed{};
        try {
            parsed = parse_label(c.response, prompt);
        } catch (const Error& e) {
            throw Error(ErrorKind::UnparseableResponse, "instance '" + id + "': " + e.what())
                .with_detail(c.response);
        }
        set.predictions.push_back({id, parsed.label, std::move(c.response), c.from_cache, parsed.fallback_used,
                                   c.latency_ms});
    }
    return set;
}

PredictionSet predict_batch(const Corpus& corpus, const BackendConfig& config, const PromptConfig& prompt,
                            ResponseCache& cache) {
    auto backend = make_backend(config);
    return predict_batch(corpus, *backend, config, prompt, cache);
}

}  // namespace claimcheck
