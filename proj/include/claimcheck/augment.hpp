#pragma once

#include <array>
#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "claimcheck/backends.hpp"
#include "claimcheck/cache.hpp"
#include "claimcheck/clock.hpp"
#include "claimcheck/corpus.hpp"

namespace claimcheck {

class Translator {
public:
    virtual ~Translator() = default;
    /// Stable identity recorded in provenance and cache keys.
    virtual std::string id() const = 0;
    /// Throws BackendFailure; transient failures are retried by the caller.
    virtual std::string translate(std::string_view text, Language source, Language target) = 0;
};

/// text -> "[<src>→<tgt>] " + text.
class MockTranslator final : public Translator {
public:
    std::string id() const override { return "mock"; }
    std::string translate(std::string_view text, Language source, Language target) override;
    std::size_t calls() const noexcept { return calls_.load(); }

private:
    std::atomic<std::size_t> calls_{0};
};

/// Generic JSON translation service: POST {"text","source","target"} to the
/// endpoint, read "translation" from the response.
class HttpTranslator final : public Translator {
public:
    explicit HttpTranslator(std::string endpoint_url,
                            std::chrono::milliseconds timeout = std::chrono::milliseconds(30'000));
    std::string id() const override { return "http-generic:" + url_; }
    std::string translate(std::string_view text, Language source, Language target) override;

private:
    std::string url_;
    std::string origin_;
    std::string path_;
    std::chrono::milliseconds timeout_;
};

/// Adapter by name: "mock" or "http-generic" (needs an endpoint).
std::unique_ptr<Translator> make_translator(std::string_view name, const std::optional<std::string>& endpoint);

struct TranslateOptions {
    int concurrency = 4;
    int max_retries = 3;
    Clock* clock = &SystemClock::instance();
    Clock::duration backoff_base{500};
    /// Responses are cached here when set, making remote reruns deterministic.
    ResponseCache* cache = nullptr;
};

/// Translates every text, keeping ids, labels and order. Tabs and line
/// breaks in translations become spaces. If any instance still fails after
/// retries the whole call throws TranslatorFailure (detail = instance id).
Corpus translate_corpus(const Corpus& corpus, Language target, Translator& translator,
                        const TranslateOptions& options = {});

/// Sidecar written next to a translated TSV.
std::string translation_sidecar_json(std::string_view source_file, Language source, Language target,
                                     std::string_view translator_id, std::string_view timestamp);

/// Three tweets in the target language shown to the model as style examples.
struct StyleTransferExemplars {
    std::array<std::string, 3> examples;

    /// Throws InvalidArgument if an example is empty.
    void validate() const;
};

inline constexpr std::string_view kStyleTransferTemplate = "style-transfer-v1";

/// Debate-to-tweet rephrasing prompt. An empty statement renders "()" and
/// logs a warning.
std::string build_style_transfer_prompt(std::string_view text, const StyleTransferExemplars& exemplars,
                                        std::string_view language_name = "Arabic");

/// Rewrites every instance through a chat backend using the style-transfer
/// prompt; raw responses (line breaks flattened) become the new texts.
Corpus style_transfer_corpus(const Corpus& corpus, const StyleTransferExemplars& exemplars,
                             std::string_view language_name, Backend& backend, const BackendConfig& config,
                             ResponseCache& cache, const BatchOptions& options = {});

}  // namespace claimcheck
