#include "claimcheck/augment.hpp"

#include <httplib.h>

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "claimcheck/error.hpp"
#include "claimcheck/retry.hpp"
#include "claimcheck/template.hpp"

namespace claimcheck {

namespace {

std::string flatten(std::string s) {
    for (auto& c : s)
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    const auto first = s.find_first_not_of(' ');
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(' ');
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string MockTranslator::translate(std::string_view text, Language source, Language target) {
    ++calls_;
    std::string out = "[";
    out += to_string(source);
    out += "→";
    out += to_string(target);
    out += "] ";
    out += text;
    return out;
}

HttpTranslator::HttpTranslator(std::string endpoint_url, std::chrono::milliseconds timeout)
    : url_(std::move(endpoint_url)), timeout_(timeout) {
    std::tie(origin_, path_) = split_url(url_);
}

std::string HttpTranslator::translate(std::string_view text, Language source, Language target) {
    httplib::Client client(origin_);
    const auto t = std::chrono::duration_cast<std::chrono::microseconds>(timeout_);
    client.set_connection_timeout(t);
    client.set_read_timeout(t);
    nlohmann::ordered_json body{{"text", text}, {"source", to_string(source)}, {"target", to_string(target)}};
    auto res = client.Post(path_, body.dump(), "application/json");
    if (!res) throw BackendFailure("transport error: " + httplib::to_string(res.error()), true);
    if (res->status == 429 || res->status >= 500) throw BackendFailure("HTTP " + std::to_string(res->status), true);
    if (res->status < 200 || res->status >= 300) throw BackendFailure("HTTP " + std::to_string(res->status), false);
    try {
        return nlohmann::json::parse(res->body).at("translation").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw BackendFailure(std::string("malformed translation response: ") + e.what(), false);
    }
}

std::unique_ptr<Translator> make_translator(std::string_view name, const std::optional<std::string>& endpoint) {
    if (name == "mock") return std::make_unique<MockTranslator>();
    if (name == "http-generic") {
        if (!endpoint) throw Error(ErrorKind::InvalidConfig, "http-generic translator needs an endpoint");
        return std::make_unique<HttpTranslator>(*endpoint);
    }
    throw Error(ErrorKind::InvalidConfig, "unknown translator '" + std::string(name) + "'");
}

Corpus translate_corpus(const Corpus& corpus, Language target, Translator& translator,
                        const TranslateOptions& options) {
    if (corpus.language() == target)
        throw Error(ErrorKind::InvalidArgument, "corpus is already in " + std::string(to_string(target)));
    const Language source = corpus.language();
    const auto& src = corpus.instances();
    const std::string model = "translate|" + translator.id() + "|" + std::string(to_string(source)) + "|" +
                              std::string(to_string(target));
    const RetryPolicy policy{options.max_retries, options.backoff_base};

    std::vector<std::string> texts(src.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::mutex err_mu;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            if (abort.load()) return;
            const auto i = next.fetch_add(1);
            if (i >= src.size()) return;
            try {
                const auto key = cache_key(model, src[i].text);
                if (options.cache) {
                    if (auto hit = options.cache->get(key)) {
                        texts[i] = std::move(*hit);
                        continue;
                    }
                }
                std::string out;
                try {
                    out = call_with_retries([&] { return translator.translate(src[i].text, source, target); },
                                            policy, *options.clock);
                } catch (const BackendFailure& e) {
                    throw Error(ErrorKind::TranslatorFailure, "instance '" + src[i].id + "': " + e.what())
                        .with_detail(src[i].id);
                }
                out = flatten(std::move(out));
                if (out.empty())
                    throw Error(ErrorKind::TranslatorFailure, "instance '" + src[i].id + "': empty translation")
                        .with_detail(src[i].id);
                if (options.cache) options.cache->put(key, model, out);
                texts[i] = std::move(out);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                abort = true;
                return;
            }
        }
    };

    const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, options.concurrency)), src.size());
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
    }
    if (first_error) std::rethrow_exception(first_error);

    std::vector<LabeledInstance> out = src;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].text = std::move(texts[i]);
        out[i].language = target;
    }
    std::string prov = corpus.provenance();
    if (!prov.empty()) prov += "; ";
    prov += "translate(" + std::string(to_string(source)) + "->" + std::string(to_string(target)) + ", " +
            translator.id() + ")";
    return Corpus::make(target, corpus.split(), std::move(out), std::move(prov));
}

std::string translation_sidecar_json(std::string_view source_file, Language source, Language target,
                                     std::string_view translator_id, std::string_view timestamp) {
    nlohmann::ordered_json j{{"source_file", source_file},
                             {"source_lang", to_string(source)},
                             {"target_lang", to_string(target)},
                             {"translator", translator_id},
                             {"timestamp", timestamp}};
    return j.dump(2) + "\n";
}

void StyleTransferExemplars::validate() const {
    for (const auto& e : examples)
        if (e.empty()) throw Error(ErrorKind::InvalidArgument, "style-transfer exemplars must be non-empty");
}

std::string build_style_transfer_prompt(std::string_view text, const StyleTransferExemplars& exemplars,
                                        std::string_view language_name) {
    exemplars.validate();
    if (text.empty()) spdlog::warn("style-transfer prompt built for an empty statement");
    return render_template(load_template(kStyleTransferTemplate), {{"lang", std::string(language_name)},
                                                                   {"text", std::string(text)},
                                                                   {"ex1", exemplars.examples[0]},
                                                                   {"ex2", exemplars.examples[1]},
                                                                   {"ex3", exemplars.examples[2]}});
}

Corpus style_transfer_corpus(const Corpus& corpus, const StyleTransferExemplars& exemplars,
                             std::string_view language_name, Backend& backend, const BackendConfig& config,
                             ResponseCache& cache, const BatchOptions& options) {
    std::vector<CompletionJob> jobs;
    jobs.reserve(corpus.size());
    for (const auto& inst : corpus.instances())
        jobs.push_back({build_style_transfer_prompt(inst.text, exemplars, language_name), inst.text, inst.id});
    auto completions = complete_batch(jobs, backend, config, cache, options);

    std::vector<LabeledInstance> out = corpus.instances();
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto text = flatten(std::move(completions[i].response));
        if (text.empty())
            throw Error(ErrorKind::BackendUnavailable, "empty style-transfer output for '" + out[i].id + "'");
        out[i].text = std::move(text);
    }
    std::string prov = corpus.provenance();
    if (!prov.empty()) prov += "; ";
    prov += "style-transfer(" + std::string(language_name) + ", " + config.model_name + ")";
    return Corpus::make(corpus.language(), corpus.split(), std::move(out), std::move(prov));
}

}  // namespace claimcheck
