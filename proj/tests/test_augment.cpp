#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <map>
#include <thread>

#include <json.hpp>

#include "claimcheck/augment.hpp"
#include "claimcheck/cache.hpp"
#include "claimcheck/error.hpp"
#include "claimcheck/retry.hpp"
#include "support.hpp"

using namespace claimcheck;
using testsupport::error_kind;

namespace {

/// Fails `failures_per_text` times per distinct text, then echoes upper-cased.
class FlakyTranslator final : public Translator {
public:
    explicit FlakyTranslator(int failures_per_text, bool transient = true)
        : failures_(failures_per_text), transient_(transient) {}
    std::string id() const override { return "flaky"; }
    std::string translate(std::string_view text, Language, Language) override {
        std::lock_guard lock(mu_);
        ++attempts_[std::string(text)];
        if (attempts_[std::string(text)] <= failures_) throw BackendFailure("boom", transient_);
        std::string out(text);
        for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return out;
    }
    int attempts(const std::string& text) {
        std::lock_guard lock(mu_);
        return attempts_[text];
    }

private:
    int failures_;
    bool transient_;
    std::mutex mu_;
    std::map<std::string, int> attempts_;
};

}  // namespace

TEST_CASE("mock translator definition") {
    const auto c = parse_tsv("sentence_id\ttext\n1\tx\n", Language::ar, Split::test, false);
    MockTranslator t;
    const auto out = translate_corpus(c, Language::en, t);
    CHECK(out.instances()[0].text == "[ar\xE2\x86\x92" "en] x");
    CHECK(out.language() == Language::en);
    CHECK(out.provenance().find("mock") != std::string::npos);
    CHECK(error_kind([&] { translate_corpus(c, Language::ar, t); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("translation keeps ids, order and labels") {
    const auto test = parse_tsv(testsupport::unlabeled_tsv("ar", 500), Language::ar, Split::test, false);
    MockTranslator t;
    TranslateOptions opts;
    opts.concurrency = 8;
    const auto out = translate_corpus(test, Language::en, t, opts);
    REQUIRE(out.size() == 500);
    for (std::size_t i = 0; i < 500; ++i) {
        CHECK(out.instances()[i].id == test.instances()[i].id);
        CHECK(out.instances()[i].text.ends_with(test.instances()[i].text));
    }
    const auto train = parse_tsv(testsupport::labeled_tsv("nl", 405, 590), Language::nl, Split::train, true);
    CHECK(class_counts(translate_corpus(train, Language::en, t, opts)) == class_counts(train));
}

TEST_CASE("translation retries transient failures then gives up on the corpus") {
    const auto c = parse_tsv("sentence_id\ttext\na\tone\nb\ttwo\n", Language::nl, Split::test, false);
    SimulatedClock clock;
    TranslateOptions opts;
    opts.clock = &clock;
    opts.concurrency = 1;

    FlakyTranslator twice(2);
    const auto ok = translate_corpus(c, Language::en, twice, opts);
    CHECK(ok.instances()[1].text == "TWO");
    CHECK(twice.attempts("one") == 3);

    FlakyTranslator always(100);
    Error caught(ErrorKind::Io, "");
    try {
        translate_corpus(c, Language::en, always, opts);
        FAIL("expected TranslatorFailure");
    } catch (const Error& e) {
        caught = e;
    }
    CHECK(caught.kind() == ErrorKind::TranslatorFailure);
    CHECK(caught.detail() == "a");
    CHECK(always.attempts("one") == 4);

    FlakyTranslator permanent(1, false);
    CHECK(error_kind([&] { translate_corpus(c, Language::en, permanent, opts); }) == ErrorKind::TranslatorFailure);
    CHECK(permanent.attempts("one") == 1);
}

TEST_CASE("cached translations are not requested again") {
    testsupport::TempDir dir;
    const auto c = parse_tsv(testsupport::unlabeled_tsv("x", 20), Language::ar, Split::test, false);
    MockTranslator t;
    std::string first, second;
    {
        ResponseCache cache(dir.file("c.jsonl"));
        TranslateOptions opts;
        opts.cache = &cache;
        first = serialize_tsv(translate_corpus(c, Language::en, t, opts));
    }
    CHECK(t.calls() == 20);
    {
        ResponseCache cache(dir.file("c.jsonl"));
        TranslateOptions opts;
        opts.cache = &cache;
        second = serialize_tsv(translate_corpus(c, Language::en, t, opts));
    }
    CHECK(t.calls() == 20);
    CHECK(first == second);
}

TEST_CASE("http-generic translator") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/translate", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        const auto j = nlohmann::json::parse(req.body);
        const std::string text = j.at("text");
        res.set_content(nlohmann::json{{"translation", j.at("source").get<std::string>() + ">" +
                                                            j.at("target").get<std::string>() + " " + text + "\tend"}}
                            .dump(),
                        "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread th([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    auto t = make_translator("http-generic", "http://127.0.0.1:" + std::to_string(port) + "/translate");
    const auto c = parse_tsv("sentence_id\ttext\n1\thallo\n", Language::nl, Split::test, false);
    const auto out = translate_corpus(c, Language::en, *t);
    CHECK(out.instances()[0].text == "nl>en hallo end");
    CHECK(hits.load() == 1);
    server.stop();
    th.join();

    CHECK(error_kind([] { make_translator("http-generic", std::nullopt); }) == ErrorKind::InvalidConfig);
    CHECK(error_kind([] { make_translator("nope", std::nullopt); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("translation sidecar") {
    const auto j = nlohmann::json::parse(
        translation_sidecar_json("data/ar_test.tsv", Language::ar, Language::en, "mock", "2024-01-01T00:00:00.000Z"));
    CHECK(j.at("source_file") == "data/ar_test.tsv");
    CHECK(j.at("source_lang") == "ar");
    CHECK(j.at("target_lang") == "en");
    CHECK(j.at("translator") == "mock");
    CHECK(j.at("timestamp") == "2024-01-01T00:00:00.000Z");
}

TEST_CASE("style transfer through a chat backend") {
    testsupport::TempDir dir;
    BackendConfig cfg;
    cfg.mock_default_response = "so true #debate\nmore";
    MockBackend backend(cfg);
    ResponseCache cache(dir.file("c.jsonl"));
    const auto c = parse_tsv("sentence_id\ttext\tclass_label\n1\tTaxes rose.\tYes\n", Language::en, Split::train, true);
    StyleTransferExemplars ex{{"a", "b", "c"}};
    SimulatedClock clock;
    const auto out = style_transfer_corpus(c, ex, "Arabic", backend, cfg, cache, {&clock});
    CHECK(out.instances()[0].text == "so true #debate more");
    CHECK(out.instances()[0].label == Label::Yes);
    CHECK(backend.calls() == 1);
}
