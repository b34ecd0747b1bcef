#include <doctest.h>

#include "claimcheck/augment.hpp"
#include "claimcheck/error.hpp"
#include "claimcheck/prompt.hpp"
#include "claimcheck/template.hpp"
#include "support.hpp"

using namespace claimcheck;
using testsupport::error_kind;

namespace {

std::string golden(const std::string& name) {
    return testsupport::read_text(std::string(CLAIMCHECK_TEST_DIR) + "/golden/" + name);
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

const StyleTransferExemplars kExemplars{
    {"Prices up again #inflation", "Who else saw the debate?? \xF0\x9F\x98\x82", "New jobs report out now https://t.co/x"}};

}  // namespace

TEST_CASE("check-worthiness prompt goldens") {
    for (const char* lang : {"English", "Dutch", "Arabic"}) {
        CAPTURE(lang);
        PromptConfig cfg;
        cfg.language_name = lang;
        const auto p = build_checkworthy_prompt("Apple's CEO is Tim Cook.", cfg);
        CHECK(p == golden(std::string("checkworthy-") + lang + ".txt"));
        CHECK(p == build_checkworthy_prompt("Apple's CEO is Tim Cook.", cfg));
        CHECK(count_of(p, "\ncheckworthy(Apple's CEO is Tim Cook.)") == 1);
        CHECK(p.ends_with("\ncheckworthy(Apple's CEO is Tim Cook.)"));
        CHECK(count_of(p, "SO NO OTHER WORDS!") == 1);
        CHECK(count_of(p, "he return value should be a strings") == 1);
    }
}

TEST_CASE("language name is the only difference between renders") {
    PromptConfig en, nl;
    nl.language_name = "Dutch";
    auto a = build_checkworthy_prompt("X rose 5%", en);
    auto b = build_checkworthy_prompt("X rose 5%", nl);
    const auto pos = a.find("English");
    REQUIRE(pos != std::string::npos);
    a.replace(pos, 7, "Dutch");
    CHECK(a == b);
}

TEST_CASE("instance text appears once even when it looks like a placeholder") {
    PromptConfig cfg;
    for (std::string text : {"{text}", "{lang} and {text}", "checkworthy({text})", "plain"}) {
        const auto p = build_checkworthy_prompt(text, cfg);
        CHECK(p.ends_with("checkworthy(" + text + ")"));
    }
    CHECK(error_kind([&] { build_checkworthy_prompt("", cfg); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("fixed template variant") {
    PromptConfig cfg;
    cfg.template_id = "cot-v1-fixed";
    const auto p = build_checkworthy_prompt("t", cfg);
    CHECK(count_of(p, "The return value should be a string, which selects from \"Yes\", \"No\".") == 1);
    CHECK(count_of(p, "a strings") == 0);
    cfg.template_id = "no-such-template";
    CHECK(error_kind([&] { build_checkworthy_prompt("t", cfg); }) == ErrorKind::UnknownTemplate);
}

TEST_CASE("style-transfer goldens") {
    for (const char* lang : {"English", "Dutch", "Arabic"}) {
        CAPTURE(lang);
        const auto p = build_style_transfer_prompt("Unemployment fell to 4.1 percent last year.", kExemplars, lang);
        CHECK(p == golden(std::string("style-transfer-") + lang + ".txt"));
    }
    CHECK(build_style_transfer_prompt("T", kExemplars) ==
          "Rephrase the following statement as if somebody was Tweeting about it in Arabic. Output might use "
          "hashtags, emoticons, images and links. Statement: (T) Here are a few examples: (Prices up again "
          "#inflation | Who else saw the debate?? \xF0\x9F\x98\x82 | New jobs report out now https://t.co/x)");
    const auto empty = build_style_transfer_prompt("", kExemplars);
    CHECK(empty.find("Statement: () Here") != std::string::npos);
    StyleTransferExemplars bad{{"a", "", "c"}};
    CHECK(error_kind([&] { build_style_transfer_prompt("T", bad); }).has_value());
}

TEST_CASE("render_template substitutes in one pass") {
    CHECK(render_template("{a}-{b}-{a}", {{"a", "{b}"}, {"b", "x"}}) == "{b}-x-{b}");
    CHECK(render_template("{unknown} {a}", {{"a", "1"}}) == "{unknown} 1");
}

TEST_CASE("parse_label") {
    PromptConfig strict, lenient;
    strict.parse_mode = ParseMode::strict;
    strict.fallback_label.reset();
    lenient.fallback_label.reset();

    CHECK(parse_label(" Yes\n", strict) == ParsedLabel{Label::Yes, false});
    CHECK(parse_label(" Yes\n", lenient) == ParsedLabel{Label::Yes, false});
    CHECK(parse_label("\"no\"", strict) == ParsedLabel{Label::No, false});
    CHECK(parse_label("Answer: No.", lenient) == ParsedLabel{Label::No, false});

    const auto k = error_kind([&] { parse_label("Answer: No.", strict); });
    CHECK(k == ErrorKind::UnparseableResponse);
    try {
        parse_label("Answer: No.", strict);
    } catch (const Error& e) {
        CHECK(e.detail() == "Answer: No.");
    }

    PromptConfig fb = lenient;
    fb.fallback_label = Label::No;
    CHECK(parse_label("Yes and no", fb) == ParsedLabel{Label::No, true});
    CHECK(parse_label("nothing here", fb) == ParsedLabel{Label::No, true});
    CHECK(parse_label("Yesterday nobody", fb) == ParsedLabel{Label::No, true});
    CHECK(error_kind([&] { parse_label("Yes and no", lenient); }) == ErrorKind::UnparseableResponse);
}

TEST_CASE("parse_label round trip and strict subset of lenient") {
    for (auto mode : {ParseMode::strict, ParseMode::lenient}) {
        PromptConfig c;
        c.parse_mode = mode;
        c.fallback_label.reset();
        for (auto l : {Label::Yes, Label::No}) CHECK(parse_label(to_string(l), c).label == l);
    }
    PromptConfig strict, lenient;
    strict.parse_mode = ParseMode::strict;
    strict.fallback_label.reset();
    lenient.fallback_label.reset();
    testsupport::Gen gen(77);
    static const char* bits[] = {"yes", "No", "YES", " ", "\n", "'", "\"", "`", ".", "maybe", "n", "o", "es", "!"};
    for (int i = 0; i < 2000; ++i) {
        std::string raw;
        for (std::size_t n = gen.below(5); n > 0; --n) raw += bits[gen.below(std::size(bits))];
        Label l{};
        bool strict_ok = true;
        try {
            l = parse_label(raw, strict).label;
        } catch (const Error&) {
            strict_ok = false;
        }
        if (strict_ok) {
            CAPTURE(raw);
            CHECK(parse_label(raw, lenient).label == l);
        }
    }
}
