#include <doctest.h>

#include <regex>

#include "claimcheck/error.hpp"
#include "claimcheck/normalize.hpp"
#include "support.hpp"

using namespace claimcheck;

namespace {

NormalizeConfig all_on() {
    NormalizeConfig c;
    c.mask_usernames = c.mask_urls = c.collapse_whitespace = true;
    return c;
}

std::string random_tweet(testsupport::Gen& gen) {
    static const char* parts[] = {"@john", "@a_b9", "http://x.co/a", "https://t.co/Zz?q=1", "a@b.com", "word",
                                  "  ", "\t", "#tag", "émoji😀", "@", "@@x", "12%", "\n", "http:/no"};
    std::string out;
    const auto n = gen.below(12);
    for (std::size_t i = 0; i < n; ++i) {
        out += parts[gen.below(std::size(parts))];
        if (gen.coin()) out += ' ';
    }
    return out;
}

}  // namespace

TEST_CASE("all rules applied in order") {
    CHECK(normalize_text("@john check https://x.co/a now", all_on()) == "@USER check HTTPURL now");
    CHECK(normalize_text("  lots   of\t\tspace \n", all_on()) == "lots of space");
}

TEST_CASE("email addresses are not usernames") {
    NormalizeConfig c;
    c.mask_usernames = true;
    CHECK(normalize_text("email a@b.com", c) == "email a@b.com");
    CHECK(normalize_text("@b.com", c) == "@USER.com");
}

TEST_CASE("flags off is the identity") {
    testsupport::Gen gen(11);
    for (int i = 0; i < 200; ++i) {
        const auto t = random_tweet(gen);
        CHECK(normalize_text(t, NormalizeConfig{}) == t);
    }
}

TEST_CASE("idempotence and no surviving patterns") {
    testsupport::Gen gen(12);
    const std::regex url("https?://");
    const std::regex user("(^|\\s)@[A-Za-z0-9_]");
    for (int i = 0; i < 300; ++i) {
        const auto t = random_tweet(gen);
        for (unsigned mask = 0; mask < 8; ++mask) {
            NormalizeConfig c;
            c.mask_usernames = mask & 1;
            c.mask_urls = mask & 2;
            c.collapse_whitespace = mask & 4;
            const auto once = normalize_text(t, c);
            CAPTURE(t);
            CHECK(normalize_text(once, c) == once);
            if (c.mask_urls) CHECK_FALSE(std::regex_search(once, url));
            if (c.mask_usernames) {
                // the only token-initial '@' words left are the mask token itself
                std::string stripped = once;
                for (std::size_t p; (p = stripped.find("@USER")) != std::string::npos;) stripped.replace(p, 5, "U");
                CHECK_FALSE(std::regex_search(stripped, user));
            }
        }
    }
}

TEST_CASE("token validation") {
    NormalizeConfig c;
    c.username_token = "";
    CHECK(testsupport::error_kind([&] { c.validate(); }).has_value());
    c.username_token = "@ USER";
    CHECK(testsupport::error_kind([&] { c.validate(); }).has_value());
    c.username_token = "@U";
    CHECK_NOTHROW(c.validate());
}
