#include "claimcheck/prompt.hpp"

#include <cctype>

#include "claimcheck/error.hpp"
#include "claimcheck/template.hpp"

namespace claimcheck {

std::string_view to_string(ParseMode mode) noexcept {
    return mode == ParseMode::strict ? "strict" : "lenient";
}

ParseMode parse_mode_from_string(std::string_view s) {
    if (s == "strict") return ParseMode::strict;
    if (s == "lenient") return ParseMode::lenient;
    throw Error(ErrorKind::InvalidConfig, "parse_mode must be strict or lenient, got '" + std::string(s) + "'");
}

void PromptConfig::validate() const {
    load_template(template_id);
    if (language_name.empty()) throw Error(ErrorKind::InvalidConfig, "language_name must be non-empty");
}

std::string build_checkworthy_prompt(std::string_view text, const PromptConfig& config) {
    if (text.empty()) throw Error(ErrorKind::InvalidArgument, "prompt text must be non-empty");
    return render_template(load_template(config.template_id),
                           {{"lang", config.language_name}, {"text", std::string(text)}});
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_quote(char c) { return c == '"' || c == '\'' || c == '`'; }

bool is_alnum(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalnum(u) != 0;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::optional<Label> parse_strict(std::string_view raw) {
    auto trim = [](std::string_view s, auto pred) {
        while (!s.empty() && pred(s.front())) s.remove_prefix(1);
        while (!s.empty() && pred(s.back())) s.remove_suffix(1);
        return s;
    };
    auto s = trim(raw, is_space);
    s = trim(s, is_quote);
    s = trim(s, is_space);
    if (iequals(s, "yes")) return Label::Yes;
    if (iequals(s, "no")) return Label::No;
    return std::nullopt;
}

std::optional<Label> parse_lenient(std::string_view raw) {
    bool saw_yes = false;
    bool saw_no = false;
    std::size_t i = 0;
    while (i < raw.size()) {
        if (!is_alnum(raw[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < raw.size() && is_alnum(raw[j])) ++j;
        const auto word = raw.substr(i, j - i);
        saw_yes = saw_yes || iequals(word, "yes");
        saw_no = saw_no || iequals(word, "no");
        i = j;
    }
    if (saw_yes == saw_no) return std::nullopt;
    return saw_yes ? Label::Yes : Label::No;
}

}  // namespace

ParsedLabel parse_label(std::string_view raw, const PromptConfig& config) {
    const auto label = config.parse_mode == ParseMode::strict ? parse_strict(raw) : parse_lenient(raw);
    if (label) return {*label, false};
    if (config.fallback_label) return {*config.fallback_label, true};
    throw Error(ErrorKind::UnparseableResponse, "cannot read a Yes/No verdict from the response")
        .with_detail(std::string(raw));
}

}  // namespace claimcheck
