#include "claimcheck/normalize.hpp"

#include "claimcheck/error.hpp"

namespace claimcheck {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
}

bool starts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
    return s.substr(pos, prefix.size()) == prefix;
}

std::string mask_usernames(std::string_view text, std::string_view token) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const bool token_start = i == 0 || is_space(text[i - 1]);
        if (token_start && text[i] == '@' && i + 1 < text.size() && is_word(text[i + 1])) {
            std::size_t j = i + 1;
            while (j < text.size() && is_word(text[j])) ++j;
            out += token;
            i = j;
            continue;
        }
        out += text[i++];
    }
    return out;
}

std::string mask_urls(std::string_view text, std::string_view token) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (starts_with(text, i, "http://") || starts_with(text, i, "https://")) {
            std::size_t j = i;
            while (j < text.size() && !is_space(text[j])) ++j;
            out += token;
            i = j;
            continue;
        }
        out += text[i++];
    }
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += c;
    }
    return out;
}

}  // namespace

void NormalizeConfig::validate() const {
    for (const auto* tok : {&username_token, &url_token}) {
        if (tok->empty()) throw Error(ErrorKind::InvalidConfig, "normalization tokens must be non-empty");
        for (char c : *tok)
            if (is_space(c))
                throw Error(ErrorKind::InvalidConfig, "normalization token '" + *tok + "' contains whitespace");
    }
}

std::string normalize_text(std::string_view text, const NormalizeConfig& config) {
    std::string out(text);
    if (config.mask_usernames) out = mask_usernames(out, config.username_token);
    if (config.mask_urls) out = mask_urls(out, config.url_token);
    if (config.collapse_whitespace) out = collapse_whitespace(out);
    return out;
}

}  // namespace claimcheck
