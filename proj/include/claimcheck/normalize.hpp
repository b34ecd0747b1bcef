#pragma once

#include <string>
#include <string_view>

namespace claimcheck {

/// Tweet-style masking switches. Everything is off by default: full masking
/// hurt claim detection, so pipelines opt in explicitly.
struct NormalizeConfig {
    bool mask_usernames = false;
    bool mask_urls = false;
    bool collapse_whitespace = false;
    std::string username_token = "@USER";
    std::string url_token = "HTTPURL";

    /// Throws InvalidConfig if a token is empty or contains whitespace.
    void validate() const;
    bool any_enabled() const noexcept { return mask_usernames || mask_urls || collapse_whitespace; }

    friend bool operator==(const NormalizeConfig&, const NormalizeConfig&) = default;
};

/// Applies, in order: username masking ("@" starting a whitespace-delimited
/// token, followed by one or more word characters), URL masking ("http://" or
/// "https://" up to the next whitespace), whitespace collapsing and trimming.
/// Word characters are ASCII letters, digits, underscore, and any non-ASCII
/// byte, so Arabic handles are masked too.
std::string normalize_text(std::string_view text, const NormalizeConfig& config);

}  // namespace claimcheck
