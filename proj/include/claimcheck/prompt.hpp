#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "claimcheck/corpus.hpp"

namespace claimcheck {

enum class ParseMode { strict, lenient };

std::string_view to_string(ParseMode mode) noexcept;
ParseMode parse_mode_from_string(std::string_view s);

struct PromptConfig {
    std::string language_name = "English";
    std::string template_id = "cot-v1";
    ParseMode parse_mode = ParseMode::lenient;
    /// Label used when a response cannot be parsed; the prediction is flagged.
    std::optional<Label> fallback_label = Label::No;

    /// Throws UnknownTemplate if template_id has no template file.
    void validate() const;

    friend bool operator==(const PromptConfig&, const PromptConfig&) = default;
};

/// Few-shot chain-of-thought check-worthiness prompt with {lang} and {text}
/// substituted. Throws InvalidArgument on empty text.
std::string build_checkworthy_prompt(std::string_view text, const PromptConfig& config);

struct ParsedLabel {
    Label label;
    bool fallback_used = false;

    friend bool operator==(const ParsedLabel&, const ParsedLabel&) = default;
};

/// Maps a raw model response to a label.
///
/// strict: trim whitespace and surrounding quotes, then "yes"/"no" ignoring
/// case. lenient: whichever of the whole words "yes"/"no" occurs, if exactly
/// one of them does. Otherwise fallback_label (flagged) or
/// UnparseableResponse with the raw text in Error::detail().
ParsedLabel parse_label(std::string_view raw, const PromptConfig& config);

}  // namespace claimcheck
