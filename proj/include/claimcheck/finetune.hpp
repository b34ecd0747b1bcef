#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "claimcheck/corpus.hpp"

namespace claimcheck {

/// Chat fine-tuning records, one JSON object per line:
///
///   {"messages":[{"role":"system","content":<system_prompt>},
///                {"role":"user","content":<instance text>},
///                {"role":"assistant","content":"Yes"|"No"}]}
///
/// Keys appear in exactly that order, UTF-8, '\n' after every record.
/// Throws UnlabeledCorpus if any instance lacks a label.
void export_finetune(const Corpus& corpus, std::string_view system_prompt, std::ostream& out);
std::string export_finetune(const Corpus& corpus, std::string_view system_prompt);

struct FinetuneExample {
    std::string system_prompt;
    std::string text;
    Label label;

    friend bool operator==(const FinetuneExample&, const FinetuneExample&) = default;
};

/// Inverse of export_finetune. Throws InvalidArgument on a record that does
/// not follow the schema.
std::vector<FinetuneExample> parse_finetune(std::string_view jsonl);

}  // namespace claimcheck
