#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "claimcheck/corpus.hpp"

namespace claimcheck {

/// One annotator's labels over a sample. Stored as JSON:
/// {"annotator_id", "created_at", "labels": [{"id","label"}, ...]} with labels
/// in sample order.
struct AnnotationFile {
    std::string annotator_id;
    std::string created_at;
    Labeling labels;
};

/// Serializes labels in the order of `order` (ids missing from `order` follow
/// in id order).
std::string serialize_annotation(const AnnotationFile& file, const std::vector<std::string>& order = {});
AnnotationFile parse_annotation(std::string_view json_text);
AnnotationFile read_annotation_file(const std::string& path);

/// Line-oriented terminal used by the annotation session.
class Console {
public:
    virtual ~Console() = default;
    virtual bool interactive() const = 0;
    /// nullopt at end of input.
    virtual std::optional<std::string> read_line() = 0;
    virtual void write(std::string_view text) = 0;
};

/// stdin/stdout; interactive only when stdin is a TTY.
class TerminalConsole final : public Console {
public:
    bool interactive() const override;
    std::optional<std::string> read_line() override;
    void write(std::string_view text) override;
};

/// Replays canned answers; collects everything written.
class ScriptedConsole final : public Console {
public:
    explicit ScriptedConsole(std::vector<std::string> answers) : answers_(std::move(answers)) {}
    bool interactive() const override { return true; }
    std::optional<std::string> read_line() override;
    void write(std::string_view text) override { transcript_ += text; }
    const std::string& transcript() const noexcept { return transcript_; }

private:
    std::vector<std::string> answers_;
    std::size_t next_ = 0;
    std::string transcript_;
};

struct SessionResult {
    AnnotationFile file;
    std::size_t answered = 0;
    bool quit = false;
};

/// Walks the sample in order, asking y/n/s(kip)/q(uit) for every id not yet
/// labeled in `output_path` (an existing file resumes the session). The file
/// is rewritten atomically after every answer. End of input behaves like quit.
/// Errors: NonInteractiveChannel, WriteFailure, InvalidArgument when an
/// existing file belongs to another annotator or holds unknown ids.
SessionResult annotate_session(const Corpus& sample, const std::string& annotator_id, Console& console,
                               const std::string& output_path,
                               const std::function<std::string()>& now = [] { return std::string(); });

}  // namespace claimcheck
