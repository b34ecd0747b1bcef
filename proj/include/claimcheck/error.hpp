#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace claimcheck {

enum class ErrorKind {
    // corpus
    MalformedRow,
    DuplicateId,
    InvalidLabel,
    EmptyCorpus,
    UnlabeledCorpus,
    SingleClassCorpus,
    MixedSplits,
    EmptyInput,
    FractionOutOfRange,
    // augment
    TranslatorFailure,
    // prompt / backends
    UnknownTemplate,
    UnparseableResponse,
    BackendUnavailable,
    CacheCorruption,
    // metrics
    IdMismatch,
    UnlabeledGold,
    EmptyMatrix,
    EvenAnnotatorCount,
    // experiment
    UnknownAxis,
    NoSuccessfulRuns,
    MissingReference,
    MissingSplit,
    // cli / annotation
    NonInteractiveChannel,
    WriteFailure,
    // general
    InvalidConfig,
    InvalidArgument,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Domain error raised by every module. The kind is stable and tested; the
/// message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

    /// Extra payload: the offending instance id for TranslatorFailure, the raw
    /// response for UnparseableResponse. Empty otherwise.
    const std::string& detail() const noexcept { return detail_; }

    Error&& with_detail(std::string detail) && {
        detail_ = std::move(detail);
        return std::move(*this);
    }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace claimcheck
