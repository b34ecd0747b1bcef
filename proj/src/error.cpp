#include "claimcheck/error.hpp"

namespace claimcheck {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::MalformedRow: return "MalformedRow";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::InvalidLabel: return "InvalidLabel";
        case ErrorKind::EmptyCorpus: return "EmptyCorpus";
        case ErrorKind::UnlabeledCorpus: return "UnlabeledCorpus";
        case ErrorKind::SingleClassCorpus: return "SingleClassCorpus";
        case ErrorKind::MixedSplits: return "MixedSplits";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::FractionOutOfRange: return "FractionOutOfRange";
        case ErrorKind::TranslatorFailure: return "TranslatorFailure";
        case ErrorKind::UnknownTemplate: return "UnknownTemplate";
        case ErrorKind::UnparseableResponse: return "UnparseableResponse";
        case ErrorKind::BackendUnavailable: return "BackendUnavailable";
        case ErrorKind::CacheCorruption: return "CacheCorruption";
        case ErrorKind::IdMismatch: return "IdMismatch";
        case ErrorKind::UnlabeledGold: return "UnlabeledGold";
        case ErrorKind::EmptyMatrix: return "EmptyMatrix";
        case ErrorKind::EvenAnnotatorCount: return "EvenAnnotatorCount";
        case ErrorKind::UnknownAxis: return "UnknownAxis";
        case ErrorKind::NoSuccessfulRuns: return "NoSuccessfulRuns";
        case ErrorKind::MissingReference: return "MissingReference";
        case ErrorKind::MissingSplit: return "MissingSplit";
        case ErrorKind::NonInteractiveChannel: return "NonInteractiveChannel";
        case ErrorKind::WriteFailure: return "WriteFailure";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace claimcheck
