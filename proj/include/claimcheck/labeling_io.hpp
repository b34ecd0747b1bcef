#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "claimcheck/backends.hpp"
#include "claimcheck/metrics.hpp"

namespace claimcheck {

/// Prediction file: one {"id","label","raw_response","flagged_fallback"}
/// object per line, in prediction order. Cache provenance and latency are
/// left out so warm and cold runs write identical bytes.
std::string serialize_predictions(const PredictionSet& set);

/// Reads prediction files and plain labeling files ({"id","label"} lines).
/// Fingerprints are left empty. Throws InvalidArgument on bad lines and
/// IdMismatch on repeated ids.
PredictionSet parse_predictions(std::string_view jsonl);

std::string serialize_labeling(const Labeling& labels);
Labeling parse_labeling(std::string_view jsonl);

/// {"full": {...}, "rounded": {...}} with accuracy, precision, recall,
/// f1_positive and f1_macro in each.
nlohmann::ordered_json metrics_to_json(const MetricsReport& report);
MetricsReport metrics_from_json(const nlohmann::json& j);

nlohmann::ordered_json confusion_to_json(const ConfusionMatrix& cm);

}  // namespace claimcheck
