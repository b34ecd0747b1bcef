#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "claimcheck/backends.hpp"
#include "claimcheck/corpus.hpp"

namespace claimcheck {

/// Binary confusion counts with Yes as the positive class.
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
    /// Same counts with No treated as the positive class.
    ConfusionMatrix swapped() const noexcept { return {tn, fn, fp, tp}; }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct MetricsReport {
    double accuracy = 0;
    double precision = 0;
    double recall = 0;
    double f1_positive = 0;
    double f1_macro = 0;

    /// Every field rounded half-up to 3 decimals, as shown in report tables.
    MetricsReport rounded() const;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Half-up rounding to `decimals` places. A 1e-9 nudge keeps exact halves
/// such as 0.9375 from falling below .5 after binary rounding.
double round_half_up(double value, int decimals = 3);
/// round_half_up(value, 3) printed with exactly three decimals.
std::string format3(double value);

/// Errors: IdMismatch when id sets differ, UnlabeledGold.
ConfusionMatrix confusion(const PredictionSet& predictions, const Corpus& gold);
ConfusionMatrix confusion(const Labeling& predicted, const Labeling& gold);

/// accuracy, precision, recall and F1 for Yes, plus the unweighted mean of
/// the Yes and No F1 scores. 0/0 ratios are 0. Throws EmptyMatrix.
MetricsReport compute_metrics(const ConfusionMatrix& cm);

struct AgreementReport {
    double observed_agreement = 0;
    double expected_agreement = 0;
    double kappa = 0;
    /// Both annotators used one identical constant label; kappa is set to 1.
    bool degenerate_marginals = false;
};

/// Cohen's kappa over the shared ids. Errors: EmptyInput, IdMismatch.
AgreementReport cohens_kappa(const Labeling& a, const Labeling& b);

/// Per-id label chosen by more than half of the annotators. Errors:
/// InvalidArgument (fewer than 3), EvenAnnotatorCount, IdMismatch.
Labeling majority_adjudicate(std::span<const Labeling> annotations);

/// Fraction of ids on which the two labelings agree. Errors: IdMismatch,
/// EmptyInput.
double label_overlap(const Labeling& a, const Labeling& b);
double prediction_overlap(const PredictionSet& a, const PredictionSet& b);

}  // namespace claimcheck
