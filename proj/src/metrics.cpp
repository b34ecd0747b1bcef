#include "claimcheck/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "claimcheck/error.hpp"

namespace claimcheck {

double round_half_up(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::floor(value * scale + 0.5 + 1e-9) / scale;
}

std::string format3(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", round_half_up(value, 3));
    return buf;
}

MetricsReport MetricsReport::rounded() const {
    return {round_half_up(accuracy), round_half_up(precision), round_half_up(recall), round_half_up(f1_positive),
            round_half_up(f1_macro)};
}

namespace {

void require_same_ids(const Labeling& a, const Labeling& b, const char* what) {
    if (a.size() != b.size())
        throw Error(ErrorKind::IdMismatch, std::string(what) + ": " + std::to_string(a.size()) + " vs " +
                                               std::to_string(b.size()) + " ids");
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        if (ia->first != ib->first) throw Error(ErrorKind::IdMismatch, std::string(what) + ": id '" + ia->first + "'");
}

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

/// 2tp / (2tp + fp + fn), the harmonic mean of precision and recall without
/// rounding them first.
double f1(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) { return ratio(2 * tp, 2 * tp + fp + fn); }

Labeling unique_labels(const PredictionSet& set) {
    Labeling out;
    for (const auto& p : set.predictions)
        if (!out.emplace(p.instance_id, p.label).second)
            throw Error(ErrorKind::IdMismatch, "prediction set repeats id '" + p.instance_id + "'");
    return out;
}

}  // namespace

ConfusionMatrix confusion(const Labeling& predicted, const Labeling& gold) {
    require_same_ids(predicted, gold, "predictions vs gold");
    ConfusionMatrix cm;
    for (auto ip = predicted.begin(), ig = gold.begin(); ip != predicted.end(); ++ip, ++ig) {
        const bool pred_yes = ip->second == Label::Yes;
        const bool gold_yes = ig->second == Label::Yes;
        if (pred_yes && gold_yes)
            ++cm.tp;
        else if (pred_yes)
            ++cm.fp;
        else if (gold_yes)
            ++cm.fn;
        else
            ++cm.tn;
    }
    return cm;
}

ConfusionMatrix confusion(const PredictionSet& predictions, const Corpus& gold) {
    Labeling g;
    for (const auto& inst : gold.instances()) {
        if (!inst.label) throw Error(ErrorKind::UnlabeledGold, "gold instance '" + inst.id + "' has no label");
        g.emplace(inst.id, *inst.label);
    }
    return confusion(unique_labels(predictions), g);
}

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw Error(ErrorKind::EmptyMatrix, "confusion matrix has no observations");
    MetricsReport r;
    r.accuracy = ratio(cm.tp + cm.tn, cm.total());
    r.precision = ratio(cm.tp, cm.tp + cm.fp);
    r.recall = ratio(cm.tp, cm.tp + cm.fn);
    r.f1_positive = f1(cm.tp, cm.fp, cm.fn);
    const double neg_f1 = f1(cm.tn, cm.fn, cm.fp);
    r.f1_macro = (r.f1_positive + neg_f1) / 2.0;
    return r;
}

AgreementReport cohens_kappa(const Labeling& a, const Labeling& b) {
    if (a.empty() || b.empty()) throw Error(ErrorKind::EmptyInput, "kappa needs at least one item");
    require_same_ids(a, b, "kappa");
    std::uint64_t agree = 0, a_yes = 0, b_yes = 0;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
        agree += ia->second == ib->second;
        a_yes += ia->second == Label::Yes;
        b_yes += ib->second == Label::Yes;
    }
    const double n = static_cast<double>(a.size());
    AgreementReport r;
    r.observed_agreement = static_cast<double>(agree) / n;
    const double pa = static_cast<double>(a_yes) / n;
    const double pb = static_cast<double>(b_yes) / n;
    r.expected_agreement = pa * pb + (1.0 - pa) * (1.0 - pb);
    const bool constant_identical = (a_yes == b_yes) && (a_yes == 0 || a_yes == a.size());
    if (constant_identical) {
        r.expected_agreement = 1.0;
        r.kappa = 1.0;
        r.degenerate_marginals = true;
        return r;
    }
    r.kappa = (r.observed_agreement - r.expected_agreement) / (1.0 - r.expected_agreement);
    return r;
}

Labeling majority_adjudicate(std::span<const Labeling> annotations) {
    if (annotations.size() < 3)
        throw Error(ErrorKind::InvalidArgument, "majority adjudication needs at least 3 annotators");
    if (annotations.size() % 2 == 0)
        throw Error(ErrorKind::EvenAnnotatorCount, std::to_string(annotations.size()) + " annotators");
    for (std::size_t k = 1; k < annotations.size(); ++k)
        require_same_ids(annotations[0], annotations[k], "annotations");
    Labeling out;
    for (const auto& [id, _] : annotations[0]) {
        std::size_t yes = 0;
        for (const auto& ann : annotations) yes += ann.at(id) == Label::Yes;
        out.emplace(id, 2 * yes > annotations.size() ? Label::Yes : Label::No);
    }
    return out;
}

double label_overlap(const Labeling& a, const Labeling& b) {
    if (a.empty() && b.empty()) throw Error(ErrorKind::EmptyInput, "overlap of empty labelings");
    require_same_ids(a, b, "overlap");
    std::uint64_t agree = 0;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) agree += ia->second == ib->second;
    return static_cast<double>(agree) / static_cast<double>(a.size());
}

double prediction_overlap(const PredictionSet& a, const PredictionSet& b) {
    return label_overlap(unique_labels(a), unique_labels(b));
}

}  // namespace claimcheck
