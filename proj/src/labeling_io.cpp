#include "claimcheck/labeling_io.hpp"

#include <set>

#include "claimcheck/error.hpp"

namespace claimcheck {

using ojson = nlohmann::ordered_json;

namespace {

template <typename F>
void for_each_line(std::string_view jsonl, F&& f) {
    std::size_t start = 0;
    std::size_t n = 0;
    while (start < jsonl.size()) {
        auto end = jsonl.find('\n', start);
        if (end == std::string_view::npos) end = jsonl.size();
        const auto line = jsonl.substr(start, end - start);
        start = end + 1;
        ++n;
        if (line.empty()) continue;
        try {
            f(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(n) + ": " + e.what());
        }
    }
}

Label read_label(const nlohmann::json& j) {
    auto label = label_from_string(j.at("label").get<std::string>());
    if (!label) throw Error(ErrorKind::InvalidLabel, "label must be Yes or No");
    return *label;
}

}  // namespace

std::string serialize_predictions(const PredictionSet& set) {
    std::string out;
    for (const auto& p : set.predictions) {
        ojson j{{"id", p.instance_id},
                {"label", to_string(p.label)},
                {"raw_response", p.raw_response},
                {"flagged_fallback", p.flagged_fallback}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

PredictionSet parse_predictions(std::string_view jsonl) {
    PredictionSet set;
    std::set<std::string> seen;
    for_each_line(jsonl, [&](const nlohmann::json& j) {
        Prediction p;
        p.instance_id = j.at("id").get<std::string>();
        p.label = read_label(j);
        p.raw_response = j.value("raw_response", std::string(to_string(p.label)));
        p.flagged_fallback = j.value("flagged_fallback", false);
        if (!seen.insert(p.instance_id).second)
            throw Error(ErrorKind::IdMismatch, "repeated id '" + p.instance_id + "'");
        set.predictions.push_back(std::move(p));
    });
    return set;
}

std::string serialize_labeling(const Labeling& labels) {
    std::string out;
    for (const auto& [id, label] : labels) {
        out += ojson{{"id", id}, {"label", to_string(label)}}.dump();
        out += '\n';
    }
    return out;
}

Labeling parse_labeling(std::string_view jsonl) {
    Labeling out;
    for_each_line(jsonl, [&](const nlohmann::json& j) {
        auto id = j.at("id").get<std::string>();
        if (!out.emplace(id, read_label(j)).second) throw Error(ErrorKind::IdMismatch, "repeated id '" + id + "'");
    });
    return out;
}

ojson metrics_to_json(const MetricsReport& r) {
    auto fields = [](const MetricsReport& m) {
        return ojson{{"accuracy", m.accuracy},
                     {"precision", m.precision},
                     {"recall", m.recall},
                     {"f1_positive", m.f1_positive},
                     {"f1_macro", m.f1_macro}};
    };
    return ojson{{"full", fields(r)}, {"rounded", fields(r.rounded())}};
}

MetricsReport metrics_from_json(const nlohmann::json& j) {
    const auto& f = j.contains("full") ? j.at("full") : j;
    return {f.at("accuracy").get<double>(), f.at("precision").get<double>(), f.at("recall").get<double>(),
            f.at("f1_positive").get<double>(), f.at("f1_macro").get<double>()};
}

ojson confusion_to_json(const ConfusionMatrix& cm) {
    return ojson{{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

}  // namespace claimcheck
