#include "claimcheck/experiment.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <exception>
#include <filesystem>
#include <memory>
#include <set>

#include <spdlog/spdlog.h>

#include "claimcheck/augment.hpp"
#include "claimcheck/config_json.hpp"
#include "claimcheck/digest.hpp"
#include "claimcheck/error.hpp"
#include "claimcheck/finetune.hpp"
#include "claimcheck/io.hpp"
#include "claimcheck/labeling_io.hpp"

namespace claimcheck {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// configuration

namespace {

std::string_view op_name(AugmentStep::Op op) {
    switch (op) {
        case AugmentStep::Op::translate: return "translate";
        case AugmentStep::Op::merge: return "merge";
        case AugmentStep::Op::undersample: return "undersample";
        case AugmentStep::Op::oversample: return "oversample";
        case AugmentStep::Op::sample: return "sample";
        case AugmentStep::Op::style_transfer: return "style_transfer";
    }
    return "undersample";
}

AugmentStep::Op op_from_string(std::string_view s) {
    for (auto op : {AugmentStep::Op::translate, AugmentStep::Op::merge, AugmentStep::Op::undersample,
                    AugmentStep::Op::oversample, AugmentStep::Op::sample, AugmentStep::Op::style_transfer})
        if (op_name(op) == s) return op;
    throw Error(ErrorKind::InvalidConfig, "unknown augmentation op '" + std::string(s) + "'");
}

json splits_to_json(const std::vector<Split>& splits) {
    json a = json::array();
    for (auto s : splits) a.push_back(to_string(s));
    return a;
}

std::vector<Split> splits_from_json(const json& j, std::string_view what) {
    if (!j.is_array()) throw Error(ErrorKind::InvalidConfig, std::string(what) + " must be a list of splits");
    std::vector<Split> out;
    for (const auto& s : j) {
        if (!s.is_string()) throw Error(ErrorKind::InvalidConfig, std::string(what) + " must hold split names");
        try {
            out.push_back(split_from_string(s.get<std::string>()));
        } catch (const Error& e) {
            throw Error(ErrorKind::InvalidConfig, e.what());
        }
    }
    return out;
}

json step_to_json(const AugmentStep& s) {
    json j{{"op", op_name(s.op)}, {"splits", splits_to_json(s.splits)}};
    switch (s.op) {
        case AugmentStep::Op::undersample:
        case AugmentStep::Op::oversample: j["seed"] = s.seed ? json(*s.seed) : json(nullptr); break;
        case AugmentStep::Op::sample:
            j["seed"] = s.seed ? json(*s.seed) : json(nullptr);
            j["fraction"] = s.fraction;
            break;
        case AugmentStep::Op::translate:
            j["target"] = s.target ? json(to_string(*s.target)) : json(nullptr);
            j["translator"] = s.translator;
            j["endpoint"] = s.endpoint ? json(*s.endpoint) : json(nullptr);
            break;
        case AugmentStep::Op::merge: {
            json sources = json::array();
            for (const auto& src : s.sources) sources.push_back({{"path", src.path}, {"language", to_string(src.language)}});
            j["sources"] = sources;
            break;
        }
        case AugmentStep::Op::style_transfer:
            j["exemplars"] = s.exemplars;
            j["language_name"] = s.language_name;
            break;
    }
    return j;
}

std::string resolve_path(const std::string& p, const std::string& base_dir) {
    if (base_dir.empty() || p.empty() || fs::path(p).is_absolute()) return p;
    return (fs::path(base_dir) / p).lexically_normal().string();
}

AugmentStep step_from_json(const json& j, const std::string& base_dir) {
    require_known_keys(j, {"op", "splits", "seed", "fraction", "target", "translator", "endpoint", "sources",
                           "exemplars", "language_name"},
                       "augmentation[]");
    AugmentStep s;
    if (!j.contains("op") || !j.at("op").is_string())
        throw Error(ErrorKind::InvalidConfig, "augmentation step needs an op");
    s.op = op_from_string(j.at("op").get<std::string>());
    if (j.contains("splits")) s.splits = splits_from_json(j.at("splits"), "augmentation[].splits");
    try {
        if (j.contains("seed") && !j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("fraction")) s.fraction = j.at("fraction").get<double>();
        if (j.contains("target") && !j.at("target").is_null())
            s.target = language_from_string(j.at("target").get<std::string>());
        if (j.contains("translator")) s.translator = j.at("translator").get<std::string>();
        if (j.contains("endpoint") && !j.at("endpoint").is_null()) s.endpoint = j.at("endpoint").get<std::string>();
        if (j.contains("sources"))
            for (const auto& src : j.at("sources"))
                s.sources.push_back({resolve_path(src.at("path").get<std::string>(), base_dir),
                                     language_from_string(src.at("language").get<std::string>())});
        if (j.contains("exemplars")) s.exemplars = j.at("exemplars").get<std::vector<std::string>>();
        if (j.contains("language_name")) s.language_name = j.at("language_name").get<std::string>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, std::string("augmentation step: ") + e.what());
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    }
    const bool random = s.op == AugmentStep::Op::undersample || s.op == AugmentStep::Op::oversample ||
                        s.op == AugmentStep::Op::sample;
    if (random && !s.seed)
        throw Error(ErrorKind::InvalidConfig, std::string(op_name(s.op)) + " step requires an explicit seed");
    if (s.op == AugmentStep::Op::sample && !(s.fraction > 0.0 && s.fraction <= 1.0))
        throw Error(ErrorKind::InvalidConfig, "sample fraction must lie in (0, 1]");
    if (s.op == AugmentStep::Op::translate && !s.target)
        throw Error(ErrorKind::InvalidConfig, "translate step requires a target language");
    if (s.op == AugmentStep::Op::merge && s.sources.empty())
        throw Error(ErrorKind::InvalidConfig, "merge step requires sources");
    if (s.op == AugmentStep::Op::style_transfer && s.exemplars.size() != 3)
        throw Error(ErrorKind::InvalidConfig, "style_transfer step requires exactly 3 exemplars");
    return s;
}

}  // namespace

std::vector<Split> ExperimentConfig::effective_eval_splits() const {
    if (!eval_splits.empty()) return eval_splits;
    if (corpus_paths.count(Split::dev_test)) return {Split::dev_test};
    std::vector<Split> out;
    for (const auto& [split, _] : corpus_paths)
        if (split != Split::train && requires_labels(split)) out.push_back(split);
    return out;
}

json config_to_json(const ExperimentConfig& c) {
    json paths = json::object();
    for (const auto& [split, path] : c.corpus_paths) paths[std::string(to_string(split))] = path;
    json steps = json::array();
    for (const auto& s : c.augmentation) steps.push_back(step_to_json(s));
    return json{{"name", c.name},
                {"language", to_string(c.language)},
                {"corpus_paths", paths},
                {"eval_splits", splits_to_json(c.eval_splits)},
                {"predict_splits", splits_to_json(c.predict_splits)},
                {"normalize", c.normalize},
                {"augmentation", steps},
                {"backend", c.backend},
                {"prompt", c.prompt},
                {"free_params", c.free_params},
                {"finetune_system_prompt", c.finetune_system_prompt ? json(*c.finetune_system_prompt) : json(nullptr)},
                {"cache_path", c.cache_path ? json(*c.cache_path) : json(nullptr)}};
}

ExperimentConfig config_from_json(const json& j, const std::string& base_dir) {
    require_known_keys(j, {"name", "language", "corpus_paths", "eval_splits", "predict_splits", "normalize",
                           "augmentation", "backend", "prompt", "free_params", "finetune_system_prompt",
                           "cache_path"},
                       "config");
    ExperimentConfig c;
    try {
        c.name = j.at("name").get<std::string>();
        c.language = language_from_string(j.at("language").get<std::string>());
        if (j.contains("corpus_paths"))
            for (const auto& [split, path] : j.at("corpus_paths").items())
                c.corpus_paths[split_from_string(split)] = resolve_path(path.get<std::string>(), base_dir);
        if (j.contains("eval_splits")) c.eval_splits = splits_from_json(j.at("eval_splits"), "eval_splits");
        if (j.contains("predict_splits"))
            c.predict_splits = splits_from_json(j.at("predict_splits"), "predict_splits");
        if (j.contains("normalize")) c.normalize = j.at("normalize").get<NormalizeConfig>();
        if (j.contains("augmentation")) {
            if (!j.at("augmentation").is_array()) throw Error(ErrorKind::InvalidConfig, "augmentation must be a list");
            for (const auto& s : j.at("augmentation")) c.augmentation.push_back(step_from_json(s, base_dir));
        }
        if (j.contains("backend")) c.backend = j.at("backend").get<BackendConfig>();
        c.prompt.language_name = std::string(language_name(c.language));
        if (j.contains("prompt")) {
            json p = j.at("prompt");
            if (p.is_object() && !p.contains("language_name")) p["language_name"] = c.prompt.language_name;
            c.prompt = p.get<PromptConfig>();
        }
        if (j.contains("free_params")) {
            c.free_params = j.at("free_params");
            if (!c.free_params.is_object()) throw Error(ErrorKind::InvalidConfig, "free_params must be an object");
        }
        if (j.contains("finetune_system_prompt") && !j.at("finetune_system_prompt").is_null())
            c.finetune_system_prompt = j.at("finetune_system_prompt").get<std::string>();
        if (j.contains("cache_path") && !j.at("cache_path").is_null())
            c.cache_path = resolve_path(j.at("cache_path").get<std::string>(), base_dir);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidConfig) throw;
        throw Error(ErrorKind::InvalidConfig, e.what());
    }
    if (c.name.empty()) throw Error(ErrorKind::InvalidConfig, "name must be non-empty");
    for (auto s : c.effective_eval_splits()) {
        if (!c.corpus_paths.count(s))
            throw Error(ErrorKind::InvalidConfig, "eval split " + std::string(to_string(s)) + " has no corpus path");
        if (!requires_labels(s)) throw Error(ErrorKind::InvalidConfig, "the test split carries no gold labels");
    }
    for (auto s : c.predict_splits)
        if (!c.corpus_paths.count(s))
            throw Error(ErrorKind::InvalidConfig, "predict split " + std::string(to_string(s)) + " has no corpus path");
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, path + ": " + e.what());
    }
    return config_from_json(j, fs::path(path).parent_path().string());
}

std::string config_fingerprint(const ExperimentConfig& config) { return sha256_hex(config_to_json(config).dump()); }

// ---------------------------------------------------------------------------
// running

namespace {

void collect_causes(const std::exception& e, std::vector<std::string>& out) {
    out.emplace_back(e.what());
    try {
        std::rethrow_if_nested(e);
    } catch (const std::exception& inner) {
        collect_causes(inner, out);
    } catch (...) {
        out.emplace_back("unknown error");
    }
}

template <typename F>
auto stage(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (...) {
        std::throw_with_nested(std::runtime_error(what));
    }
}

std::vector<Corpus> load_merge_sources(const AugmentStep& step, Split split) {
    std::vector<Corpus> out;
    for (const auto& src : step.sources)
        out.push_back(read_tsv_file(src.path, src.language, split, requires_labels(split)));
    return out;
}

Corpus apply_step(const AugmentStep& step, const Corpus& corpus, const ExperimentConfig& config,
                  Backend& backend, ResponseCache& cache, const RunOptions& options) {
    switch (step.op) {
        case AugmentStep::Op::undersample: return undersample(corpus, *step.seed);
        case AugmentStep::Op::oversample: return oversample(corpus, *step.seed);
        case AugmentStep::Op::sample: return sample_fraction(corpus, step.fraction, *step.seed);
        case AugmentStep::Op::translate: {
            auto translator = make_translator(step.translator, step.endpoint);
            TranslateOptions topts;
            topts.clock = options.clock;
            topts.backoff_base = options.backoff_base;
            topts.cache = &cache;
            return translate_corpus(corpus, *step.target, *translator, topts);
        }
        case AugmentStep::Op::merge: {
            std::vector<Corpus> parts{corpus};
            for (auto& c : load_merge_sources(step, corpus.split())) parts.push_back(std::move(c));
            return merge(parts, config.language);
        }
        case AugmentStep::Op::style_transfer: {
            StyleTransferExemplars ex{{step.exemplars[0], step.exemplars[1], step.exemplars[2]}};
            return style_transfer_corpus(corpus, ex, step.language_name, backend, config.backend, cache,
                                         {options.clock, options.backoff_base});
        }
    }
    return corpus;
}

void remove_quietly(const fs::path& p) {
    std::error_code ec;
    fs::remove(p, ec);
}

}  // namespace

RunRecord run_experiment(const ExperimentConfig& config, RunStore& store, const RunOptions& options) {
    RunRecord record;
    record.name = config.name;
    record.config_fingerprint = config_fingerprint(config);
    record.started = std::chrono::system_clock::now();
    record.run_id = store.reserve_run_id(config.name);
    const fs::path dir = store.run_dir(record.run_id);
    std::vector<fs::path> written;

    try {
        stage("configuration check", [&] {
            config.normalize.validate();
            config.backend.validate();
            config.prompt.validate();
            for (const auto& [split, path] : config.corpus_paths)
                if (!fs::exists(path)) throw Error(ErrorKind::Io, "missing corpus file " + path);
            for (const auto& step : config.augmentation)
                for (const auto& src : step.sources)
                    if (!fs::exists(src.path)) throw Error(ErrorKind::Io, "missing merge source " + src.path);
        });

        std::map<Split, Corpus> corpora;
        for (const auto& [split, path] : config.corpus_paths)
            corpora[split] = stage("loading " + path, [&, split = split, path = path] {
                return read_tsv_file(path, config.language, split, requires_labels(split));
            });

        if (config.normalize.any_enabled())
            for (auto& [split, corpus] : corpora)
                corpus = map_texts(corpus, [&](const std::string& t) { return normalize_text(t, config.normalize); },
                                   "normalize");

        std::unique_ptr<Backend> owned;
        Backend* backend = options.backend;
        if (!backend) {
            owned = make_backend(config.backend);
            backend = owned.get();
        }
        const auto cache_file = resolve_cache_path(
            config.cache_path.value_or((fs::path(store.root()) / "cache.jsonl").string()));
        ResponseCache cache(cache_file);

        std::set<Split> augmented;
        for (std::size_t k = 0; k < config.augmentation.size(); ++k) {
            const auto& step = config.augmentation[k];
            for (auto split : step.splits) {
                auto it = corpora.find(split);
                if (it == corpora.end())
                    throw Error(ErrorKind::MissingSplit, "augmentation step " + std::to_string(k) + " targets " +
                                                             std::string(to_string(split)) + ", which is not loaded");
                it->second = stage("augmentation step " + std::to_string(k) + " (" + std::string(op_name(step.op)) + ")",
                                   [&] { return apply_step(step, it->second, config, *backend, cache, options); });
                augmented.insert(split);
            }
        }
        for (auto split : augmented) {
            const auto name = std::string(to_string(split)) + "-augmented.tsv";
            write_tsv_file((dir / name).string(), corpora.at(split));
            written.push_back(dir / name);
            record.artifact_paths[std::string(to_string(split)) + "_corpus"] = name;
        }
        if (config.finetune_system_prompt) {
            auto it = corpora.find(Split::train);
            if (it == corpora.end()) throw Error(ErrorKind::MissingSplit, "fine-tune export needs a train split");
            const std::string name = "finetune-train.jsonl";
            atomic_write_file((dir / name).string(), export_finetune(it->second, *config.finetune_system_prompt));
            written.push_back(dir / name);
            record.artifact_paths["finetune"] = name;
        }

        BatchStats stats;
        BatchOptions bopts{options.clock, options.backoff_base};
        std::vector<std::pair<Split, bool>> targets;
        for (auto s : config.effective_eval_splits()) targets.emplace_back(s, true);
        for (auto s : config.predict_splits)
            if (std::find_if(targets.begin(), targets.end(), [&](auto& t) { return t.first == s; }) == targets.end())
                targets.emplace_back(s, false);

        for (const auto& [split, evaluate] : targets) {
            const auto& corpus = corpora.at(split);
            const auto split_name = std::string(to_string(split));
            auto preds = stage("predicting " + split_name, [&, &corpus = corpus] {
                return predict_batch(corpus, *backend, config.backend, config.prompt, cache, bopts, &stats);
            });
            const auto file = "preds-" + split_name + ".jsonl";
            atomic_write_file((dir / file).string(), serialize_predictions(preds));
            written.push_back(dir / file);
            record.prediction_paths[split] = file;
            if (evaluate) {
                const auto cm = stage("scoring " + split_name, [&, &corpus = corpus] { return confusion(preds, corpus); });
                record.confusion_by_split[split] = cm;
                record.metrics_by_split[split] = compute_metrics(cm);
            }
        }
        record.cache_hits = stats.cache_hits;
        record.backend_calls = stats.backend_calls;
        record.status = RunStatus::ok;
    } catch (const std::exception& e) {
        record.status = RunStatus::failed;
        collect_causes(e, record.errors);
        record.metrics_by_split.clear();
        record.confusion_by_split.clear();
        record.prediction_paths.clear();
        record.artifact_paths.clear();
        for (const auto& p : written) remove_quietly(p);
        spdlog::error("run {} failed: {}", record.run_id, record.errors.back());
    }
    record.finished = std::chrono::system_clock::now();
    store.save(record);
    return record;
}

// ---------------------------------------------------------------------------
// grids

ExperimentConfig apply_axis(const ExperimentConfig& config, const std::string& path, const json& value) {
    json j = config_to_json(config);
    json* node = &j;
    std::size_t start = 0;
    bool open = false;
    for (;;) {
        const auto dot = path.find('.', start);
        const auto key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty() || !node->is_object()) throw Error(ErrorKind::UnknownAxis, "'" + path + "'");
        if (node == &j && key == "free_params") open = true;
        if (!node->contains(key)) {
            if (!open) throw Error(ErrorKind::UnknownAxis, "'" + path + "'");
            (*node)[key] = dot == std::string::npos ? json() : json::object();
        }
        node = &(*node)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    if (path == "free_params" || (node->is_object() && !open && !value.is_object()))
        throw Error(ErrorKind::UnknownAxis, "'" + path + "' is not a settable field");
    *node = value;
    return config_from_json(j);
}

std::vector<RunRecord> run_grid(const ExperimentConfig& base, const GridAxes& axes, RunStore& store,
                                const RunOptions& options) {
    std::vector<std::pair<std::string, const std::vector<json>*>> dims;
    for (const auto& [path, values] : axes) {
        if (values.empty()) throw Error(ErrorKind::InvalidArgument, "axis '" + path + "' has no values");
        // validates the path against the base config up front
        try {
            apply_axis(base, path, values.front());
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::UnknownAxis) throw;
        }
        dims.emplace_back(path, &values);
    }

    std::vector<RunRecord> out;
    std::vector<std::size_t> idx(dims.size(), 0);
    for (;;) {
        std::string label;
        ExperimentConfig cfg = base;
        std::optional<std::string> cfg_error;
        for (std::size_t d = 0; d < dims.size(); ++d) {
            const auto& v = (*dims[d].second)[idx[d]];
            label += (d ? "," : "") + dims[d].first + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
            if (cfg_error) continue;
            try {
                cfg = apply_axis(cfg, dims[d].first, v);
            } catch (const Error& e) {
                cfg_error = e.what();
            }
        }
        if (!dims.empty()) cfg.name = base.name + "[" + label + "]";
        if (cfg_error) {
            RunRecord failed;
            failed.name = cfg.name;
            failed.config_fingerprint = sha256_hex(label);
            failed.started = failed.finished = std::chrono::system_clock::now();
            failed.run_id = store.reserve_run_id(cfg.name);
            failed.errors = {*cfg_error};
            store.save(failed);
            out.push_back(std::move(failed));
        } else {
            out.push_back(run_experiment(cfg, store, options));
        }

        std::size_t d = dims.size();
        while (d > 0) {
            --d;
            if (++idx[d] < dims[d].second->size()) break;
            idx[d] = 0;
            if (d == 0) return out;
        }
        if (dims.empty()) return out;
    }
}

// ---------------------------------------------------------------------------
// selection and reporting

SelectionMetric selection_metric_from_string(std::string_view s) {
    if (s == "f1_positive" || s == "f1") return SelectionMetric::f1_positive;
    if (s == "f1_macro") return SelectionMetric::f1_macro;
    throw Error(ErrorKind::InvalidArgument, "metric must be f1_positive or f1_macro");
}

Tiebreak tiebreak_from_string(std::string_view s) {
    if (s == "overlap_with_reference") return Tiebreak::overlap_with_reference;
    if (s == "earliest_run") return Tiebreak::earliest_run;
    throw Error(ErrorKind::InvalidArgument, "tiebreak must be overlap_with_reference or earliest_run");
}

std::string select_run(std::span<const RunRecord> runs, const SelectionPolicy& policy,
                       const PredictionSet* reference, const PredictionLoader& loader) {
    if (policy.tiebreak == Tiebreak::overlap_with_reference && !reference)
        throw Error(ErrorKind::MissingReference, "overlap tiebreak needs a reference prediction set");
    if (!(policy.tie_epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tie_epsilon must be >= 0");

    struct Candidate {
        const RunRecord* run;
        double score;
    };
    std::vector<Candidate> ok;
    for (const auto& r : runs) {
        if (r.status != RunStatus::ok) continue;
        auto it = r.metrics_by_split.find(policy.split);
        if (it == r.metrics_by_split.end())
            throw Error(ErrorKind::MissingSplit, "run '" + r.run_id + "' was not evaluated on " +
                                                     std::string(to_string(policy.split)));
        const double score =
            policy.primary_metric == SelectionMetric::f1_positive ? it->second.f1_positive : it->second.f1_macro;
        ok.push_back({&r, score});
    }
    if (ok.empty()) throw Error(ErrorKind::NoSuccessfulRuns, "no run finished with status ok");
    if (ok.size() == 1) return ok.front().run->run_id;

    double best = ok.front().score;
    for (const auto& c : ok) best = std::max(best, c.score);
    std::vector<Candidate> tied;
    for (const auto& c : ok)
        if (c.score >= best - policy.tie_epsilon - 1e-12) tied.push_back(c);

    auto by_metric_then_id = [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.run->run_id < b.run->run_id;
    };
    if (tied.size() == 1) return tied.front().run->run_id;

    if (policy.tiebreak == Tiebreak::earliest_run) {
        auto it = std::min_element(tied.begin(), tied.end(), [](const Candidate& a, const Candidate& b) {
            if (a.run->started != b.run->started) return a.run->started < b.run->started;
            return a.run->run_id < b.run->run_id;
        });
        return it->run->run_id;
    }

    std::vector<std::pair<double, Candidate>> scored;
    for (const auto& c : tied) scored.emplace_back(prediction_overlap(loader(*c.run, policy.split), *reference), c);
    std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return by_metric_then_id(a.second, b.second);
    });
    return scored.front().second.run->run_id;
}

std::string render_report(std::span<const RunRecord> runs, Split split) {
    std::vector<std::array<double, 4>> rows;
    for (const auto& r : runs) {
        auto it = r.metrics_by_split.find(split);
        if (it == r.metrics_by_split.end())
            throw Error(ErrorKind::MissingSplit, "run '" + (r.name.empty() ? r.run_id : r.name) +
                                                     "' has no metrics for " + std::string(to_string(split)));
        const auto m = it->second.rounded();
        rows.push_back({m.accuracy, m.precision, m.recall, m.f1_positive});
    }
    std::array<double, 4> best{-1, -1, -1, -1};
    for (const auto& row : rows)
        for (std::size_t c = 0; c < 4; ++c) best[c] = std::max(best[c], row[c]);

    std::string out = "| Model | Accuracy | Precision | Recall | F1 |\n|:--|--:|--:|--:|--:|\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += "| " + (runs[i].name.empty() ? runs[i].run_id : runs[i].name) + " |";
        for (std::size_t c = 0; c < 4; ++c) {
            const auto cell = format3(rows[i][c]);
            out += rows[i][c] == best[c] ? " **" + cell + "** |" : " " + cell + " |";
        }
        out += "\n";
    }
    return out;
}

}  // namespace claimcheck
