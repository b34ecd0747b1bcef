#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimcheck/backends.hpp"
#include "claimcheck/corpus.hpp"
#include "claimcheck/metrics.hpp"
#include "claimcheck/normalize.hpp"
#include "claimcheck/prompt.hpp"

namespace claimcheck {

struct MergeSource {
    std::string path;
    Language language = Language::en;

    friend bool operator==(const MergeSource&, const MergeSource&) = default;
};

/// One step of a data augmentation recipe, applied to `splits` in order.
struct AugmentStep {
    enum class Op { translate, merge, undersample, oversample, sample, style_transfer };

    Op op = Op::undersample;
    std::vector<Split> splits{Split::train};
    std::optional<std::uint64_t> seed;       // undersample, oversample, sample
    double fraction = 1.0;                   // sample
    std::optional<Language> target;          // translate
    std::string translator = "mock";         // translate
    std::optional<std::string> endpoint;     // translate (http-generic)
    std::vector<MergeSource> sources;        // merge
    std::vector<std::string> exemplars;      // style_transfer, exactly 3
    std::string language_name = "Arabic";   // style_transfer

    friend bool operator==(const AugmentStep&, const AugmentStep&) = default;
};

struct ExperimentConfig {
    std::string name;
    Language language = Language::en;
    std::map<Split, std::string> corpus_paths;
    /// Labeled splits scored against gold. Empty = dev-test when configured,
    /// else every labeled split other than train.
    std::vector<Split> eval_splits;
    /// Splits that only get predictions (e.g. the unlabeled test split).
    std::vector<Split> predict_splits;
    NormalizeConfig normalize;
    std::vector<AugmentStep> augmentation;
    BackendConfig backend;
    PromptConfig prompt;
    /// Knobs handed to outside services; recorded and fingerprinted only.
    nlohmann::json free_params = nlohmann::json::object();
    /// When set, the (augmented) train split is exported as a fine-tune file.
    std::optional<std::string> finetune_system_prompt;
    std::optional<std::string> cache_path;

    /// Splits that will be scored, after applying the default rule.
    std::vector<Split> effective_eval_splits() const;
};

/// Canonical JSON form; every field is present so grid axes can address it.
nlohmann::json config_to_json(const ExperimentConfig& config);
/// Relative corpus paths are resolved against `base_dir` when non-empty.
/// Throws InvalidConfig.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::string& base_dir = {});
ExperimentConfig load_config(const std::string& path);

/// SHA-256 of the canonical JSON dump (keys sorted).
std::string config_fingerprint(const ExperimentConfig& config);

enum class RunStatus { ok, failed };

struct RunRecord {
    std::string run_id;
    std::string name;
    std::string config_fingerprint;
    std::chrono::system_clock::time_point started;
    std::chrono::system_clock::time_point finished;
    std::map<Split, MetricsReport> metrics_by_split;
    std::map<Split, ConfusionMatrix> confusion_by_split;
    /// Relative to the run directory.
    std::map<Split, std::string> prediction_paths;
    std::map<std::string, std::string> artifact_paths;
    RunStatus status = RunStatus::failed;
    /// Outermost error first.
    std::vector<std::string> errors;
    std::size_t cache_hits = 0;
    std::size_t backend_calls = 0;
    /// Directory holding record.json; filled on load and save, not serialized.
    std::string dir;
};

nlohmann::ordered_json record_to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& j);

/// Directory of runs: `<root>/runs/<run_id>/record.json` plus
/// `preds-<split>.jsonl`, and `<root>/runs/index.json` summarizing every run.
class RunStore {
public:
    explicit RunStore(std::string root);

    const std::string& root() const noexcept { return root_; }
    std::string runs_dir() const;
    std::string run_dir(const std::string& run_id) const;

    /// Creates a fresh `<slug(name)>-NNNN` directory and returns its id.
    std::string reserve_run_id(const std::string& name);
    /// Writes record.json atomically and refreshes the index.
    void save(RunRecord& record);
    RunRecord load(const std::string& run_id) const;
    /// Every run with a record.json, ordered by run id.
    std::vector<RunRecord> list() const;

private:
    void update_index(const RunRecord& record);
    std::string root_;
};

struct RunOptions {
    /// Used instead of make_backend(config.backend) when set.
    Backend* backend = nullptr;
    Clock* clock = &SystemClock::instance();
    Clock::duration backoff_base{500};
};

/// normalize -> augmentation recipe -> predictions per split -> metrics,
/// persisted under the store. Never throws for pipeline errors: they produce a
/// failed record with the cause chain and no prediction files.
RunRecord run_experiment(const ExperimentConfig& config, RunStore& store, const RunOptions& options = {});

/// Value lists per dotted config path ("prompt.parse_mode",
/// "free_params.lr", ...). Keys are iterated in lexicographic order.
using GridAxes = std::map<std::string, std::vector<nlohmann::json>>;

/// Copy of `config` with one dotted path set. Throws UnknownAxis for a path
/// the config does not have (free_params.* is open), InvalidConfig for a bad
/// value.
ExperimentConfig apply_axis(const ExperimentConfig& config, const std::string& path, const nlohmann::json& value);

/// One run per point of the Cartesian product, last axis varying fastest,
/// executed sequentially. Failed cells yield failed records; the grid goes on.
std::vector<RunRecord> run_grid(const ExperimentConfig& base, const GridAxes& axes, RunStore& store,
                                const RunOptions& options = {});

enum class SelectionMetric { f1_positive, f1_macro };
enum class Tiebreak { overlap_with_reference, earliest_run };

SelectionMetric selection_metric_from_string(std::string_view s);
Tiebreak tiebreak_from_string(std::string_view s);

struct SelectionPolicy {
    SelectionMetric primary_metric = SelectionMetric::f1_positive;
    Split split = Split::dev_test;
    double tie_epsilon = 0.002;
    Tiebreak tiebreak = Tiebreak::overlap_with_reference;
};

/// Loads a run's predictions for a split.
using PredictionLoader = std::function<PredictionSet(const RunRecord&, Split)>;
PredictionSet load_run_predictions(const RunRecord& record, Split split);

/// Best ok run by the policy metric. Runs within tie_epsilon of the best are
/// tied; ties go to the highest overlap with `reference` (then metric, then
/// run id) or to the earliest start (then run id). Errors: NoSuccessfulRuns,
/// MissingReference, MissingSplit.
std::string select_run(std::span<const RunRecord> runs, const SelectionPolicy& policy,
                       const PredictionSet* reference, const PredictionLoader& loader = load_run_predictions);

/// Markdown table (Model, Accuracy, Precision, Recall, F1) in input order,
/// three decimals half-up, the best displayed value of each column in bold.
/// Throws MissingSplit if a run has no metrics for the split.
std::string render_report(std::span<const RunRecord> runs, Split split);

}  // namespace claimcheck
