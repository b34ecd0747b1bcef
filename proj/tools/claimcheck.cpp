// claimcheck: command-line front end for the check-worthiness harness.
//
// Exit codes: 0 success, 1 domain error, 2 usage error. Results go to stdout,
// logs to stderr.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "claimcheck/annotate.hpp"
#include "claimcheck/augment.hpp"
#include "claimcheck/backends.hpp"
#include "claimcheck/config_json.hpp"
#include "claimcheck/corpus.hpp"
#include "claimcheck/error.hpp"
#include "claimcheck/experiment.hpp"
#include "claimcheck/finetune.hpp"
#include "claimcheck/io.hpp"
#include "claimcheck/labeling_io.hpp"
#include "claimcheck/metrics.hpp"
#include "claimcheck/normalize.hpp"
#include "claimcheck/prompt.hpp"

namespace cc = claimcheck;
namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

std::uint64_t require_seed(const Globals& g) {
    if (!g.seed) throw UsageError("this command draws random samples: pass --seed <u64>");
    return *g.seed;
}

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return cc::read_file(path);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    cc::atomic_write_file(path, content);
}

/// --input/--language/--split triple shared by the corpus commands.
struct CorpusArgs {
    std::string input = "-";
    std::string language;
    std::string split;

    void add(CLI::App* cmd) {
        cmd->add_option("-i,--input", input, "TSV file ('-' for stdin)");
        cmd->add_option("-l,--language", language, "language code: en, nl, ar, es")->required();
        cmd->add_option("-s,--split", split, "train, dev, dev-test or test")->required();
    }

    cc::Corpus load() const {
        const auto lang = cc::language_from_string(language);
        const auto sp = cc::split_from_string(split);
        return cc::parse_tsv(read_input(input), lang, sp, cc::requires_labels(sp), "file:" + input);
    }
};

nlohmann::json load_config_json(const Globals& g) {
    if (g.config_path.empty()) return nlohmann::json::object();
    try {
        return nlohmann::json::parse(cc::read_file(g.config_path));
    } catch (const nlohmann::json::exception& e) {
        throw cc::Error(cc::ErrorKind::InvalidConfig, g.config_path + ": " + e.what());
    }
}

ojson counts_json(const cc::ClassCounts& c) { return ojson{{"yes", c.yes}, {"no", c.no}, {"total", c.total}}; }

cc::Labeling load_labeling_any(const std::string& path) {
    const auto text = cc::read_file(path);
    if (fs::path(path).extension() == ".json") return cc::parse_annotation(text).labels;
    return cc::parse_predictions(text).labels();
}

std::vector<cc::RunRecord> pick_runs(const cc::RunStore& store, const std::vector<std::string>& ids) {
    if (ids.empty()) return store.list();
    std::vector<cc::RunRecord> out;
    for (const auto& id : ids) out.push_back(store.load(id));
    return out;
}

cc::GridAxes parse_axes(const std::vector<std::string>& specs, const std::string& axes_file) {
    cc::GridAxes axes;
    if (!axes_file.empty()) {
        const auto j = nlohmann::json::parse(cc::read_file(axes_file));
        for (const auto& [k, v] : j.items()) axes[k] = v.get<std::vector<nlohmann::json>>();
    }
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("axis must look like path=v1,v2: " + spec);
        std::vector<nlohmann::json> values;
        std::string rest = spec.substr(eq + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            auto comma = rest.find(',', start);
            if (comma == std::string::npos) comma = rest.size();
            const auto token = rest.substr(start, comma - start);
            auto parsed = nlohmann::json::parse(token, nullptr, false);
            values.push_back(parsed.is_discarded() ? nlohmann::json(token) : parsed);
            start = comma + 1;
        }
        axes[spec.substr(0, eq)] = std::move(values);
    }
    return axes;
}

}  // namespace

int main(int argc, char** argv) {
    auto logger = spdlog::stderr_color_mt("claimcheck");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");

    CLI::App app{"Check-worthiness claim detection harness"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "experiment / module configuration (JSON)");
    app.add_option("--seed", g.seed, "seed for every random choice");
    app.add_flag("--quiet", g.quiet, "only log warnings and errors")
        ->each([](const std::string&) { spdlog::set_level(spdlog::level::warn); })
        ->trigger_on_parse();

    // ingest -----------------------------------------------------------------
    CorpusArgs ingest_args;
    std::string ingest_out;
    auto* ingest = app.add_subcommand("ingest", "validate a TSV corpus and write it in canonical form");
    ingest_args.add(ingest);
    ingest->add_option("-o,--output", ingest_out, "output TSV (default stdout)");
    ingest->callback([&] {
        const auto c = ingest_args.load();
        spdlog::info("{} instances", c.size());
        write_output(ingest_out, cc::serialize_tsv(c));
    });

    // stats ------------------------------------------------------------------
    CorpusArgs stats_args;
    auto* stats = app.add_subcommand("stats", "class counts of a labeled corpus");
    stats_args.add(stats);
    stats->callback([&] { std::cout << counts_json(cc::class_counts(stats_args.load())).dump() << "\n"; });

    // resample ---------------------------------------------------------------
    CorpusArgs resample_args;
    std::string resample_method, resample_out;
    auto* resample = app.add_subcommand("resample", "balance classes by under- or oversampling");
    resample_args.add(resample);
    resample->add_option("-m,--method", resample_method, "under or over")
        ->required()
        ->check(CLI::IsMember({"under", "over"}));
    resample->add_option("-o,--output", resample_out, "output TSV (default stdout)");
    resample->callback([&] {
        const auto seed = require_seed(g);
        const auto c = resample_args.load();
        const auto out = resample_method == "under" ? cc::undersample(c, seed) : cc::oversample(c, seed);
        const auto counts = cc::class_counts(out);
        spdlog::info("resampled to yes={} no={}", counts.yes, counts.no);
        write_output(resample_out, cc::serialize_tsv(out));
    });

    // sample -----------------------------------------------------------------
    CorpusArgs sample_args;
    double sample_fraction = 0.1;
    std::string sample_out;
    auto* sample = app.add_subcommand("sample", "uniform random fraction of a corpus, order kept");
    sample_args.add(sample);
    sample->add_option("-f,--fraction", sample_fraction, "fraction in (0, 1]")->required();
    sample->add_option("-o,--output", sample_out, "output TSV (default stdout)");
    sample->callback([&] {
        const auto seed = require_seed(g);
        write_output(sample_out, cc::serialize_tsv(cc::sample_fraction(sample_args.load(), sample_fraction, seed)));
    });

    // merge ------------------------------------------------------------------
    std::vector<std::string> merge_inputs;
    std::string merge_split, merge_target, merge_out;
    auto* merge = app.add_subcommand("merge", "concatenate corpora with language-prefixed ids");
    merge->add_option("-i,--input", merge_inputs, "lang:path, repeatable, in merge order")->required();
    merge->add_option("-s,--split", merge_split, "split of every input")->required();
    merge->add_option("-t,--target", merge_target, "language tag of the merged corpus")->required();
    merge->add_option("-o,--output", merge_out, "output TSV (default stdout)");
    merge->callback([&] {
        const auto sp = cc::split_from_string(merge_split);
        std::vector<cc::Corpus> parts;
        for (const auto& spec : merge_inputs) {
            const auto colon = spec.find(':');
            if (colon == std::string::npos) throw UsageError("merge input must look like lang:path, got " + spec);
            const auto lang = cc::language_from_string(spec.substr(0, colon));
            const auto path = spec.substr(colon + 1);
            parts.push_back(cc::parse_tsv(cc::read_file(path), lang, sp, cc::requires_labels(sp), "file:" + path));
        }
        write_output(merge_out, cc::serialize_tsv(cc::merge(parts, cc::language_from_string(merge_target))));
    });

    // normalize --------------------------------------------------------------
    CorpusArgs norm_args;
    cc::NormalizeConfig norm_cfg;
    std::string norm_out;
    auto* normalize = app.add_subcommand("normalize", "mask usernames/URLs and collapse whitespace");
    norm_args.add(normalize);
    auto* mu = normalize->add_flag("--mask-usernames", norm_cfg.mask_usernames);
    auto* ml = normalize->add_flag("--mask-urls", norm_cfg.mask_urls);
    auto* cw = normalize->add_flag("--collapse-whitespace", norm_cfg.collapse_whitespace);
    normalize->add_option("-o,--output", norm_out, "output TSV (default stdout)");
    normalize->callback([&] {
        auto cfg = norm_cfg;
        const auto j = load_config_json(g);
        if (j.contains("normalize") && mu->count() + ml->count() + cw->count() == 0)
            cfg = j.at("normalize").get<cc::NormalizeConfig>();
        cfg.validate();
        const auto c = norm_args.load();
        write_output(norm_out, cc::serialize_tsv(cc::map_texts(
                                   c, [&](const std::string& t) { return cc::normalize_text(t, cfg); }, "normalize")));
    });

    // translate --------------------------------------------------------------
    CorpusArgs tr_args;
    std::string tr_target, tr_translator = "mock", tr_endpoint, tr_out;
    int tr_concurrency = 4;
    auto* translate = app.add_subcommand("translate", "machine-translate a corpus (writes a provenance sidecar)");
    tr_args.add(translate);
    translate->add_option("-t,--target", tr_target, "target language code")->required();
    translate->add_option("--translator", tr_translator, "mock or http-generic");
    translate->add_option("--endpoint", tr_endpoint, "translation service URL (http-generic)");
    translate->add_option("--concurrency", tr_concurrency, "parallel requests")->check(CLI::PositiveNumber);
    translate->add_option("-o,--output", tr_out, "output TSV")->required();
    translate->callback([&] {
        const auto c = tr_args.load();
        const auto target = cc::language_from_string(tr_target);
        auto translator = cc::make_translator(
            tr_translator, tr_endpoint.empty() ? std::nullopt : std::optional<std::string>(tr_endpoint));
        cc::ResponseCache cache(cc::resolve_cache_path(".claimcheck-cache.jsonl"));
        cc::TranslateOptions opts;
        opts.concurrency = tr_concurrency;
        opts.cache = &cache;
        const auto out = cc::translate_corpus(c, target, *translator, opts);
        write_output(tr_out, cc::serialize_tsv(out));
        cc::atomic_write_file(tr_out + ".provenance.json",
                              cc::translation_sidecar_json(tr_args.input, c.language(), target, translator->id(),
                                                           cc::utc_now()));
    });

    // prompt-preview ---------------------------------------------------------
    std::string pp_text, pp_lang = "English", pp_template = "cot-v1";
    std::vector<std::string> pp_exemplars;
    auto* preview = app.add_subcommand("prompt-preview", "render the check-worthiness or style-transfer prompt");
    preview->add_option("-t,--text", pp_text, "instance text")->required();
    preview->add_option("--language-name", pp_lang, "language name substituted into the prompt");
    preview->add_option("--template", pp_template, "template id (file stem under templates/)");
    preview->add_option("--exemplar", pp_exemplars, "style-transfer example tweet (give exactly 3)");
    preview->callback([&] {
        if (!pp_exemplars.empty()) {
            if (pp_exemplars.size() != 3) throw UsageError("style-transfer preview needs exactly 3 --exemplar values");
            cc::StyleTransferExemplars ex{{pp_exemplars[0], pp_exemplars[1], pp_exemplars[2]}};
            std::cout << cc::build_style_transfer_prompt(pp_text, ex, pp_lang);
        } else {
            cc::PromptConfig cfg;
            cfg.language_name = pp_lang;
            cfg.template_id = pp_template;
            std::cout << cc::build_checkworthy_prompt(pp_text, cfg);
        }
        std::cout << "\n";
    });

    // predict ----------------------------------------------------------------
    CorpusArgs pred_args;
    std::string pred_out;
    auto* predict = app.add_subcommand("predict", "query the configured backend for every instance");
    pred_args.add(predict);
    predict->add_option("-o,--output", pred_out, "prediction JSONL (default stdout)");
    predict->callback([&] {
        const auto j = load_config_json(g);
        cc::BackendConfig backend = j.contains("backend") ? j.at("backend").get<cc::BackendConfig>() : cc::BackendConfig{};
        const auto c = pred_args.load();
        cc::PromptConfig prompt;
        prompt.language_name = std::string(cc::language_name(c.language()));
        if (j.contains("prompt")) {
            auto p = j.at("prompt");
            if (!p.contains("language_name")) p["language_name"] = prompt.language_name;
            prompt = p.get<cc::PromptConfig>();
        }
        std::string cache_default = ".claimcheck-cache.jsonl";
        if (j.contains("cache_path") && j.at("cache_path").is_string()) cache_default = j.at("cache_path");
        cc::ResponseCache cache(cc::resolve_cache_path(cache_default));
        auto b = cc::make_backend(backend);
        cc::BatchStats st;
        const auto preds = cc::predict_batch(c, *b, backend, prompt, cache, {}, &st);
        spdlog::info("{} predictions, {} from cache, {} backend calls", preds.predictions.size(), st.cache_hits,
                     st.backend_calls);
        write_output(pred_out, cc::serialize_predictions(preds));
    });

    // evaluate ---------------------------------------------------------------
    CorpusArgs eval_args;
    std::string eval_preds;
    auto* evaluate = app.add_subcommand("evaluate", "score predictions against a gold corpus");
    eval_args.add(evaluate);
    evaluate->add_option("-p,--predictions", eval_preds, "prediction JSONL")->required();
    evaluate->callback([&] {
        const auto gold = eval_args.load();
        const auto cm = cc::confusion(cc::parse_predictions(cc::read_file(eval_preds)), gold);
        auto out = cc::metrics_to_json(cc::compute_metrics(cm));
        out["confusion"] = cc::confusion_to_json(cm);
        std::cout << out.dump(2) << "\n";
    });

    // compare ----------------------------------------------------------------
    std::string cmp_a, cmp_b;
    auto* compare = app.add_subcommand("compare", "prediction overlap and Cohen's kappa of two labelings");
    compare->add_option("a", cmp_a, "predictions/labeling JSONL or annotation JSON")->required();
    compare->add_option("b", cmp_b, "predictions/labeling JSONL or annotation JSON")->required();
    compare->callback([&] {
        const auto a = load_labeling_any(cmp_a);
        const auto b = load_labeling_any(cmp_b);
        const auto k = cc::cohens_kappa(a, b);
        ojson out{{"items", a.size()},
                  {"overlap", cc::label_overlap(a, b)},
                  {"observed_agreement", k.observed_agreement},
                  {"expected_agreement", k.expected_agreement},
                  {"kappa", k.kappa},
                  {"degenerate_marginals", k.degenerate_marginals}};
        std::cout << out.dump(2) << "\n";
    });

    // adjudicate -------------------------------------------------------------
    std::vector<std::string> adj_inputs;
    std::string adj_out;
    auto* adjudicate = app.add_subcommand("adjudicate", "majority label per id over an odd number of annotators");
    adjudicate->add_option("inputs", adj_inputs, "annotation JSON or labeling JSONL files")->required();
    adjudicate->add_option("-o,--output", adj_out, "labeling JSONL (default stdout)");
    adjudicate->callback([&] {
        std::vector<cc::Labeling> anns;
        for (const auto& p : adj_inputs) anns.push_back(load_labeling_any(p));
        write_output(adj_out, cc::serialize_labeling(cc::majority_adjudicate(anns)));
    });

    // annotate ---------------------------------------------------------------
    CorpusArgs ann_args;
    std::string ann_id, ann_out;
    auto* annotate = app.add_subcommand("annotate", "interactive y/n annotation of a sample (resumable)");
    annotate->add_option("-i,--input", ann_args.input, "sample TSV")->required();
    annotate->add_option("-l,--language", ann_args.language, "language code")->required();
    annotate->add_option("--annotator", ann_id, "annotator id")->required();
    annotate->add_option("-o,--output", ann_out, "annotation JSON (resumed if present)")->required();
    annotate->callback([&] {
        const auto lang = cc::language_from_string(ann_args.language);
        const auto c = cc::parse_tsv(cc::read_file(ann_args.input), lang, cc::Split::test, false);
        // labels present in the sample are hidden from the annotator
        std::vector<cc::LabeledInstance> hidden = c.instances();
        for (auto& inst : hidden) inst.label.reset();
        cc::TerminalConsole console;
        const auto r = cc::annotate_session(cc::Corpus::make(lang, cc::Split::test, std::move(hidden)), ann_id,
                                            console, ann_out);
        spdlog::info("{} answers recorded, {} of {} labeled{}", r.answered, r.file.labels.size(), c.size(),
                     r.quit ? " (session paused)" : "");
    });

    // run --------------------------------------------------------------------
    std::string store_root = ".";
    auto* run = app.add_subcommand("run", "execute the experiment in --config and store a run record");
    run->add_option("--store", store_root, "run store root (runs/ is created inside)");
    run->callback([&] {
        if (g.config_path.empty()) throw UsageError("run needs --config");
        const auto cfg = cc::load_config(g.config_path);
        cc::RunStore store(store_root);
        const auto rec = cc::run_experiment(cfg, store);
        std::cout << cc::record_to_json(rec).dump(2) << "\n";
        if (rec.status != cc::RunStatus::ok) throw cc::Error(cc::ErrorKind::InvalidArgument, "run failed");
    });

    // grid -------------------------------------------------------------------
    std::vector<std::string> grid_axes;
    std::string grid_axes_file;
    auto* grid = app.add_subcommand("grid", "run the Cartesian product of config axes");
    grid->add_option("--store", store_root, "run store root");
    grid->add_option("--axis", grid_axes, "dotted.path=v1,v2 (values parsed as JSON when possible)");
    grid->add_option("--axes", grid_axes_file, "JSON file mapping paths to value lists");
    grid->callback([&] {
        if (g.config_path.empty()) throw UsageError("grid needs --config");
        const auto cfg = cc::load_config(g.config_path);
        cc::RunStore store(store_root);
        const auto recs = cc::run_grid(cfg, parse_axes(grid_axes, grid_axes_file), store);
        ojson out = ojson::array();
        for (const auto& r : recs)
            out.push_back({{"run_id", r.run_id}, {"name", r.name}, {"status", r.status == cc::RunStatus::ok ? "ok" : "failed"}});
        std::cout << out.dump(2) << "\n";
    });

    // select -----------------------------------------------------------------
    std::string sel_split = "dev-test", sel_metric = "f1_positive", sel_tiebreak = "overlap_with_reference",
                sel_reference;
    double sel_eps = 0.002;
    std::vector<std::string> sel_runs;
    auto* select = app.add_subcommand("select", "pick the best run under a selection policy");
    select->add_option("--store", store_root, "run store root");
    select->add_option("--split", sel_split, "split the metric is read from");
    select->add_option("--metric", sel_metric, "f1_positive or f1_macro");
    select->add_option("--epsilon", sel_eps, "tie window")->check(CLI::NonNegativeNumber);
    select->add_option("--tiebreak", sel_tiebreak, "overlap_with_reference or earliest_run");
    select->add_option("--reference", sel_reference, "reference prediction JSONL for the overlap tiebreak");
    select->add_option("--runs", sel_runs, "run ids (default: every run in the store)");
    select->callback([&] {
        cc::RunStore store(store_root);
        const auto runs = pick_runs(store, sel_runs);
        cc::SelectionPolicy policy{cc::selection_metric_from_string(sel_metric), cc::split_from_string(sel_split),
                                   sel_eps, cc::tiebreak_from_string(sel_tiebreak)};
        std::optional<cc::PredictionSet> ref;
        if (!sel_reference.empty()) ref = cc::parse_predictions(cc::read_file(sel_reference));
        std::cout << cc::select_run(runs, policy, ref ? &*ref : nullptr) << "\n";
    });

    // report -----------------------------------------------------------------
    std::string rep_split = "dev-test";
    std::vector<std::string> rep_runs;
    auto* report = app.add_subcommand("report", "markdown metrics table for runs");
    report->add_option("--store", store_root, "run store root");
    report->add_option("--split", rep_split, "split to report");
    report->add_option("--runs", rep_runs, "run ids in row order (default: every ok run)");
    report->callback([&] {
        cc::RunStore store(store_root);
        auto runs = pick_runs(store, rep_runs);
        if (rep_runs.empty())
            std::erase_if(runs, [](const cc::RunRecord& r) { return r.status != cc::RunStatus::ok; });
        std::cout << cc::render_report(runs, cc::split_from_string(rep_split));
    });

    // export-finetune --------------------------------------------------------
    CorpusArgs ft_args;
    std::string ft_system, ft_out;
    auto* export_ft = app.add_subcommand("export-finetune", "chat fine-tuning JSONL from a labeled corpus");
    ft_args.add(export_ft);
    export_ft->add_option("--system-prompt", ft_system, "system message of every record")->required();
    export_ft->add_option("-o,--output", ft_out, "output JSONL (default stdout)");
    export_ft->callback([&] { write_output(ft_out, cc::export_finetune(ft_args.load(), ft_system)); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const cc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!e.detail().empty()) std::cerr << "  detail: " << e.detail() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
