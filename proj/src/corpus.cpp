#include "claimcheck/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "claimcheck/error.hpp"
#include "claimcheck/rng.hpp"

namespace claimcheck {

std::string_view to_string(Label label) noexcept { return label == Label::Yes ? "Yes" : "No"; }

std::optional<Label> label_from_string(std::string_view s) noexcept {
    if (s == "Yes") return Label::Yes;
    if (s == "No") return Label::No;
    return std::nullopt;
}

std::string_view to_string(Language lang) noexcept {
    switch (lang) {
        case Language::en: return "en";
        case Language::nl: return "nl";
        case Language::ar: return "ar";
        case Language::es: return "es";
    }
    return "en";
}

Language language_from_string(std::string_view code) {
    if (code == "en") return Language::en;
    if (code == "nl") return Language::nl;
    if (code == "ar") return Language::ar;
    if (code == "es") return Language::es;
    throw Error(ErrorKind::InvalidArgument, "unknown language code '" + std::string(code) + "'");
}

std::string_view language_name(Language lang) noexcept {
    switch (lang) {
        case Language::en: return "English";
        case Language::nl: return "Dutch";
        case Language::ar: return "Arabic";
        case Language::es: return "Spanish";
    }
    return "English";
}

std::string_view to_string(Split split) noexcept {
    switch (split) {
        case Split::train: return "train";
        case Split::dev: return "dev";
        case Split::dev_test: return "dev-test";
        case Split::test: return "test";
    }
    return "train";
}

Split split_from_string(std::string_view s) {
    if (s == "train") return Split::train;
    if (s == "dev") return Split::dev;
    if (s == "dev-test") return Split::dev_test;
    if (s == "test") return Split::test;
    throw Error(ErrorKind::InvalidArgument, "unknown split '" + std::string(s) + "'");
}

namespace {

bool has_line_break_or_tab(std::string_view s) {
    return s.find_first_of("\t\n\r") != std::string_view::npos;
}

void append_note(std::string& prov, std::string_view note) {
    if (!prov.empty()) prov += "; ";
    prov += note;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

Corpus Corpus::make(Language language, Split split, std::vector<LabeledInstance> instances,
                    std::string provenance) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(instances.size());
    for (auto& inst : instances) {
        if (inst.id.empty() || has_line_break_or_tab(inst.id))
            throw Error(ErrorKind::InvalidArgument, "instance id must be a non-empty token");
        if (inst.text.empty() || has_line_break_or_tab(inst.text))
            throw Error(ErrorKind::InvalidArgument,
                        "instance '" + inst.id + "' text must be non-empty with no tab/newline");
        if (requires_labels(split) && !inst.label)
            throw Error(ErrorKind::UnlabeledCorpus,
                        "instance '" + inst.id + "' has no label in split " + std::string(to_string(split)));
        if (inst.language != language)
            throw Error(ErrorKind::InvalidArgument,
                        "instance '" + inst.id + "' language differs from corpus language");
        if (!seen.insert(inst.id).second)
            throw Error(ErrorKind::DuplicateId, "duplicate id '" + inst.id + "'");
    }
    Corpus c;
    c.language_ = language;
    c.split_ = split;
    c.instances_ = std::move(instances);
    c.provenance_ = std::move(provenance);
    return c;
}

bool Corpus::fully_labeled() const noexcept {
    return std::all_of(instances_.begin(), instances_.end(),
                       [](const auto& i) { return i.label.has_value(); });
}

bool Corpus::any_labeled() const noexcept {
    return std::any_of(instances_.begin(), instances_.end(),
                       [](const auto& i) { return i.label.has_value(); });
}

Corpus parse_tsv(std::string_view raw, Language language, Split split, bool labeled,
                 std::string provenance) {
    std::vector<std::string_view> lines;
    {
        std::size_t start = 0;
        while (start < raw.size()) {
            auto end = raw.find('\n', start);
            if (end == std::string_view::npos) end = raw.size();
            auto line = raw.substr(start, end - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.push_back(line);
            start = end + 1;
        }
    }
    if (lines.empty()) throw Error(ErrorKind::EmptyCorpus, "missing header line");

    const auto header = split_tabs(lines[0]);
    auto column = [&](std::string_view name) -> std::optional<std::size_t> {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) return std::nullopt;
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto id_col = column(kIdColumn);
    const auto text_col = column(kTextColumn);
    const auto label_col = column(kLabelColumn);
    if (!id_col || !text_col)
        throw Error(ErrorKind::MalformedRow, "header must name sentence_id and text columns");
    if (labeled && !label_col)
        throw Error(ErrorKind::MalformedRow, "header must name a class_label column");

    std::vector<LabeledInstance> instances;
    instances.reserve(lines.size() - 1);
    std::unordered_set<std::string> seen;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const auto cells = split_tabs(lines[ln]);
        const auto where = "line " + std::to_string(ln + 1);
        if (cells.size() != header.size())
            throw Error(ErrorKind::MalformedRow, where + ": expected " + std::to_string(header.size()) +
                                                     " columns, got " + std::to_string(cells.size()));
        LabeledInstance inst;
        inst.id = std::string(cells[*id_col]);
        inst.text = std::string(cells[*text_col]);
        inst.language = language;
        if (inst.id.empty()) throw Error(ErrorKind::MalformedRow, where + ": empty id");
        if (inst.text.empty()) throw Error(ErrorKind::MalformedRow, where + ": empty text");
        if (label_col) {
            const auto cell = cells[*label_col];
            if (!cell.empty() || labeled) {
                auto label = label_from_string(cell);
                if (!label)
                    throw Error(ErrorKind::InvalidLabel, where + ": label '" + std::string(cell) + "'");
                inst.label = label;
            }
        }
        if (!seen.insert(inst.id).second)
            throw Error(ErrorKind::DuplicateId, where + ": duplicate id '" + inst.id + "'");
        instances.push_back(std::move(inst));
    }
    if (instances.empty()) throw Error(ErrorKind::EmptyCorpus, "no data rows");
    return Corpus::make(language, split, std::move(instances), std::move(provenance));
}

Corpus parse_tsv(std::istream& in, Language language, Split split, bool labeled,
                 std::string provenance) {
    std::string raw{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_tsv(raw, language, split, labeled, std::move(provenance));
}

Corpus read_tsv_file(const std::string& path, Language language, Split split, bool labeled) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    return parse_tsv(in, language, split, labeled, "file:" + path);
}

std::string serialize_tsv(const Corpus& corpus) {
    const bool with_label = corpus.any_labeled();
    std::string out;
    out += kIdColumn;
    out += '\t';
    out += kTextColumn;
    if (with_label) {
        out += '\t';
        out += kLabelColumn;
    }
    out += '\n';
    for (const auto& inst : corpus.instances()) {
        out += inst.id;
        out += '\t';
        out += inst.text;
        if (with_label) {
            out += '\t';
            if (inst.label) out += to_string(*inst.label);
        }
        out += '\n';
    }
    return out;
}

void write_tsv_file(const std::string& path, const Corpus& corpus) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::WriteFailure, "cannot write " + path);
    out << serialize_tsv(corpus);
    if (!out) throw Error(ErrorKind::WriteFailure, "write failed for " + path);
}

Labeling labeling_of(const Corpus& corpus) {
    Labeling out;
    for (const auto& inst : corpus.instances()) {
        if (!inst.label) throw Error(ErrorKind::UnlabeledCorpus, "instance '" + inst.id + "' has no label");
        out.emplace(inst.id, *inst.label);
    }
    return out;
}

ClassCounts class_counts(const Corpus& corpus) {
    ClassCounts c;
    for (const auto& inst : corpus.instances()) {
        if (!inst.label) throw Error(ErrorKind::UnlabeledCorpus, "instance '" + inst.id + "' has no label");
        (*inst.label == Label::Yes ? c.yes : c.no) += 1;
    }
    c.total = c.yes + c.no;
    return c;
}

namespace {

struct ClassSplit {
    std::vector<std::size_t> yes;
    std::vector<std::size_t> no;
};

ClassSplit split_by_class(const Corpus& corpus) {
    ClassSplit s;
    const auto& inst = corpus.instances();
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (!inst[i].label)
            throw Error(ErrorKind::UnlabeledCorpus, "instance '" + inst[i].id + "' has no label");
        (*inst[i].label == Label::Yes ? s.yes : s.no).push_back(i);
    }
    if (s.yes.empty() || s.no.empty())
        throw Error(ErrorKind::SingleClassCorpus, "resampling needs both classes present");
    return s;
}

}  // namespace

Corpus undersample(const Corpus& corpus, std::uint64_t seed) {
    const auto classes = split_by_class(corpus);
    if (classes.yes.size() == classes.no.size()) return corpus;
    const auto& majority = classes.yes.size() > classes.no.size() ? classes.yes : classes.no;
    const auto& minority = classes.yes.size() > classes.no.size() ? classes.no : classes.yes;

    SeededRng rng(seed);
    std::vector<bool> keep(corpus.size(), false);
    for (auto i : minority) keep[i] = true;
    for (auto pick : rng.choose_sorted(majority.size(), minority.size())) keep[majority[pick]] = true;

    std::vector<LabeledInstance> out;
    out.reserve(2 * minority.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (keep[i]) out.push_back(corpus.instances()[i]);
    std::string prov = corpus.provenance();
    append_note(prov, "undersample(seed=" + std::to_string(seed) + ")");
    return Corpus::make(corpus.language(), corpus.split(), std::move(out), std::move(prov));
}

Corpus oversample(const Corpus& corpus, std::uint64_t seed) {
    const auto classes = split_by_class(corpus);
    if (classes.yes.size() == classes.no.size()) return corpus;
    const auto& majority = classes.yes.size() > classes.no.size() ? classes.yes : classes.no;
    const auto& minority = classes.yes.size() > classes.no.size() ? classes.no : classes.yes;

    SeededRng rng(seed);
    std::vector<std::size_t> copies(corpus.size(), 0);
    for (std::size_t k = minority.size(); k < majority.size(); ++k)
        ++copies[minority[rng.below(minority.size())]];

    std::unordered_set<std::string> ids;
    for (const auto& inst : corpus.instances()) ids.insert(inst.id);

    std::vector<LabeledInstance> out;
    out.reserve(2 * majority.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& inst = corpus.instances()[i];
        out.push_back(inst);
        std::size_t suffix = 0;
        for (std::size_t c = 0; c < copies[i]; ++c) {
            std::string id;
            do {
                id = inst.id + "#" + std::to_string(++suffix);
            } while (ids.count(id));
            ids.insert(id);
            LabeledInstance dup = inst;
            dup.id = std::move(id);
            out.push_back(std::move(dup));
        }
    }
    std::string prov = corpus.provenance();
    append_note(prov, "oversample(seed=" + std::to_string(seed) + ")");
    return Corpus::make(corpus.language(), corpus.split(), std::move(out), std::move(prov));
}

Corpus merge(std::span<const Corpus> corpora, Language target) {
    if (corpora.empty()) throw Error(ErrorKind::EmptyInput, "merge needs at least one corpus");
    const Split split = corpora.front().split();
    std::vector<LabeledInstance> out;
    std::string prov = "merge(";
    bool first = true;
    for (const auto& c : corpora) {
        if (c.split() != split)
            throw Error(ErrorKind::MixedSplits, "cannot merge " + std::string(to_string(split)) + " with " +
                                                    std::string(to_string(c.split())));
        const std::string prefix = std::string(to_string(c.language())) + ":";
        for (const auto& inst : c.instances()) {
            LabeledInstance copy = inst;
            copy.id = prefix + inst.id;
            copy.language = target;
            out.push_back(std::move(copy));
        }
        if (!first) prov += ", ";
        first = false;
        prov += to_string(c.language());
        prov += "[";
        prov += c.provenance();
        prov += "]";
    }
    prov += ")";
    return Corpus::make(target, split, std::move(out), std::move(prov));
}

std::size_t sample_size(std::size_t n, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw Error(ErrorKind::FractionOutOfRange, "fraction must lie in (0, 1]");
    // the epsilon absorbs binary representation error such as 0.35 * 10 = 3.4999...
    const double scaled = fraction * static_cast<double>(n);
    auto k = static_cast<std::size_t>(scaled + 0.5 + 1e-9);
    return std::min(k, n);
}

Corpus sample_fraction(const Corpus& corpus, double fraction, std::uint64_t seed) {
    const std::size_t k = sample_size(corpus.size(), fraction);
    if (k == corpus.size()) return corpus;
    SeededRng rng(seed);
    std::vector<LabeledInstance> out;
    out.reserve(k);
    for (auto i : rng.choose_sorted(corpus.size(), k)) out.push_back(corpus.instances()[i]);
    std::ostringstream note;
    note << "sample(fraction=" << fraction << ", seed=" << seed << ")";
    std::string prov = corpus.provenance();
    append_note(prov, note.str());
    return Corpus::make(corpus.language(), corpus.split(), std::move(out), std::move(prov));
}

}  // namespace claimcheck
