#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace claimcheck {

enum class Label { Yes, No };

/// "Yes" / "No".
std::string_view to_string(Label label) noexcept;
/// Exact match against "Yes" / "No"; anything else is nullopt.
std::optional<Label> label_from_string(std::string_view s) noexcept;

enum class Language { en, nl, ar, es };

std::string_view to_string(Language lang) noexcept;
/// Throws InvalidArgument for codes outside {en, nl, ar, es}.
Language language_from_string(std::string_view code);
/// Human name used in prompts ("English", "Dutch", ...).
std::string_view language_name(Language lang) noexcept;

enum class Split { train, dev, dev_test, test };

/// "train", "dev", "dev-test", "test".
std::string_view to_string(Split split) noexcept;
Split split_from_string(std::string_view s);
inline bool requires_labels(Split split) noexcept { return split != Split::test; }

/// id -> label, the shape of gold sets, annotations and prediction verdicts.
using Labeling = std::map<std::string, Label>;

struct LabeledInstance {
    std::string id;
    std::string text;
    std::optional<Label> label;
    Language language = Language::en;

    friend bool operator==(const LabeledInstance&, const LabeledInstance&) = default;
};

struct ClassCounts {
    std::size_t yes = 0;
    std::size_t no = 0;
    std::size_t total = 0;

    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
    ClassCounts& operator+=(const ClassCounts& o) {
        yes += o.yes;
        no += o.no;
        total += o.total;
        return *this;
    }
};

/// An ordered, language- and split-tagged collection of instances.
///
/// Construction through make() validates the invariants: unique ids, a shared
/// language tag, labels present on train/dev/dev-test, no tab or newline in
/// ids and texts.
class Corpus {
public:
    Corpus() = default;

    static Corpus make(Language language, Split split, std::vector<LabeledInstance> instances,
                       std::string provenance = {});

    Language language() const noexcept { return language_; }
    Split split() const noexcept { return split_; }
    const std::vector<LabeledInstance>& instances() const noexcept { return instances_; }
    const std::string& provenance() const noexcept { return provenance_; }
    std::size_t size() const noexcept { return instances_.size(); }
    bool empty() const noexcept { return instances_.empty(); }

    /// True when every instance carries a label.
    bool fully_labeled() const noexcept;
    /// True when at least one instance carries a label.
    bool any_labeled() const noexcept;

    friend bool operator==(const Corpus&, const Corpus&) = default;

private:
    Language language_ = Language::en;
    Split split_ = Split::train;
    std::vector<LabeledInstance> instances_;
    std::string provenance_;
};

inline constexpr std::string_view kIdColumn = "sentence_id";
inline constexpr std::string_view kTextColumn = "text";
inline constexpr std::string_view kLabelColumn = "class_label";

/// Parse the organizer TSV dialect: header line naming sentence_id, text and
/// (when labeled) class_label, in any order; extra columns are ignored.
/// Errors: MalformedRow, DuplicateId, InvalidLabel, EmptyCorpus.
Corpus parse_tsv(std::string_view raw, Language language, Split split, bool labeled,
                 std::string provenance = {});
Corpus parse_tsv(std::istream& in, Language language, Split split, bool labeled,
                 std::string provenance = {});
Corpus read_tsv_file(const std::string& path, Language language, Split split, bool labeled);

/// Canonical serialization: sentence_id, text[, class_label], '\n' line ends.
/// The label column is written when any instance is labeled.
std::string serialize_tsv(const Corpus& corpus);
void write_tsv_file(const std::string& path, const Corpus& corpus);

/// Throws UnlabeledCorpus if any label is missing.
Labeling labeling_of(const Corpus& corpus);

/// Throws UnlabeledCorpus if any label is missing.
ClassCounts class_counts(const Corpus& corpus);

/// Majority class cut down to the minority count, uniformly without
/// replacement. Errors: UnlabeledCorpus, SingleClassCorpus.
Corpus undersample(const Corpus& corpus, std::uint64_t seed);

/// Minority class grown to the majority count by uniform draws with
/// replacement; copies are inserted after their original with ids
/// "<id>#1", "<id>#2", ... Errors: UnlabeledCorpus, SingleClassCorpus.
Corpus oversample(const Corpus& corpus, std::uint64_t seed);

/// Concatenate in argument order, prefixing ids with "<source lang>:".
/// Errors: EmptyInput, MixedSplits, DuplicateId.
Corpus merge(std::span<const Corpus> corpora, Language target);

/// round-half-up(fraction * N) instances chosen uniformly without replacement,
/// order preserved. Errors: FractionOutOfRange unless 0 < fraction <= 1.
Corpus sample_fraction(const Corpus& corpus, double fraction, std::uint64_t seed);

/// Number of instances kept by sample_fraction for a corpus of size n.
std::size_t sample_size(std::size_t n, double fraction);

/// Same instances with only the text rewritten; provenance gets `note` appended.
template <typename F>
Corpus map_texts(const Corpus& corpus, F&& f, std::string_view note) {
    std::vector<LabeledInstance> out = corpus.instances();
    for (auto& inst : out) inst.text = f(inst.text);
    std::string prov = corpus.provenance();
    if (!note.empty()) {
        if (!prov.empty()) prov += "; ";
        prov += note;
    }
    return Corpus::make(corpus.language(), corpus.split(), std::move(out), std::move(prov));
}

}  // namespace claimcheck
