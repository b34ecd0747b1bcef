#include <doctest.h>

#include "claimcheck/annotate.hpp"
#include "claimcheck/error.hpp"
#include "claimcheck/metrics.hpp"
#include "support.hpp"

using namespace claimcheck;
using testsupport::error_kind;

namespace {

const auto kFixedNow = [] { return std::string("2024-05-01T10:00:00.000Z"); };

Corpus sample_of(std::size_t n) {
    return parse_tsv(testsupport::unlabeled_tsv("s", n), Language::ar, Split::test, false);
}

class ClosedConsole final : public Console {
public:
    bool interactive() const override { return false; }
    std::optional<std::string> read_line() override { return std::nullopt; }
    void write(std::string_view) override {}
};

}  // namespace

TEST_CASE("answers map directly to labels") {
    testsupport::TempDir dir;
    ScriptedConsole console({"y", "n", "y"});
    const auto r = annotate_session(sample_of(3), "ann1", console, dir.file("a.json"), kFixedNow);
    CHECK(r.answered == 3);
    CHECK_FALSE(r.quit);
    CHECK(r.file.labels == Labeling{{"s1", Label::Yes}, {"s2", Label::No}, {"s3", Label::Yes}});
    CHECK(read_annotation_file(dir.file("a.json")).labels == r.file.labels);
    CHECK(console.transcript().find("unlabeled line 2") != std::string::npos);
}

TEST_CASE("skip, unknown answers and end of input") {
    testsupport::TempDir dir;
    ScriptedConsole console({"s", "maybe", "NO", "yes"});
    const auto r = annotate_session(sample_of(4), "ann1", console, dir.file("a.json"), kFixedNow);
    CHECK(r.file.labels == Labeling{{"s2", Label::No}, {"s3", Label::Yes}});
    CHECK(r.quit);
}

TEST_CASE("quit and resume equals an uninterrupted session") {
    testsupport::TempDir dir;
    const auto sample = sample_of(6);
    const std::vector<std::string> answers{"y", "n", "n", "y", "y", "n"};

    ScriptedConsole straight(answers);
    annotate_session(sample, "ann1", straight, dir.file("straight.json"), kFixedNow);

    ScriptedConsole part1({"y", "q"});
    const auto r1 = annotate_session(sample, "ann1", part1, dir.file("resumed.json"), kFixedNow);
    CHECK(r1.quit);
    CHECK(r1.file.labels.size() == 1);
    ScriptedConsole part2({answers.begin() + 1, answers.end()});
    const auto r2 = annotate_session(sample, "ann1", part2, dir.file("resumed.json"),
                                     [] { return std::string("a later time"); });
    CHECK(r2.answered == 5);
    CHECK(testsupport::read_text(dir.file("resumed.json")) == testsupport::read_text(dir.file("straight.json")));
}

TEST_CASE("session errors") {
    testsupport::TempDir dir;
    ClosedConsole closed;
    CHECK(error_kind([&] { annotate_session(sample_of(2), "a", closed, dir.file("x.json")); }) ==
          ErrorKind::NonInteractiveChannel);
    ScriptedConsole console({"y"});
    CHECK(error_kind([&] { annotate_session(sample_of(2), "a", console, dir.file("missing/dir/x.json")); }) ==
          ErrorKind::WriteFailure);
}

TEST_CASE("three annotators over a 50-item sample adjudicate to 50 gold labels") {
    testsupport::TempDir dir;
    const auto test = parse_tsv(testsupport::unlabeled_tsv("ar", 500), Language::ar, Split::test, false);
    const auto sample = sample_fraction(test, 0.1, 17);
    REQUIRE(sample.size() == 50);
    testsupport::Gen gen(3);
    std::vector<Labeling> anns;
    for (int a = 0; a < 3; ++a) {
        std::vector<std::string> answers;
        for (int i = 0; i < 50; ++i) answers.push_back(gen.coin() ? "y" : "n");
        ScriptedConsole console(answers);
        const auto path = dir.file("ann" + std::to_string(a) + ".json");
        annotate_session(sample, "ann" + std::to_string(a), console, path, kFixedNow);
        anns.push_back(read_annotation_file(path).labels);
    }
    const auto gold = majority_adjudicate(anns);
    CHECK(gold.size() == 50);
    for (const auto& inst : sample.instances()) CHECK(gold.count(inst.id) == 1);
}
