#include <doctest.h>

#include <cmath>

#include "claimcheck/error.hpp"
#include "claimcheck/labeling_io.hpp"
#include "claimcheck/metrics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace claimcheck;
using testsupport::error_kind;

namespace {

struct PublishedRow {
    const char* name;
    std::int64_t pos, neg;
    oracles::Row row;
    ConfusionMatrix expected;
};

const PublishedRow kRows[] = {
    {"English RoBERTa", 108, 210, {937, 958, 852, 902}, {92, 4, 16, 206}},
    {"Dutch XLMR fine-tuned", 316, 350, {637, 597, 722, 653}, {228, 154, 88, 196}},
    {"Arabic GPT-3.5 fine-tuned", 377, 123, {824, 885, 881, 883}, {332, 43, 45, 80}},
};

Labeling random_labeling(testsupport::Gen& gen, std::size_t n, int yes_per_mille = 500) {
    Labeling out;
    for (std::size_t i = 0; i < n; ++i)
        out["i" + std::to_string(i)] = static_cast<int>(gen.below(1000)) < yes_per_mille ? Label::Yes : Label::No;
    return out;
}

Labeling flip(const Labeling& l) {
    Labeling out;
    for (const auto& [k, v] : l) out[k] = v == Label::Yes ? Label::No : Label::Yes;
    return out;
}

/// Two labelings over n ids with the given joint counts (yy, nn, yn, ny).
std::pair<Labeling, Labeling> joint(int yy, int nn, int yn, int ny) {
    Labeling a, b;
    int i = 0;
    auto put = [&](int count, Label la, Label lb) {
        for (int k = 0; k < count; ++k, ++i) {
            a["x" + std::to_string(i)] = la;
            b["x" + std::to_string(i)] = lb;
        }
    };
    put(yy, Label::Yes, Label::Yes);
    put(nn, Label::No, Label::No);
    put(yn, Label::Yes, Label::No);
    put(ny, Label::No, Label::Yes);
    return {a, b};
}

}  // namespace

TEST_CASE("enumeration oracle pins each published row to one matrix") {
    for (const auto& r : kRows) {
        CAPTURE(r.name);
        const auto found = oracles::enumerate(r.pos, r.neg, r.row);
        REQUIRE(found.size() == 1);
        const auto& m = found.front();
        CHECK(ConfusionMatrix{static_cast<std::uint64_t>(m.tp), static_cast<std::uint64_t>(m.fp),
                              static_cast<std::uint64_t>(m.fn), static_cast<std::uint64_t>(m.tn)} == r.expected);
        const auto rep = compute_metrics(r.expected);
        CHECK(std::llround(rep.rounded().accuracy * 1000) == r.row.acc);
        CHECK(std::llround(rep.rounded().precision * 1000) == r.row.prec);
        CHECK(std::llround(rep.rounded().recall * 1000) == r.row.rec);
        CHECK(std::llround(rep.rounded().f1_positive * 1000) == r.row.f1);
    }
}

TEST_CASE("compute_metrics matches the integer oracle on random matrices") {
    testsupport::Gen gen(99);
    for (int i = 0; i < 3000; ++i) {
        const oracles::Matrix m{static_cast<std::int64_t>(gen.below(300)), static_cast<std::int64_t>(gen.below(300)),
                                static_cast<std::int64_t>(gen.below(300)), static_cast<std::int64_t>(gen.below(300))};
        if (m.tp + m.fp + m.fn + m.tn == 0) continue;
        const ConfusionMatrix cm{static_cast<std::uint64_t>(m.tp), static_cast<std::uint64_t>(m.fp),
                                 static_cast<std::uint64_t>(m.fn), static_cast<std::uint64_t>(m.tn)};
        const auto r = compute_metrics(cm).rounded();
        const auto want = oracles::row_of(m);
        CAPTURE(m.tp);
        CAPTURE(m.fp);
        CAPTURE(m.fn);
        CAPTURE(m.tn);
        CHECK(std::llround(r.accuracy * 1000) == want.acc);
        CHECK(std::llround(r.precision * 1000) == want.prec);
        CHECK(std::llround(r.recall * 1000) == want.rec);
        CHECK(std::llround(r.f1_positive * 1000) == want.f1);
    }
}

TEST_CASE("rounding and formatting") {
    CHECK(format3(0.0625) == "0.063");
    CHECK(format3(0.9375) == "0.938");
    CHECK(format3(2.0 / 3.0) == "0.667");
    CHECK(format3(1.0) == "1.000");
    CHECK(format3(0.0) == "0.000");
    CHECK(round_half_up(0.1235, 3) == doctest::Approx(0.124));
}

TEST_CASE("confusion from labelings") {
    Labeling gold{{"1", Label::Yes}, {"2", Label::Yes}, {"3", Label::No}, {"4", Label::No}, {"5", Label::No}};
    CHECK(confusion(gold, gold) == ConfusionMatrix{2, 0, 0, 3});
    Labeling none;
    for (const auto& [k, v] : gold) none[k] = Label::No;
    CHECK(confusion(none, gold) == ConfusionMatrix{0, 0, 2, 3});
    Labeling missing = gold;
    missing.erase("5");
    CHECK(error_kind([&] { confusion(missing, gold); }) == ErrorKind::IdMismatch);

    // English dev-test shaped fixture built to tp=92 fp=4 fn=16 tn=206
    Labeling g, p;
    int id = 0;
    auto put = [&](int n, Label gl, Label pl) {
        for (int k = 0; k < n; ++k, ++id) {
            g[std::to_string(id)] = gl;
            p[std::to_string(id)] = pl;
        }
    };
    put(92, Label::Yes, Label::Yes);
    put(4, Label::No, Label::Yes);
    put(16, Label::Yes, Label::No);
    put(206, Label::No, Label::No);
    CHECK(confusion(p, g) == ConfusionMatrix{92, 4, 16, 206});
}

TEST_CASE("confusion against an unlabeled corpus") {
    const auto unl = parse_tsv("sentence_id\ttext\n1\tx\n", Language::en, Split::test, false);
    PredictionSet ps;
    ps.predictions.push_back({"1", Label::Yes, "Yes"});
    CHECK(error_kind([&] { confusion(ps, unl); }) == ErrorKind::UnlabeledGold);
}

TEST_CASE("metric edge cases and properties") {
    CHECK(error_kind([] { compute_metrics({}); }) == ErrorKind::EmptyMatrix);
    const auto perfect = compute_metrics({3, 0, 0, 4});
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f1_positive == 1.0);
    CHECK(perfect.f1_macro == 1.0);
    const auto all_no = compute_metrics({0, 0, 5, 5});
    CHECK(all_no.precision == 0.0);
    CHECK(all_no.f1_positive == 0.0);

    testsupport::Gen gen(5);
    for (int i = 0; i < 500; ++i) {
        const ConfusionMatrix m{1 + gen.below(50), gen.below(50), gen.below(50), 1 + gen.below(50)};
        const auto a = compute_metrics(m);
        const auto b = compute_metrics(m.swapped());
        CHECK(b.precision == doctest::Approx(static_cast<double>(m.tn) / (m.tn + m.fn)));
        CHECK(a.f1_macro == doctest::Approx(b.f1_macro));
        CHECK(a.f1_macro == doctest::Approx((a.f1_positive + b.f1_positive) / 2));
    }
}

TEST_CASE("accuracy equals overlap with gold") {
    testsupport::Gen gen(6);
    for (int i = 0; i < 50; ++i) {
        const auto gold = random_labeling(gen, 40 + gen.below(40));
        const auto pred = random_labeling(gen, gold.size());
        CHECK(compute_metrics(confusion(pred, gold)).accuracy == doctest::Approx(label_overlap(pred, gold)));
    }
}

TEST_CASE("cohens_kappa fixtures") {
    testsupport::Gen gen(7);
    const auto a = random_labeling(gen, 100);
    const auto same = cohens_kappa(a, a);
    CHECK(same.kappa == 1.0);
    CHECK(same.observed_agreement == 1.0);

    const auto [x, y] = joint(20, 20, 5, 5);
    const auto k = cohens_kappa(x, y);
    CHECK(k.observed_agreement == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(k.expected_agreement == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(k.kappa - 0.6) < 1e-9);

    // observed == expected exactly: marginals 1/2 and 1/2, agreement 1/2
    const auto [u, v] = joint(10, 10, 10, 10);
    CHECK(std::abs(cohens_kappa(u, v).kappa) < 1e-12);

    Labeling all_yes;
    for (int i = 0; i < 5; ++i) all_yes[std::to_string(i)] = Label::Yes;
    const auto d = cohens_kappa(all_yes, all_yes);
    CHECK(d.kappa == 1.0);
    CHECK(d.degenerate_marginals);

    CHECK(error_kind([] { cohens_kappa({}, {}); }) == ErrorKind::EmptyInput);
    Labeling shorter = a;
    shorter.erase(shorter.begin());
    CHECK(error_kind([&] { cohens_kappa(a, shorter); }) == ErrorKind::IdMismatch);
}

TEST_CASE("kappa near zero for independent annotators") {
    testsupport::Gen gen(1234);
    const auto a = random_labeling(gen, 10000, 300);
    const auto b = random_labeling(gen, 10000, 600);
    CHECK(std::abs(cohens_kappa(a, b).kappa) < 0.05);
}

TEST_CASE("kappa symmetry and renaming invariance") {
    testsupport::Gen gen(4321);
    for (int i = 0; i < 100; ++i) {
        const auto n = 2 + gen.below(60);
        const auto a = random_labeling(gen, n, static_cast<int>(gen.below(1000)));
        auto b = a;
        for (auto& [k, v] : b)
            if (gen.below(4) == 0) v = v == Label::Yes ? Label::No : Label::Yes;
        const auto ab = cohens_kappa(a, b).kappa;
        CHECK(ab == doctest::Approx(cohens_kappa(b, a).kappa).epsilon(1e-12));
        CHECK(ab == doctest::Approx(cohens_kappa(flip(a), flip(b)).kappa).epsilon(1e-12));
    }
}

TEST_CASE("majority adjudication") {
    Labeling a{{"1", Label::Yes}}, b{{"1", Label::Yes}}, c{{"1", Label::No}};
    std::vector<Labeling> three{a, b, c};
    CHECK(majority_adjudicate(three).at("1") == Label::Yes);
    std::vector<Labeling> same{a, a, a};
    CHECK(majority_adjudicate(same) == a);

    // four ids, one disagreement pattern each
    Labeling A{{"p", Label::Yes}, {"q", Label::No}, {"r", Label::Yes}, {"s", Label::No}};
    Labeling B{{"p", Label::Yes}, {"q", Label::Yes}, {"r", Label::No}, {"s", Label::No}};
    Labeling C{{"p", Label::No}, {"q", Label::Yes}, {"r", Label::No}, {"s", Label::Yes}};
    std::vector<Labeling> abc{A, B, C};
    CHECK(majority_adjudicate(abc) ==
          Labeling{{"p", Label::Yes}, {"q", Label::Yes}, {"r", Label::No}, {"s", Label::No}});

    std::vector<Labeling> even{A, B, C, A};
    CHECK(error_kind([&] { majority_adjudicate(even); }) == ErrorKind::EvenAnnotatorCount);
    std::vector<Labeling> mismatch{A, B, a};
    CHECK(error_kind([&] { majority_adjudicate(mismatch); }) == ErrorKind::IdMismatch);
}

TEST_CASE("prediction overlap") {
    testsupport::Gen gen(8);
    const auto a = random_labeling(gen, 10);
    CHECK(label_overlap(a, a) == 1.0);
    CHECK(label_overlap(a, flip(a)) == 0.0);
    auto b = a;
    int flipped = 0;
    for (auto& [k, v] : b)
        if (flipped < 3) {
            v = v == Label::Yes ? Label::No : Label::Yes;
            ++flipped;
        }
    CHECK(label_overlap(a, b) == doctest::Approx(0.7));
    CHECK(label_overlap(b, a) == label_overlap(a, b));

    PredictionSet pa, pb;
    for (const auto& [k, v] : a) pa.predictions.push_back({k, v, std::string(to_string(v))});
    for (const auto& [k, v] : b) pb.predictions.push_back({k, v, std::string(to_string(v))});
    CHECK(prediction_overlap(pa, pb) == doctest::Approx(0.7));
    pb.predictions.pop_back();
    CHECK(error_kind([&] { prediction_overlap(pa, pb); }) == ErrorKind::IdMismatch);
}

TEST_CASE("prediction and labeling files round trip") {
    PredictionSet ps;
    ps.predictions.push_back({"a", Label::Yes, " Yes\n", true, false, 12});
    ps.predictions.push_back({"b", Label::No, "Yes and no", false, true, 3});
    const auto text = serialize_predictions(ps);
    CHECK(text.find("from_cache") == std::string::npos);
    const auto back = parse_predictions(text);
    REQUIRE(back.predictions.size() == 2);
    CHECK(back.predictions[1].raw_response == "Yes and no");
    CHECK(back.predictions[1].flagged_fallback);
    CHECK(back.labels() == ps.labels());
    CHECK(serialize_predictions(back) == text);

    Labeling l{{"x", Label::Yes}, {"y", Label::No}};
    CHECK(parse_labeling(serialize_labeling(l)) == l);
}
