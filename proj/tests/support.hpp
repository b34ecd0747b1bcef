#pragma once

#include <stdlib.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <optional>
#include <vector>

#include "claimcheck/error.hpp"

namespace testsupport {

/// Kind of the claimcheck::Error thrown by f, nullopt if none.
template <typename F>
std::optional<claimcheck::ErrorKind> error_kind(F&& f) {
    try {
        f();
    } catch (const claimcheck::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "claimcheck-XXXXXX").string();
        if (!::mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Table1Row {
    const char* lang;
    const char* split;
    std::size_t no;
    std::size_t yes;
    std::size_t total;
};

/// Class counts per language and split of the shared-task data.
inline const std::vector<Table1Row>& table1() {
    static const std::vector<Table1Row> rows{
        {"en", "train", 17088, 5413, 22501}, {"en", "dev", 794, 238, 1032},   {"en", "dev-test", 210, 108, 318},
        {"nl", "train", 590, 405, 995},      {"nl", "dev", 150, 102, 252},    {"nl", "dev-test", 350, 316, 666},
        {"ar", "train", 5090, 2243, 7333},   {"ar", "dev", 682, 411, 1093},   {"ar", "dev-test", 123, 377, 500},
    };
    return rows;
}

/// TSV with `yes` Yes rows and `no` No rows, classes interleaved evenly.
/// Written by hand so the library parser is not its own oracle.
inline std::string labeled_tsv(const std::string& prefix, std::size_t yes, std::size_t no) {
    std::string out = "sentence_id\ttext\tclass_label\n";
    out.reserve(48 * (yes + no));
    const std::size_t n = yes + no;
    std::size_t placed_yes = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // Yes at position i when floor((i+1)*yes/n) grows
        const bool is_yes = (i + 1) * yes / n > placed_yes;
        if (is_yes) ++placed_yes;
        out += prefix + std::to_string(i + 1) + "\tsentence number " + std::to_string(i + 1) + " of " + prefix +
               (is_yes ? " says 12 percent\tYes\n" : " feels fine\tNo\n");
    }
    return out;
}

/// Unlabeled TSV with n rows.
inline std::string unlabeled_tsv(const std::string& prefix, std::size_t n) {
    std::string out = "sentence_id\ttext\n";
    for (std::size_t i = 0; i < n; ++i)
        out += prefix + std::to_string(i + 1) + "\tunlabeled line " + std::to_string(i + 1) + "\n";
    return out;
}

/// Small splitmix64 generator for property fixtures, independent of the library RNG.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    bool coin() { return next() & 1; }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

private:
    std::uint64_t s_;
};

/// 20-instance dev-test fixture for the mock rule "Yes iff the text contains a
/// digit". By construction: 8 Yes with digits (tp), 3 No with digits (fp),
/// 2 Yes without digits (fn), 7 No without digits (tn).
inline std::string mock_run_fixture_tsv() {
    return "sentence_id\ttext\tclass_label\n"
           "m01\tUnemployment fell to 4 percent in March.\tYes\n"
           "m02\tI honestly love rainy mornings.\tNo\n"
           "m03\tThe bill cut taxes by 12 billion dollars.\tYes\n"
           "m04\tWhat a game last night!\tNo\n"
           "m05\tCrime rose 7% since 2019.\tYes\n"
           "m06\tMy 2 cats are asleep again.\tNo\n"
           "m07\tThe senator voted against the budget.\tYes\n"
           "m08\tAnyone else tired today?\tNo\n"
           "m09\tOver 300 schools closed this year.\tYes\n"
           "m10\tGood luck to everyone running 10k tomorrow\tNo\n"
           "m11\tHousing prices doubled in 5 years.\tYes\n"
           "m12\tThis coffee is amazing.\tNo\n"
           "m13\tThe minister resigned after the scandal.\tYes\n"
           "m14\tCannot wait for the weekend.\tNo\n"
           "m15\tInflation reached 9.1 percent in June.\tYes\n"
           "m16\tWe should all be kinder.\tNo\n"
           "m17\tThe city spent 40 million on the bridge.\tYes\n"
           "m18\tCall me at 5 if you want.\tNo\n"
           "m19\tThe plant employs 1200 workers.\tYes\n"
           "m20\tSunsets here are lovely.\tNo\n";
}

}  // namespace testsupport
