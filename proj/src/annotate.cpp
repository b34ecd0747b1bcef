#include "claimcheck/annotate.hpp"

#include <unistd.h>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>

#include <json.hpp>

#include "claimcheck/error.hpp"
#include "claimcheck/io.hpp"

namespace claimcheck {

using ojson = nlohmann::ordered_json;

std::string serialize_annotation(const AnnotationFile& file, const std::vector<std::string>& order) {
    ojson labels = ojson::array();
    std::set<std::string> emitted;
    for (const auto& id : order) {
        auto it = file.labels.find(id);
        if (it == file.labels.end() || !emitted.insert(id).second) continue;
        labels.push_back({{"id", id}, {"label", to_string(it->second)}});
    }
    for (const auto& [id, label] : file.labels)
        if (!emitted.count(id)) labels.push_back({{"id", id}, {"label", to_string(label)}});
    ojson j{{"annotator_id", file.annotator_id}, {"created_at", file.created_at}, {"labels", labels}};
    return j.dump(2) + "\n";
}

AnnotationFile parse_annotation(std::string_view json_text) {
    try {
        const auto j = nlohmann::json::parse(json_text);
        AnnotationFile f;
        f.annotator_id = j.at("annotator_id").get<std::string>();
        f.created_at = j.value("created_at", std::string{});
        for (const auto& e : j.at("labels")) {
            const auto id = e.at("id").get<std::string>();
            auto label = label_from_string(e.at("label").get<std::string>());
            if (!label) throw Error(ErrorKind::InvalidLabel, "annotation for '" + id + "'");
            if (!f.labels.emplace(id, *label).second)
                throw Error(ErrorKind::DuplicateId, "annotation repeats id '" + id + "'");
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed annotation file: ") + e.what());
    }
}

AnnotationFile read_annotation_file(const std::string& path) { return parse_annotation(read_file(path)); }

bool TerminalConsole::interactive() const { return ::isatty(STDIN_FILENO) == 1; }

std::optional<std::string> TerminalConsole::read_line() {
    std::string line;
    if (!std::getline(std::cin, line)) return std::nullopt;
    return line;
}

void TerminalConsole::write(std::string_view text) {
    std::cout << text;
    std::cout.flush();
}

std::optional<std::string> ScriptedConsole::read_line() {
    if (next_ >= answers_.size()) return std::nullopt;
    return answers_[next_++];
}

namespace {

std::string lower_trim(std::string s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

SessionResult annotate_session(const Corpus& sample, const std::string& annotator_id, Console& console,
                               const std::string& output_path, const std::function<std::string()>& now) {
    if (!console.interactive()) throw Error(ErrorKind::NonInteractiveChannel, "annotation needs an interactive terminal");

    std::vector<std::string> order;
    std::set<std::string> known;
    for (const auto& inst : sample.instances()) {
        order.push_back(inst.id);
        known.insert(inst.id);
    }

    SessionResult result;
    auto& file = result.file;
    if (std::filesystem::exists(output_path)) {
        file = read_annotation_file(output_path);
        if (file.annotator_id != annotator_id)
            throw Error(ErrorKind::InvalidArgument,
                        output_path + " belongs to annotator '" + file.annotator_id + "'");
        for (const auto& [id, _] : file.labels)
            if (!known.count(id)) throw Error(ErrorKind::InvalidArgument, "annotation id '" + id + "' not in sample");
    } else {
        file.annotator_id = annotator_id;
        file.created_at = now();
        if (file.created_at.empty()) file.created_at = utc_now();
    }

    auto persist = [&] {
        try {
            atomic_write_file(output_path, serialize_annotation(file, order));
        } catch (const Error& e) {
            throw Error(ErrorKind::WriteFailure, e.what());
        }
    };

    const std::size_t total = sample.size();
    std::size_t position = 0;
    for (const auto& inst : sample.instances()) {
        ++position;
        if (file.labels.count(inst.id)) continue;
        for (;;) {
            char header[64];
            std::snprintf(header, sizeof header, "\n[%zu/%zu] ", position, total);
            console.write(std::string(header) + inst.id + "\n" + inst.text + "\n");
            console.write("check-worthy? [y]es / [n]o / [s]kip / [q]uit: ");
            auto line = console.read_line();
            if (!line) {
                result.quit = true;
                return result;
            }
            const auto answer = lower_trim(*line);
            if (answer == "y" || answer == "yes" || answer == "n" || answer == "no") {
                file.labels[inst.id] = answer[0] == 'y' ? Label::Yes : Label::No;
                ++result.answered;
                persist();
                break;
            }
            if (answer == "s" || answer == "skip") break;
            if (answer == "q" || answer == "quit") {
                persist();
                result.quit = true;
                return result;
            }
            console.write("please answer y, n, s or q\n");
        }
    }
    persist();
    return result;
}

}  // namespace claimcheck
