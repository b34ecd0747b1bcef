#include "claimcheck/finetune.hpp"

#include <ostream>
#include <sstream>

#include <json.hpp>

#include "claimcheck/error.hpp"

namespace claimcheck {

using ojson = nlohmann::ordered_json;

void export_finetune(const Corpus& corpus, std::string_view system_prompt, std::ostream& out) {
    for (const auto& inst : corpus.instances())
        if (!inst.label) throw Error(ErrorKind::UnlabeledCorpus, "instance '" + inst.id + "' has no label");

    for (const auto& inst : corpus.instances()) {
        ojson record;
        auto& messages = record["messages"] = ojson::array();
        messages.push_back({{"role", "system"}, {"content", system_prompt}});
        messages.push_back({{"role", "user"}, {"content", inst.text}});
        messages.push_back({{"role", "assistant"}, {"content", to_string(*inst.label)}});
        out << record.dump() << '\n';
    }
}

std::string export_finetune(const Corpus& corpus, std::string_view system_prompt) {
    std::ostringstream out;
    export_finetune(corpus, system_prompt, out);
    return out.str();
}

std::vector<FinetuneExample> parse_finetune(std::string_view jsonl) {
    std::vector<FinetuneExample> out;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < jsonl.size()) {
        auto end = jsonl.find('\n', start);
        if (end == std::string_view::npos) end = jsonl.size();
        const auto line = jsonl.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        const auto where = "record " + std::to_string(line_no);
        try {
            const auto j = nlohmann::json::parse(line);
            const auto& m = j.at("messages");
            if (!m.is_array() || m.size() != 3 || m[0].at("role") != "system" || m[1].at("role") != "user" ||
                m[2].at("role") != "assistant")
                throw Error(ErrorKind::InvalidArgument, where + ": expected system/user/assistant messages");
            auto label = label_from_string(m[2].at("content").get<std::string>());
            if (!label) throw Error(ErrorKind::InvalidArgument, where + ": assistant content must be Yes or No");
            out.push_back({m[0].at("content").get<std::string>(), m[1].at("content").get<std::string>(), *label});
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::InvalidArgument, where + ": " + e.what());
        }
    }
    return out;
}

}  // namespace claimcheck
