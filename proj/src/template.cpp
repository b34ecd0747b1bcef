#include "claimcheck/template.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "claimcheck/error.hpp"

namespace claimcheck {

std::string template_dir() {
    if (const char* env = std::getenv("CLAIMCHECK_TEMPLATES"); env && *env) return env;
    return CLAIMCHECK_TEMPLATE_DIR;
}

const std::string& load_template(std::string_view template_id) {
    return load_template(template_id, template_dir());
}

const std::string& load_template(std::string_view template_id, const std::string& dir) {
    static std::mutex mu;
    static std::unordered_map<std::string, std::unique_ptr<const std::string>> loaded;

    if (template_id.empty() || template_id.find('/') != std::string_view::npos)
        throw Error(ErrorKind::UnknownTemplate, "invalid template id '" + std::string(template_id) + "'");
    const auto path = (std::filesystem::path(dir) / (std::string(template_id) + ".txt")).string();

    std::lock_guard lock(mu);
    if (auto it = loaded.find(path); it != loaded.end()) return *it->second;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::UnknownTemplate, "no template '" + std::string(template_id) + "' in " + dir);
    auto body = std::make_unique<const std::string>(std::istreambuf_iterator<char>(in),
                                                    std::istreambuf_iterator<char>());
    return *loaded.emplace(path, std::move(body)).first->second;
}

std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string, std::less<>>& vars) {
    std::string out;
    out.reserve(tmpl.size() + 64);
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] == '{') {
            const auto close = tmpl.find('}', i + 1);
            if (close != std::string_view::npos) {
                const auto name = tmpl.substr(i + 1, close - i - 1);
                if (auto it = vars.find(name); it != vars.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += tmpl[i++];
    }
    return out;
}

}  // namespace claimcheck
