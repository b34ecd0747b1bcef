#include "claimcheck/config_json.hpp"

#include <algorithm>

#include "claimcheck/error.hpp"

namespace claimcheck {

using nlohmann::json;

void require_known_keys(const json& j, std::initializer_list<std::string_view> allowed,
                        std::string_view section) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, std::string(section) + " must be an object");
    for (const auto& [key, _] : j.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw Error(ErrorKind::InvalidConfig, "unknown key '" + key + "' in " + std::string(section));
}

namespace {

template <typename T>
void read_opt(const json& j, const char* key, T& out, std::string_view section) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorKind::InvalidConfig,
                    std::string(section) + "." + key + " has the wrong type");
    }
}

}  // namespace

void to_json(json& j, const NormalizeConfig& c) {
    j = json{{"mask_usernames", c.mask_usernames},
             {"mask_urls", c.mask_urls},
             {"collapse_whitespace", c.collapse_whitespace},
             {"username_token", c.username_token},
             {"url_token", c.url_token}};
}

void from_json(const json& j, NormalizeConfig& c) {
    require_known_keys(j, {"mask_usernames", "mask_urls", "collapse_whitespace", "username_token", "url_token"},
                       "normalize");
    c = NormalizeConfig{};
    read_opt(j, "mask_usernames", c.mask_usernames, "normalize");
    read_opt(j, "mask_urls", c.mask_urls, "normalize");
    read_opt(j, "collapse_whitespace", c.collapse_whitespace, "normalize");
    read_opt(j, "username_token", c.username_token, "normalize");
    read_opt(j, "url_token", c.url_token, "normalize");
    c.validate();
}

void to_json(json& j, const PromptConfig& c) {
    j = json{{"language_name", c.language_name},
             {"template_id", c.template_id},
             {"parse_mode", to_string(c.parse_mode)},
             {"fallback_label", c.fallback_label ? json(to_string(*c.fallback_label)) : json(nullptr)}};
}

void from_json(const json& j, PromptConfig& c) {
    require_known_keys(j, {"language_name", "template_id", "parse_mode", "fallback_label"}, "prompt");
    c = PromptConfig{};
    read_opt(j, "language_name", c.language_name, "prompt");
    read_opt(j, "template_id", c.template_id, "prompt");
    std::string mode(to_string(c.parse_mode));
    read_opt(j, "parse_mode", mode, "prompt");
    c.parse_mode = parse_mode_from_string(mode);
    if (j.contains("fallback_label")) {
        const auto& f = j.at("fallback_label");
        if (f.is_null()) {
            c.fallback_label.reset();
        } else {
            auto label = f.is_string() ? label_from_string(f.get<std::string>()) : std::nullopt;
            if (!label) throw Error(ErrorKind::InvalidConfig, "prompt.fallback_label must be \"Yes\", \"No\" or null");
            c.fallback_label = label;
        }
    }
}

void to_json(json& j, const MockRule& r) {
    j = json{{"match", r.match == MockRule::Match::regex ? "regex" : "contains"},
             {"pattern", r.pattern},
             {"response", r.response}};
}

void from_json(const json& j, MockRule& r) {
    require_known_keys(j, {"match", "pattern", "response"}, "backend.mock_rules[]");
    r = MockRule{};
    std::string match = "contains";
    read_opt(j, "match", match, "backend.mock_rules[]");
    if (match == "regex")
        r.match = MockRule::Match::regex;
    else if (match == "contains")
        r.match = MockRule::Match::contains;
    else
        throw Error(ErrorKind::InvalidConfig, "mock rule match must be contains or regex");
    read_opt(j, "pattern", r.pattern, "backend.mock_rules[]");
    read_opt(j, "response", r.response, "backend.mock_rules[]");
}

void to_json(json& j, const BackendConfig& c) {
    j = json{{"kind", to_string(c.kind)},
             {"endpoint_url", c.endpoint_url ? json(*c.endpoint_url) : json(nullptr)},
             {"model_name", c.model_name},
             {"temperature", c.temperature},
             {"max_output_tokens", c.max_output_tokens},
             {"request_timeout_ms", c.request_timeout.count()},
             {"max_retries", c.max_retries},
             {"max_in_flight", c.max_in_flight},
             {"requests_per_minute", c.requests_per_minute},
             {"mock_rules", c.mock_rules},
             {"mock_default_response", c.mock_default_response}};
}

void from_json(const json& j, BackendConfig& c) {
    require_known_keys(j,
                       {"kind", "endpoint_url", "model_name", "temperature", "max_output_tokens",
                        "request_timeout_ms", "max_retries", "max_in_flight", "requests_per_minute", "mock_rules",
                        "mock_default_response"},
                       "backend");
    c = BackendConfig{};
    std::string kind(to_string(c.kind));
    read_opt(j, "kind", kind, "backend");
    c.kind = backend_kind_from_string(kind);
    if (j.contains("endpoint_url") && !j.at("endpoint_url").is_null()) {
        std::string url;
        read_opt(j, "endpoint_url", url, "backend");
        c.endpoint_url = url;
    }
    read_opt(j, "model_name", c.model_name, "backend");
    read_opt(j, "temperature", c.temperature, "backend");
    read_opt(j, "max_output_tokens", c.max_output_tokens, "backend");
    long long timeout = c.request_timeout.count();
    read_opt(j, "request_timeout_ms", timeout, "backend");
    c.request_timeout = std::chrono::milliseconds(timeout);
    read_opt(j, "max_retries", c.max_retries, "backend");
    read_opt(j, "max_in_flight", c.max_in_flight, "backend");
    read_opt(j, "requests_per_minute", c.requests_per_minute, "backend");
    if (j.contains("mock_rules")) {
        if (!j.at("mock_rules").is_array()) throw Error(ErrorKind::InvalidConfig, "backend.mock_rules must be a list");
        c.mock_rules = j.at("mock_rules").get<std::vector<MockRule>>();
    }
    read_opt(j, "mock_default_response", c.mock_default_response, "backend");
    c.validate();
}

}  // namespace claimcheck
