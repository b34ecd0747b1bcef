#include <httplib.h>

#include <json.hpp>

#include "claimcheck/backends.hpp"
#include "claimcheck/error.hpp"

namespace claimcheck {

std::pair<std::string, std::string> split_url(std::string_view url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos)
        throw Error(ErrorKind::InvalidConfig, "endpoint_url needs a scheme: '" + std::string(url) + "'");
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https")
        throw Error(ErrorKind::InvalidConfig, "endpoint_url scheme must be http or https");
    const auto path_start = url.find('/', scheme_end + 3);
    std::string origin(url.substr(0, path_start));
    std::string path = path_start == std::string_view::npos ? "/" : std::string(url.substr(path_start));
    if (origin.size() <= scheme_end + 3) throw Error(ErrorKind::InvalidConfig, "endpoint_url has no host");
    return {std::move(origin), std::move(path)};
}

RemoteBackend::RemoteBackend(BackendConfig config, std::string api_key)
    : config_(std::move(config)), api_key_(std::move(api_key)) {
    if (!config_.endpoint_url) throw Error(ErrorKind::InvalidConfig, "remote backend requires endpoint_url");
    std::tie(origin_, path_) = split_url(*config_.endpoint_url);
}

std::string RemoteBackend::request_body(std::string_view prompt) const {
    nlohmann::ordered_json body;
    body["model"] = config_.model_name;
    body["messages"] = nlohmann::ordered_json::array({{{"role", "user"}, {"content", prompt}}});
    body["temperature"] = config_.temperature;
    body["max_tokens"] = config_.max_output_tokens;
    return body.dump();
}

std::string RemoteBackend::complete(const CompletionRequest& request) {
    httplib::Client client(origin_);
    const auto timeout = config_.request_timeout;
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));

    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto res = client.Post(path_, headers, request_body(request.prompt), "application/json");
    if (!res) throw BackendFailure("transport error: " + httplib::to_string(res.error()), true);
    if (res->status == 429 || res->status >= 500)
        throw BackendFailure("HTTP " + std::to_string(res->status), true);
    if (res->status < 200 || res->status >= 300)
        throw BackendFailure("HTTP " + std::to_string(res->status) + ": " + res->body, false);
    try {
        const auto j = nlohmann::json::parse(res->body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw BackendFailure(std::string("malformed completion response: ") + e.what(), false);
    }
}

}  // namespace claimcheck
