#pragma once

#include <json.hpp>

#include "claimcheck/backends.hpp"
#include "claimcheck/normalize.hpp"
#include "claimcheck/prompt.hpp"

namespace claimcheck {

// JSON forms of the per-module configs. Missing keys take their defaults;
// unknown keys are rejected with InvalidConfig so typos surface early.

void to_json(nlohmann::json& j, const NormalizeConfig& c);
void from_json(const nlohmann::json& j, NormalizeConfig& c);

void to_json(nlohmann::json& j, const PromptConfig& c);
void from_json(const nlohmann::json& j, PromptConfig& c);

void to_json(nlohmann::json& j, const MockRule& r);
void from_json(const nlohmann::json& j, MockRule& r);

void to_json(nlohmann::json& j, const BackendConfig& c);
void from_json(const nlohmann::json& j, BackendConfig& c);

/// Throws InvalidConfig if `j` is not an object or has keys outside `allowed`.
void require_known_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                        std::string_view section);

}  // namespace claimcheck
