#pragma once

#include <map>
#include <string>
#include <string_view>

namespace claimcheck {

/// Directory searched for `<template_id>.txt`: $CLAIMCHECK_TEMPLATES when set,
/// otherwise the directory baked in at build time.
std::string template_dir();

/// Loads `<dir>/<template_id>.txt` byte-exact. Loaded files are memoized per
/// path. Throws UnknownTemplate if the file does not exist.
const std::string& load_template(std::string_view template_id);
const std::string& load_template(std::string_view template_id, const std::string& dir);

/// Single-pass substitution of `{name}` placeholders. Substituted values are
/// never rescanned, so a text containing "{lang}" stays literal. Placeholders
/// without a binding are left untouched.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& vars);

}  // namespace claimcheck
