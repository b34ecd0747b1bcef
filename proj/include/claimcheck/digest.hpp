#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

namespace claimcheck {

/// Lowercase hex SHA-256 of the input bytes (64 characters).
std::string sha256_hex(std::string_view bytes);

/// SHA-256 over a sequence of fields, each framed as an 8-byte little-endian
/// length followed by its bytes. ("m","p") and ("mp","") never collide.
std::string framed_digest(std::initializer_list<std::string_view> fields);

}  // namespace claimcheck
