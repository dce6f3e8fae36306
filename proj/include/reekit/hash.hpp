#pragma once

#include <string>
#include <string_view>

namespace reekit {

// Lower-case hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

// Shortened content identifier (first 32 hex digits of the SHA-256).
inline std::string content_id(std::string_view bytes) { return sha256_hex(bytes).substr(0, 32); }

}  // namespace reekit
