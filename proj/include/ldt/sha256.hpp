#pragma once

#include <cstdint>
#include <string>

namespace ldt {

// FIPS 180-4 SHA-256 of a byte string, hex-encoded. Used for content hashes
// of canonical JSON, nothing security-critical.
std::string sha256_hex(const std::string& bytes);

}  // namespace ldt
