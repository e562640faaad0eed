#pragma once

#include <cstdint>
#include <string>

namespace qonet {

/// Shortest round-trippable decimal form of a double ("%.17g"), shared by
/// every emitter so identical inputs produce byte-identical files.
std::string format_double(double value);

/// FNV-1a 64-bit hash; stable across platforms and runs.
std::uint64_t fnv1a_64(const std::string& text);

/// Lower-case hexadecimal rendering of a 64-bit hash.
std::string hash_hex(std::uint64_t value);

}  // namespace qonet
