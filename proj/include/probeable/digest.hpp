#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace probeable {

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// 64-bit FNV-1a, used to derive independent sub-seeds from labels.
std::uint64_t fnv1a64(std::string_view data);

/// Mixes a seed with a label into a new seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

/// Hex string of `bytes` random bytes from the system entropy source.
std::string random_token(std::size_t bytes = 16);

}  // namespace probeable
