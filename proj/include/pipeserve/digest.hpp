#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "pipeserve/types.hpp"

namespace pipeserve {

Checksum sha256(std::span<const uint8_t> bytes);
Checksum sha256(std::string_view bytes);

// 64-bit hash for cache keys that carry the full record alongside them.
uint64_t fnv1a64(std::string_view bytes);

}  // namespace pipeserve
