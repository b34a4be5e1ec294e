#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace fragmark {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> bytes);

}  // namespace fragmark
