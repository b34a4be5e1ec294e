#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fragmark/image.hpp"

namespace fragmark {

enum class AttackKind { SaltPepper, AdditiveNoise, RegionOverwrite, BitFlip };

struct Rect {
    std::size_t row = 0;
    std::size_t col = 0;
    std::size_t height = 0;
    std::size_t width = 0;
};

/// Parameters for one seeded attack. Only the fields belonging to `kind` are
/// read.
struct AttackSpec {
    AttackKind kind = AttackKind::SaltPepper;
    double density = 0.0;     // salt_pepper, in [0, 1]
    double sigma = 0.0;       // additive_noise, intensity units
    Rect rect;                // region_overwrite
    std::uint8_t fill = 0;    // region_overwrite
    std::size_t count = 0;    // bit_flip, distinct pixels
    std::uint64_t rng_seed = 0;

    static AttackSpec salt_pepper(double density, std::uint64_t seed);
    static AttackSpec additive_noise(double sigma, std::uint64_t seed);
    static AttackSpec region_overwrite(Rect rect, std::uint8_t fill);
    static AttackSpec bit_flip(std::size_t count, std::uint64_t seed);
};

AttackKind parse_attack_kind(std::string_view name);
std::string_view to_string(AttackKind kind);

/// Throws ErrorCode::InvalidAttack when the spec is not valid for the image.
void validate_attack(const GrayImage& image, const AttackSpec& spec);

GrayImage apply_attack(const GrayImage& image, const AttackSpec& spec);

}  // namespace fragmark
