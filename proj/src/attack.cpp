#include "fragmark/attack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "fragmark/error.hpp"

namespace fragmark {

namespace {

[[noreturn]] void invalid(const std::string& why) {
    throw Error(ErrorCode::InvalidAttack, "invalid attack: " + why);
}

// Uniform index in [0, n) drawn directly from the 64-bit stream, so results do
// not depend on the standard library's distribution implementations.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
}

double unit_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

GrayImage salt_pepper(const GrayImage& image, const AttackSpec& spec) {
    GrayImage out = image;
    std::mt19937_64 rng(spec.rng_seed);
    for (std::uint8_t& p : out.data()) {
        if (unit_open(rng) < spec.density) p = (rng() & 1U) ? 255 : 0;
    }
    return out;
}

GrayImage additive_noise(const GrayImage& image, const AttackSpec& spec) {
    GrayImage out = image;
    std::mt19937_64 rng(spec.rng_seed);
    // Box-Muller; the second variate is discarded to keep one draw per pixel.
    for (std::uint8_t& p : out.data()) {
        const double u1 = unit_open(rng);
        const double u2 = unit_open(rng);
        const double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        const double v = static_cast<double>(p) + std::round(spec.sigma * g);
        p = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
    return out;
}

GrayImage region_overwrite(const GrayImage& image, const AttackSpec& spec) {
    GrayImage out = image;
    const Rect& r = spec.rect;
    for (std::size_t row = r.row; row < r.row + r.height; ++row) {
        for (std::size_t col = r.col; col < r.col + r.width; ++col) out.at(row, col) = spec.fill;
    }
    return out;
}

GrayImage bit_flip(const GrayImage& image, const AttackSpec& spec) {
    GrayImage out = image;
    std::mt19937_64 rng(spec.rng_seed);
    // Partial Fisher-Yates: the first `count` slots become a uniform sample of
    // distinct pixel indices.
    std::vector<std::size_t> order(out.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < spec.count; ++i) {
        std::swap(order[i], order[i + uniform_index(rng, order.size() - i)]);
        out[order[i]] ^= static_cast<std::uint8_t>(1U << uniform_index(rng, 8));
    }
    return out;
}

}  // namespace

AttackSpec AttackSpec::salt_pepper(double density, std::uint64_t seed) {
    AttackSpec s;
    s.kind = AttackKind::SaltPepper;
    s.density = density;
    s.rng_seed = seed;
    return s;
}

AttackSpec AttackSpec::additive_noise(double sigma, std::uint64_t seed) {
    AttackSpec s;
    s.kind = AttackKind::AdditiveNoise;
    s.sigma = sigma;
    s.rng_seed = seed;
    return s;
}

AttackSpec AttackSpec::region_overwrite(Rect rect, std::uint8_t fill) {
    AttackSpec s;
    s.kind = AttackKind::RegionOverwrite;
    s.rect = rect;
    s.fill = fill;
    return s;
}

AttackSpec AttackSpec::bit_flip(std::size_t count, std::uint64_t seed) {
    AttackSpec s;
    s.kind = AttackKind::BitFlip;
    s.count = count;
    s.rng_seed = seed;
    return s;
}

AttackKind parse_attack_kind(std::string_view name) {
    if (name == "salt_pepper") return AttackKind::SaltPepper;
    if (name == "additive_noise") return AttackKind::AdditiveNoise;
    if (name == "region_overwrite") return AttackKind::RegionOverwrite;
    if (name == "bit_flip") return AttackKind::BitFlip;
    invalid("unknown kind '" + std::string(name) + "'");
}

std::string_view to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::SaltPepper: return "salt_pepper";
        case AttackKind::AdditiveNoise: return "additive_noise";
        case AttackKind::RegionOverwrite: return "region_overwrite";
        case AttackKind::BitFlip: return "bit_flip";
    }
    return "unknown";
}

void validate_attack(const GrayImage& image, const AttackSpec& spec) {
    switch (spec.kind) {
        case AttackKind::SaltPepper:
            if (!(spec.density >= 0.0 && spec.density <= 1.0)) invalid("density must be in [0, 1]");
            break;
        case AttackKind::AdditiveNoise:
            if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) invalid("sigma must be >= 0");
            break;
        case AttackKind::RegionOverwrite: {
            const Rect& r = spec.rect;
            if (r.height == 0 || r.width == 0) invalid("rectangle must be non-empty");
            if (r.row >= image.rows() || r.col >= image.cols() ||
                r.height > image.rows() - r.row || r.width > image.cols() - r.col) {
                invalid("rectangle outside image");
            }
            break;
        }
        case AttackKind::BitFlip:
            if (spec.count == 0) invalid("count must be positive");
            if (spec.count > image.size()) invalid("count exceeds pixel count");
            break;
    }
}

GrayImage apply_attack(const GrayImage& image, const AttackSpec& spec) {
    validate_attack(image, spec);
    switch (spec.kind) {
        case AttackKind::SaltPepper: return salt_pepper(image, spec);
        case AttackKind::AdditiveNoise: return additive_noise(image, spec);
        case AttackKind::RegionOverwrite: return region_overwrite(image, spec);
        case AttackKind::BitFlip: return bit_flip(image, spec);
    }
    invalid("unknown kind");
}

}  // namespace fragmark
