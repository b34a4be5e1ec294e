#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace fragmark {

/// Logistic parameter used by every keyed stream. Strictly below 4 so the map
/// cannot send an interior point to exactly 1 and then 0.
inline constexpr double kLogisticR = 3.999;

/// Logistic-map iterate plus parameter. Stepping never mutates; it returns the
/// successor state alongside the drawn pair.
class ChaosState {
public:
    /// Throws ErrorCode::DegenerateChaosState unless 0 < k < 1 and k is not a
    /// fixed point of the map.
    explicit ChaosState(double k, double r = kLogisticR);

    double k() const noexcept { return k_; }
    double r() const noexcept { return r_; }

    friend bool operator==(const ChaosState&, const ChaosState&) = default;

private:
    double k_;
    double r_;
};

struct ChaosDraw {
    double x;
    double y;
    ChaosState next;
};

/// Derives the initial iterate from SHA-256(key_material). Throws
/// ErrorCode::EmptyKey on empty input.
ChaosState chaos_seed(std::span<const std::uint8_t> key_material, double r = kLogisticR);
ChaosState chaos_seed(std::string_view key_phrase, double r = kLogisticR);

/// Maps a 32-byte digest to the initial iterate: the top 53 bits of the first
/// eight bytes (big-endian) scaled into [0,1), then nudged upward one ulp at a
/// time until it clears {0, 1/4, 1/2, 3/4, 1 - 1/r}.
ChaosState chaos_seed_from_digest(const std::array<std::uint8_t, 32>& digest, double r = kLogisticR);

/// Two consecutive logistic iterations: x = r k (1-k), y = r x (1-x). The
/// successor state carries k = x; y is not fed back.
ChaosDraw chaos_step(const ChaosState& state);

}  // namespace fragmark
