#include "fragmark/chaos.hpp"

#include <cmath>

#include "fragmark/digest.hpp"
#include "fragmark/error.hpp"

namespace fragmark {

namespace {

// 0 and 1 - 1/r are fixed points; 1/2 maps to the maximum r/4 (exactly 1 when
// r = 4); 1/4 and 3/4 are the preimages of 3/4 at r = 4.
bool is_forbidden_seed(double k, double r) {
    return k <= 0.0 || k >= 1.0 || k == 0.25 || k == 0.5 || k == 0.75 || k == 1.0 - 1.0 / r;
}

bool is_degenerate(double v, double r) {
    return !(v > 0.0 && v < 1.0) || v == 1.0 - 1.0 / r;
}

[[noreturn]] void degenerate() {
    throw Error(ErrorCode::DegenerateChaosState, "degenerate chaos state");
}

}  // namespace

ChaosState::ChaosState(double k, double r) : k_(k), r_(r) {
    if (!(r > 0.0 && r <= 4.0) || is_degenerate(k, r)) degenerate();
}

ChaosState chaos_seed_from_digest(const std::array<std::uint8_t, 32>& digest, double r) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits = (bits << 8) | digest[static_cast<std::size_t>(i)];
    double k = std::ldexp(static_cast<double>(bits >> 11), -53);
    while (is_forbidden_seed(k, r)) k = std::nextafter(k, 1.0);
    return ChaosState(k, r);
}

ChaosState chaos_seed(std::span<const std::uint8_t> key_material, double r) {
    if (key_material.empty()) throw Error(ErrorCode::EmptyKey, "empty key");
    return chaos_seed_from_digest(sha256(key_material), r);
}

ChaosState chaos_seed(std::string_view key_phrase, double r) {
    return chaos_seed(std::span(reinterpret_cast<const std::uint8_t*>(key_phrase.data()),
                                key_phrase.size()),
                      r);
}

ChaosDraw chaos_step(const ChaosState& state) {
    const double r = state.r();
    const double k = state.k();
    const double x = r * k * (1.0 - k);
    if (is_degenerate(x, r)) degenerate();
    const double y = r * x * (1.0 - x);
    if (is_degenerate(y, r)) degenerate();
    return {x, y, ChaosState(x, r)};
}

}  // namespace fragmark
