#pragma once

// Brute-force referees for the watermark engine. Nothing here calls into the
// engine's position-selection, embedding or extraction internals except where
// an oracle explicitly exercises the public pipeline under test; expected
// values are always recomputed from first principles.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fragmark/image.hpp"
#include "fragmark/watermark.hpp"

namespace fragmark::oracle {

/// Literal transcription of the 1-based position-selection loop, including
/// the column-advance extension on exhausted rows. Returns 0-based positions,
/// or an empty vector when the probe budget runs out.
std::vector<Coord> reference_select(const GrayImage& cover_init, Dims tag,
                                    const std::function<std::pair<double, double>()>& draw);

/// Plain logistic recurrence with its own arithmetic, for stream cross-checks.
std::vector<std::pair<double, double>> reference_logistic(double k, double r, std::size_t steps);

/// extract(embed(cover, tag, key)).payload equals the high nibbles of the tag,
/// the low nibbles at recorded positions equal them too, and every watermarked
/// pixel keeps the cover's high nibble.
bool roundtrip(const GrayImage& cover, const GrayImage& tag, std::string_view key);

/// Every one of the 15 nonzero low-nibble alterations at every recorded
/// position changes exactly one extracted nibble, at that position's index.
bool fragility(const GrayImage& watermarked, const PositionRecord& record);

/// Every alteration of every pixel outside the record leaves the extraction
/// unchanged. Exhaustive, so keep the cover small.
bool complement_isolation(const GrayImage& watermarked, const PositionRecord& record);

/// (a SHR 4) == (b SHR 4) for every pixel.
bool high_nibbles_equal(const GrayImage& a, const GrayImage& b);

GrayImage random_image(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

}  // namespace fragmark::oracle
