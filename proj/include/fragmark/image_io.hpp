#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fragmark/image.hpp"

namespace fragmark {

struct ReadOptions {
    /// Convert colour input with BT.601 luma, Y = round(0.299 R + 0.587 G + 0.114 B).
    /// Without it only 8-bit single-channel input is accepted.
    bool to_gray = false;
};

/// Binary PGM (P5, maxval 255). Header is written as "P5\n<cols> <rows>\n255\n".
std::vector<std::uint8_t> encode_pgm(const GrayImage& image);

/// Decodes P5 (maxval 255) and, with to_gray, P6 (maxval 255). Comments and
/// arbitrary whitespace between header fields are accepted; a single
/// whitespace byte separates maxval from the raster.
GrayImage decode_pnm(std::span<const std::uint8_t> bytes, const ReadOptions& options = {});

/// Decodes PNG. 8-bit grayscale is taken as-is; anything else requires to_gray.
GrayImage decode_png(std::span<const std::uint8_t> bytes, const ReadOptions& options = {});

/// Dispatches on the file signature.
GrayImage read_image(const std::filesystem::path& path, const ReadOptions& options = {});
GrayImage decode_image(std::span<const std::uint8_t> bytes, const ReadOptions& options = {});

/// Always writes binary PGM.
void write_image(const GrayImage& image, const std::filesystem::path& path);

std::uint8_t luma_bt601(std::uint8_t r, std::uint8_t g, std::uint8_t b);

}  // namespace fragmark
