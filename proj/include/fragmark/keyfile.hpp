#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fragmark/watermark.hpp"

namespace fragmark {

/// Position-record key file, version 1. All integers little-endian:
///
///   offset  size  field
///   0       4     magic "FTWK"
///   4       2     version (1)
///   6       4     cover_rows
///   10      4     cover_cols
///   14      4     tag_rows
///   18      4     tag_cols
///   22      32    SHA-256 of the embedded nibble plane
///   54      8*N   N = tag_rows*tag_cols pairs of (row, col), 0-based, record order
///
/// Nothing may follow the last pair.
inline constexpr std::size_t kKeyHeaderSize = 54;
inline constexpr std::uint16_t kKeyVersion = 1;

std::vector<std::uint8_t> encode_key(const PositionRecord& record);

/// Errors: NotAKeyFile (short or wrong magic), UnsupportedVersion, and
/// CorruptKeyFile for truncation, trailing bytes, out-of-bounds or duplicate
/// coordinates.
PositionRecord decode_key(std::span<const std::uint8_t> bytes);

void write_key(const PositionRecord& record, const std::filesystem::path& path);
PositionRecord read_key(const std::filesystem::path& path);

}  // namespace fragmark
