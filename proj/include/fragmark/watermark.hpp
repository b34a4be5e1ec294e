#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fragmark/chaos.hpp"
#include "fragmark/digest.hpp"
#include "fragmark/image.hpp"

namespace fragmark {

/// Ordered list of cover coordinates carrying payload nibbles, in tag
/// row-major order. Together with the cover/tag shapes and the payload digest
/// this is the secret needed for extraction.
struct PositionRecord {
    Dims cover;
    Dims tag;
    std::vector<Coord> positions;
    Digest tag_digest{};

    friend bool operator==(const PositionRecord&, const PositionRecord&) = default;
};

/// Checks bounds, length and duplicate-freedom. Returns an empty optional when
/// the record is consistent, otherwise a short reason.
std::optional<std::string> validate_record(const PositionRecord& record);

struct TamperedPosition {
    std::uint32_t tag_row;
    std::uint32_t tag_col;
    std::uint32_t cover_row;
    std::uint32_t cover_col;

    friend bool operator==(const TamperedPosition&, const TamperedPosition&) = default;
};

struct VerifyReport {
    bool authentic = false;
    // Fraction of nibbles differing from the reference plane. 0 for an
    // authentic image without a reference; unknown when tampered and no
    // reference was supplied.
    std::optional<double> ber;
    std::vector<TamperedPosition> tampered_positions;
};

struct Selection {
    GrayImage cover_cleared;
    PositionRecord record;
};

struct Embedding {
    GrayImage watermarked;
    PositionRecord record;
};

struct Extraction {
    GrayImage tag;
    NibblePlane payload;
};

/// Source of (x, y) pairs in (0,1). The keyed chaos stream is the production
/// source; tests substitute scripted streams.
using UnitPairSource = std::function<std::pair<double, double>()>;

/// Forces every pixel odd (even values get +1). The high nibble never changes
/// and every low nibble becomes nonzero.
GrayImage initialize_cover(const GrayImage& cover);

/// Keeps the high nibble of each tag pixel.
NibblePlane prepare_tag(const GrayImage& tag);

/// round(fmod(u * 1000, extent - 1)) as a 0-based index in [0, extent - 1].
/// Throws ErrorCode::CoverTooSmall when extent < 2.
std::uint32_t map_unit_to_coord(double u, std::size_t extent);

/// Largest tag pixel count accepted for a cover of the given shape.
std::size_t embedding_capacity(Dims cover) noexcept;

/// Claims one cover pixel per tag pixel by clearing its low nibble. The
/// returned record has a zero digest; embed_payload fills it.
Selection select_positions(const GrayImage& cover_init, Dims tag, const ChaosState& chaos);
Selection select_positions(const GrayImage& cover_init, Dims tag, const UnitPairSource& draw);

/// Writes payload nibble i into the low nibble of record.positions[i].
Embedding embed_payload(const GrayImage& cover_cleared, const NibblePlane& payload,
                        PositionRecord record);

/// Full pipeline keyed by arbitrary bytes (typically a passphrase).
Embedding embed(const GrayImage& cover, const GrayImage& tag,
                std::span<const std::uint8_t> key_material);
Embedding embed(const GrayImage& cover, const GrayImage& tag, std::string_view key_phrase);

Extraction extract(const GrayImage& watermarked, const PositionRecord& record);

/// Authenticity is decided by the payload digest alone. When the image is
/// tampered and a reference plane is supplied, every differing nibble is
/// reported with both its tag and cover coordinate.
VerifyReport verify(const GrayImage& watermarked, const PositionRecord& record);
VerifyReport verify(const GrayImage& watermarked, const PositionRecord& record,
                    const NibblePlane& reference);

/// SHA-256 over the nibbles, one per byte, row-major.
Digest payload_digest(const NibblePlane& payload);

}  // namespace fragmark
