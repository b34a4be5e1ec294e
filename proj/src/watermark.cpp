#include "fragmark/watermark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fragmark/error.hpp"

namespace fragmark {

namespace {

constexpr std::uint8_t kLowNibble = 0x0F;
constexpr std::uint8_t kHighNibble = 0xF0;

// Collision probe along one axis: the 1-based rule x <- rem(x + 1, n - 1) + 1
// expressed on 0-based indices.
std::uint32_t probe_step(std::uint32_t index, std::size_t extent) {
    return static_cast<std::uint32_t>((static_cast<std::size_t>(index) + 2) % (extent - 1));
}

void require_cover_shape(Dims cover) {
    if (cover.rows < 2 || cover.cols < 2) throw Error(ErrorCode::CoverTooSmall, "cover too small");
    if (cover.rows > std::numeric_limits<std::uint32_t>::max() ||
        cover.cols > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::InvalidArgument, "cover dimensions exceed 32-bit range");
    }
}

[[noreturn]] void dimension_mismatch() {
    throw Error(ErrorCode::RecordDimensionMismatch, "record does not match image dimensions");
}

void require_record_matches(const GrayImage& image, const PositionRecord& record) {
    if (image.dims() != record.cover) dimension_mismatch();
    for (const Coord& c : record.positions) {
        if (!image.contains(c)) dimension_mismatch();
    }
    if (record.positions.size() != record.tag.count()) {
        throw Error(ErrorCode::RecordPayloadMismatch, "record/payload mismatch");
    }
}

}  // namespace

std::optional<std::string> validate_record(const PositionRecord& record) {
    if (record.cover.rows < 2 || record.cover.cols < 2) return "cover dimensions too small";
    if (record.tag.rows == 0 || record.tag.cols == 0) return "empty tag dimensions";
    if (record.positions.size() != record.tag.count()) return "position count does not match tag";
    // Keyed on the packed coordinate rather than a cover-sized bitmap: decoded
    // headers may claim absurd cover dimensions.
    std::vector<std::uint64_t> packed;
    packed.reserve(record.positions.size());
    for (const Coord& c : record.positions) {
        if (c.row >= record.cover.rows || c.col >= record.cover.cols) return "coordinate out of bounds";
        packed.push_back((std::uint64_t{c.row} << 32) | c.col);
    }
    std::sort(packed.begin(), packed.end());
    if (std::adjacent_find(packed.begin(), packed.end()) != packed.end()) return "duplicate coordinate";
    return std::nullopt;
}

GrayImage initialize_cover(const GrayImage& cover) {
    GrayImage out = cover;
    for (std::uint8_t& p : out.data()) p |= 0x01;
    return out;
}

NibblePlane prepare_tag(const GrayImage& tag) {
    NibblePlane out(tag.rows(), tag.cols());
    for (std::size_t i = 0; i < tag.size(); ++i) out[i] = static_cast<std::uint8_t>(tag[i] >> 4);
    return out;
}

std::uint32_t map_unit_to_coord(double u, std::size_t extent) {
    if (extent < 2) throw Error(ErrorCode::CoverTooSmall, "cover too small");
    if (!(u >= 0.0 && u < 1.0)) throw Error(ErrorCode::InvalidArgument, "unit value out of range");
    const double one_based = std::round(std::fmod(u * 1000.0, static_cast<double>(extent - 1))) + 1.0;
    return static_cast<std::uint32_t>(one_based) - 1;
}

std::size_t embedding_capacity(Dims cover) noexcept { return cover.count() / 2; }

Selection select_positions(const GrayImage& cover_init, Dims tag, const ChaosState& chaos) {
    ChaosState state = chaos;
    return select_positions(cover_init, tag, [&state]() {
        const ChaosDraw d = chaos_step(state);
        state = d.next;
        return std::pair{d.x, d.y};
    });
}

Selection select_positions(const GrayImage& cover_init, Dims tag, const UnitPairSource& draw) {
    const Dims cover = cover_init.dims();
    require_cover_shape(cover);
    if (tag.rows == 0 || tag.cols == 0) {
        throw Error(ErrorCode::InvalidArgument, "tag dimensions must be positive");
    }
    if (tag.count() > embedding_capacity(cover)) {
        throw Error(ErrorCode::CapacityExceeded, "embedding capacity exceeded");
    }
    for (std::uint8_t p : cover_init.data()) {
        if ((p & kLowNibble) == 0) {
            throw Error(ErrorCode::CoverNotInitialized, "cover has not been initialized");
        }
    }

    Selection sel{cover_init, PositionRecord{cover, tag, {}, {}}};
    GrayImage& img = sel.cover_cleared;
    sel.record.positions.reserve(tag.count());
    // Shadow of the low-nibble sentinel; the two must always agree.
    std::vector<bool> claimed(cover.count(), false);
    const std::size_t probe_budget = cover.count();

    for (std::size_t n = 0; n < tag.count(); ++n) {
        const auto [u, v] = draw();
        std::uint32_t row = map_unit_to_coord(u, cover.rows);
        std::uint32_t col = map_unit_to_coord(v, cover.cols);

        std::size_t probes = 0;
        std::size_t row_probes = 0;
        while ((img.at(row, col) & kLowNibble) == 0) {
            if (!claimed[row * cover.cols + col]) {
                throw Error(ErrorCode::CoverNotInitialized, "claim sentinel out of sync");
            }
            if (probes == probe_budget) {
                throw Error(ErrorCode::CapacityExceeded, "embedding capacity exceeded");
            }
            ++probes;
            if (row_probes == cover.rows) {
                col = probe_step(col, cover.cols);
                row_probes = 0;
            } else {
                row = probe_step(row, cover.rows);
                ++row_probes;
            }
        }
        if (claimed[row * cover.cols + col]) {
            throw Error(ErrorCode::CoverNotInitialized, "claim sentinel out of sync");
        }
        claimed[row * cover.cols + col] = true;
        img.at(row, col) &= kHighNibble;
        sel.record.positions.push_back({row, col});
    }
    return sel;
}

Digest payload_digest(const NibblePlane& payload) { return sha256(payload.data()); }

Embedding embed_payload(const GrayImage& cover_cleared, const NibblePlane& payload,
                        PositionRecord record) {
    if (payload.dims() != record.tag || record.positions.size() != payload.size()) {
        throw Error(ErrorCode::RecordPayloadMismatch, "record/payload mismatch");
    }
    require_record_matches(cover_cleared, record);

    Embedding out{cover_cleared, std::move(record)};
    for (std::size_t i = 0; i < payload.size(); ++i) {
        const Coord c = out.record.positions[i];
        std::uint8_t& px = out.watermarked.at(c.row, c.col);
        if ((px & kLowNibble) != 0) {
            throw Error(ErrorCode::InvalidArgument, "recorded pixel was not cleared");
        }
        px = static_cast<std::uint8_t>((px & kHighNibble) | payload[i]);
    }
    out.record.tag_digest = payload_digest(payload);
    return out;
}

Embedding embed(const GrayImage& cover, const GrayImage& tag,
                std::span<const std::uint8_t> key_material) {
    const ChaosState chaos = chaos_seed(key_material);
    Selection sel = select_positions(initialize_cover(cover), tag.dims(), chaos);
    return embed_payload(sel.cover_cleared, prepare_tag(tag), std::move(sel.record));
}

Embedding embed(const GrayImage& cover, const GrayImage& tag, std::string_view key_phrase) {
    return embed(cover, tag,
                 std::span(reinterpret_cast<const std::uint8_t*>(key_phrase.data()),
                           key_phrase.size()));
}

Extraction extract(const GrayImage& watermarked, const PositionRecord& record) {
    require_record_matches(watermarked, record);
    Extraction out{GrayImage(record.tag.rows, record.tag.cols),
                   NibblePlane(record.tag.rows, record.tag.cols)};
    for (std::size_t i = 0; i < record.positions.size(); ++i) {
        const Coord c = record.positions[i];
        const auto nibble = static_cast<std::uint8_t>(watermarked.at(c.row, c.col) & kLowNibble);
        out.payload[i] = nibble;
        out.tag[i] = static_cast<std::uint8_t>(nibble << 4);
    }
    return out;
}

VerifyReport verify(const GrayImage& watermarked, const PositionRecord& record) {
    const Extraction ex = extract(watermarked, record);
    VerifyReport report;
    report.authentic = payload_digest(ex.payload) == record.tag_digest;
    if (report.authentic) report.ber = 0.0;
    return report;
}

VerifyReport verify(const GrayImage& watermarked, const PositionRecord& record,
                    const NibblePlane& reference) {
    if (reference.dims() != record.tag) {
        throw Error(ErrorCode::DimensionMismatch, "reference does not match tag dimensions");
    }
    const Extraction ex = extract(watermarked, record);
    VerifyReport report;
    report.authentic = payload_digest(ex.payload) == record.tag_digest;
    if (report.authentic) {
        report.ber = 0.0;
        return report;
    }
    const std::size_t cols = record.tag.cols;
    for (std::size_t i = 0; i < ex.payload.size(); ++i) {
        if (ex.payload[i] == reference[i]) continue;
        const Coord c = record.positions[i];
        report.tampered_positions.push_back({static_cast<std::uint32_t>(i / cols),
                                             static_cast<std::uint32_t>(i % cols), c.row, c.col});
    }
    report.ber = static_cast<double>(report.tampered_positions.size()) /
                 static_cast<double>(ex.payload.size());
    return report;
}

}  // namespace fragmark
