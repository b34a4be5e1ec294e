#include "fragmark/keyfile.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>

#include "fragmark/error.hpp"

namespace fragmark {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'F', 'T', 'W', 'K'};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t narrow_u32(std::size_t v) {
    if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::InvalidArgument, "record dimension exceeds 32-bit range");
    }
    return static_cast<std::uint32_t>(v);
}

[[noreturn]] void corrupt(const char* detail) {
    throw Error(ErrorCode::CorruptKeyFile, std::string("corrupt key file: ") + detail);
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint16_t u16() {
        need(2);
        const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | bytes_[pos_ + static_cast<std::size_t>(i)];
        pos_ += 4;
        return v;
    }

    void copy(std::span<std::uint8_t> out) {
        need(out.size());
        std::copy_n(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_), out.size(), out.begin());
        pos_ += out.size();
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (remaining() < n) corrupt("truncated");
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_key(const PositionRecord& record) {
    if (auto why = validate_record(record)) {
        throw Error(ErrorCode::InvalidArgument, "invalid position record: " + *why);
    }
    std::vector<std::uint8_t> out;
    out.reserve(kKeyHeaderSize + 8 * record.positions.size());
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    put_u16(out, kKeyVersion);
    put_u32(out, narrow_u32(record.cover.rows));
    put_u32(out, narrow_u32(record.cover.cols));
    put_u32(out, narrow_u32(record.tag.rows));
    put_u32(out, narrow_u32(record.tag.cols));
    out.insert(out.end(), record.tag_digest.begin(), record.tag_digest.end());
    for (const Coord& c : record.positions) {
        put_u32(out, c.row);
        put_u32(out, c.col);
    }
    return out;
}

PositionRecord decode_key(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        throw Error(ErrorCode::NotAKeyFile, "not a key file");
    }
    Reader in(bytes.subspan(kMagic.size()));
    if (in.remaining() < 2) corrupt("truncated");
    if (in.u16() != kKeyVersion) throw Error(ErrorCode::UnsupportedVersion, "unsupported version");

    PositionRecord record;
    record.cover = {in.u32(), in.u32()};
    record.tag = {in.u32(), in.u32()};
    in.copy(record.tag_digest);

    // Size check before allocating: the header alone cannot make us reserve
    // more than the file actually holds.
    const std::uint64_t count = static_cast<std::uint64_t>(record.tag.rows) * record.tag.cols;
    if (count == 0) corrupt("empty tag dimensions");
    if (count > in.remaining() / 8) corrupt("truncated");
    if (count != in.remaining() / 8 || in.remaining() % 8 != 0) corrupt("trailing data");

    record.positions.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint32_t row = in.u32();
        const std::uint32_t col = in.u32();
        record.positions.push_back({row, col});
    }
    if (auto why = validate_record(record)) corrupt(why->c_str());
    return record;
}

void write_key(const PositionRecord& record, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = encode_key(record);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

PositionRecord read_key(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                          std::istreambuf_iterator<char>());
    return decode_key(bytes);
}

}  // namespace fragmark
