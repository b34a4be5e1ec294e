#include "fragmark/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "fragmark/error.hpp"

namespace fragmark {

namespace {

[[noreturn]] void malformed(const std::string& detail) {
    throw Error(ErrorCode::MalformedHeader, "malformed header: " + detail);
}

[[noreturn]] void unsupported(const std::string& detail) {
    throw Error(ErrorCode::UnsupportedFormat, "unsupported format: " + detail);
}

class PnmHeaderParser {
public:
    explicit PnmHeaderParser(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t next_number() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) malformed("expected a number");
        std::size_t v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            if (v > (std::numeric_limits<std::uint32_t>::max() - 9) / 10) malformed("number too large");
            v = v * 10 + static_cast<std::size_t>(bytes_[pos_++] - '0');
        }
        return v;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) malformed("missing raster separator");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;
};

bool is_png(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

struct PngSource {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;
};

void png_read_from_span(png_structp png, png_bytep out, png_size_t len) {
    auto* src = static_cast<PngSource*>(png_get_io_ptr(png));
    if (len > src->bytes.size() - src->pos) png_error(png, "truncated PNG stream");
    std::memcpy(out, src->bytes.data() + src->pos, len);
    src->pos += len;
}

// libpng reports failures through longjmp; the message is captured here and
// rethrown once we are back on the C++ side of the setjmp boundary.
void png_error_to_buffer(png_structp png, png_const_charp msg) {
    auto* buf = static_cast<std::string*>(png_get_error_ptr(png));
    *buf = msg ? msg : "unknown libpng error";
    std::longjmp(png_jmpbuf(png), 1);
}

void png_ignore_warning(png_structp, png_const_charp) {}

class PngReadHandle {
public:
    explicit PngReadHandle(std::string* error_sink) {
        png_ = png_create_read_struct(PNG_LIBPNG_VER_STRING, error_sink, png_error_to_buffer,
                                      png_ignore_warning);
        if (!png_) throw Error(ErrorCode::Io, "cannot allocate PNG reader");
        info_ = png_create_info_struct(png_);
        if (!info_) {
            png_destroy_read_struct(&png_, nullptr, nullptr);
            throw Error(ErrorCode::Io, "cannot allocate PNG info");
        }
    }
    ~PngReadHandle() { png_destroy_read_struct(&png_, &info_, nullptr); }
    PngReadHandle(const PngReadHandle&) = delete;
    PngReadHandle& operator=(const PngReadHandle&) = delete;

    png_structp png() const { return png_; }
    png_infop info() const { return info_; }

private:
    png_structp png_ = nullptr;
    png_infop info_ = nullptr;
};

// Everything between setjmp and the end of this function must be trivially
// destructible; the caller owns all C++ objects.
bool png_decode_raw(PngReadHandle& h, PngSource& src, bool to_gray, std::vector<std::uint8_t>& out,
                    png_uint_32& width, png_uint_32& height, int& channels, bool& rejected) {
    png_structp png = h.png();
    png_infop info = h.info();
    if (setjmp(png_jmpbuf(png))) return false;

    png_set_read_fn(png, &src, png_read_from_span);
    png_read_info(png, info);
    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);

    if (!(depth == 8 && color == PNG_COLOR_TYPE_GRAY)) {
        if (!to_gray) {
            rejected = true;
            return true;
        }
        if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
        if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        if (depth == 16) png_set_strip_16(png);
        if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
        if (!(color & PNG_COLOR_MASK_COLOR)) png_set_gray_to_rgb(png);
    }
    png_read_update_info(png, info);
    channels = png_get_channels(png, info);
    const png_size_t rowbytes = png_get_rowbytes(png, info);
    if (width == 0 || height == 0 || rowbytes != static_cast<png_size_t>(width) * channels) {
        png_error(png, "unexpected PNG row layout");
    }
    out.resize(rowbytes * height);
    for (png_uint_32 r = 0; r < height; ++r) {
        png_read_row(png, out.data() + static_cast<std::size_t>(r) * rowbytes, nullptr);
    }
    png_read_end(png, nullptr);
    return true;
}

}  // namespace

std::uint8_t luma_bt601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    // Exact integer form of round(0.299 R + 0.587 G + 0.114 B); ties round up.
    return static_cast<std::uint8_t>((299U * r + 587U * g + 114U * b + 500U) / 1000U);
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
    const std::string header =
        "P5\n" + std::to_string(image.cols()) + " " + std::to_string(image.rows()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.data().begin(), image.data().end());
    return out;
}

GrayImage decode_pnm(std::span<const std::uint8_t> bytes, const ReadOptions& options) {
    if (bytes.size() < 2 || bytes[0] != 'P') unsupported("not a PNM file");
    const char kind = static_cast<char>(bytes[1]);
    if (kind != '5' && kind != '6') unsupported(std::string("PNM variant P") + kind);
    if (kind == '6' && !options.to_gray) unsupported("colour PPM (use --to-gray)");

    PnmHeaderParser header(bytes);
    const std::size_t cols = header.next_number();
    const std::size_t rows = header.next_number();
    const std::size_t maxval = header.next_number();
    if (cols == 0 || rows == 0) malformed("zero dimension");
    if (maxval != 255) throw Error(ErrorCode::UnsupportedMaxval, "unsupported maxval");
    const std::size_t offset = header.raster_offset();

    const std::size_t channels = kind == '6' ? 3 : 1;
    if (rows > (bytes.size() - offset) / cols / channels) malformed("raster truncated");
    const std::size_t expected = rows * cols * channels;
    if (bytes.size() - offset < expected) malformed("raster truncated");
    if (bytes.size() - offset > expected) malformed("trailing data after raster");

    const auto raster = bytes.subspan(offset, expected);
    if (channels == 1) return GrayImage(rows, cols, std::vector<std::uint8_t>(raster.begin(), raster.end()));
    GrayImage out(rows, cols);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = luma_bt601(raster[3 * i], raster[3 * i + 1], raster[3 * i + 2]);
    }
    return out;
}

GrayImage decode_png(std::span<const std::uint8_t> bytes, const ReadOptions& options) {
    if (!is_png(bytes)) unsupported("not a PNG file");
    std::string error;
    PngReadHandle handle(&error);
    PngSource src{bytes, 0};
    std::vector<std::uint8_t> raw;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int channels = 0;
    bool rejected = false;
    if (!png_decode_raw(handle, src, options.to_gray, raw, width, height, channels, rejected)) {
        malformed("PNG: " + error);
    }
    if (rejected) unsupported("PNG is not 8-bit grayscale (use --to-gray)");

    if (channels == 1) return GrayImage(height, width, std::move(raw));
    if (channels != 3) unsupported("PNG channel layout");
    GrayImage out(height, width);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = luma_bt601(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]);
    }
    return out;
}

GrayImage decode_image(std::span<const std::uint8_t> bytes, const ReadOptions& options) {
    if (is_png(bytes)) return decode_png(bytes, options);
    if (bytes.size() >= 2 && bytes[0] == 'P') return decode_pnm(bytes, options);
    unsupported("unrecognised image signature");
}

GrayImage read_image(const std::filesystem::path& path, const ReadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                          std::istreambuf_iterator<char>());
    return decode_image(bytes, options);
}

void write_image(const GrayImage& image, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = encode_pgm(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

}  // namespace fragmark
