#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fragmark/error.hpp"

namespace fragmark {

/// Row/column coordinate, 0-based.
struct Coord {
    std::uint32_t row = 0;
    std::uint32_t col = 0;

    friend bool operator==(const Coord&, const Coord&) = default;
};

struct Dims {
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::size_t count() const noexcept { return rows * cols; }
    friend bool operator==(const Dims&, const Dims&) = default;
};

namespace detail {

template <typename Derived>
class Raster {
public:
    Raster() = default;
    Raster(std::size_t rows, std::size_t cols, std::uint8_t fill = 0)
        : dims_{rows, cols}, data_(checked_count(rows, cols), fill) {}
    Raster(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> data)
        : dims_{rows, cols}, data_(std::move(data)) {
        if (data_.size() != checked_count(rows, cols)) {
            throw Error(ErrorCode::InvalidArgument, "pixel count does not match dimensions");
        }
    }

    std::size_t rows() const noexcept { return dims_.rows; }
    std::size_t cols() const noexcept { return dims_.cols; }
    Dims dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::uint8_t& at(std::size_t r, std::size_t c) { return data_[r * dims_.cols + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return data_[r * dims_.cols + c]; }
    std::uint8_t& operator[](std::size_t i) { return data_[i]; }
    std::uint8_t operator[](std::size_t i) const { return data_[i]; }

    std::span<std::uint8_t> data() noexcept { return data_; }
    std::span<const std::uint8_t> data() const noexcept { return data_; }

    bool contains(Coord c) const noexcept { return c.row < dims_.rows && c.col < dims_.cols; }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    static std::size_t checked_count(std::size_t rows, std::size_t cols) {
        if (rows == 0 || cols == 0) {
            throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
        }
        return rows * cols;
    }

    Dims dims_{};
    std::vector<std::uint8_t> data_;
};

}  // namespace detail

/// 8-bit single-channel raster, row-major.
class GrayImage : public detail::Raster<GrayImage> {
public:
    using Raster::Raster;
};

/// Row-major plane of 4-bit values; every element is in [0, 15].
class NibblePlane : public detail::Raster<NibblePlane> {
public:
    NibblePlane() = default;
    NibblePlane(std::size_t rows, std::size_t cols, std::uint8_t fill = 0)
        : Raster(rows, cols, validated(fill)) {}
    NibblePlane(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> data)
        : Raster(rows, cols, std::move(data)) {
        for (std::uint8_t v : this->data()) validated(v);
    }

private:
    static std::uint8_t validated(std::uint8_t v) {
        if (v > 0x0F) throw Error(ErrorCode::InvalidArgument, "nibble value out of range");
        return v;
    }
};

}  // namespace fragmark
