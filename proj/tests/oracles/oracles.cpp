#include "oracles.hpp"

#include <cmath>

namespace fragmark::oracle {

namespace {

// MATLAB rem/round on nonnegative operands.
double matlab_rem(double a, double b) { return a - b * std::floor(a / b); }
double matlab_round(double a) { return std::floor(a + 0.5); }

}  // namespace

std::vector<Coord> reference_select(const GrayImage& cover_init, Dims tag,
                                    const std::function<std::pair<double, double>()>& draw) {
    const long cr = static_cast<long>(cover_init.rows());
    const long cc = static_cast<long>(cover_init.cols());
    // 1-based working copy, cover(x, y).
    std::vector<std::vector<int>> cover(static_cast<std::size_t>(cr + 1),
                                        std::vector<int>(static_cast<std::size_t>(cc + 1), 0));
    for (long i = 1; i <= cr; ++i) {
        for (long j = 1; j <= cc; ++j) {
            cover[i][j] = cover_init.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
        }
    }

    std::vector<Coord> record;
    for (std::size_t local = 0; local < tag.rows * tag.cols; ++local) {
        auto [xu, yu] = draw();
        long x = static_cast<long>(matlab_round(matlab_rem(xu * 1000, static_cast<double>(cr - 1)))) + 1;
        long y = static_cast<long>(matlab_round(matlab_rem(yu * 1000, static_cast<double>(cc - 1)))) + 1;
        int temp = cover[x][y] & 15;
        long tries = 0;
        long row_tries = 0;
        while (temp == 0) {
            if (tries == cr * cc) return {};
            ++tries;
            if (row_tries == cr) {
                y = static_cast<long>(matlab_rem(static_cast<double>(y + 1), static_cast<double>(cc - 1))) + 1;
                row_tries = 0;
            } else {
                x = static_cast<long>(matlab_rem(static_cast<double>(x + 1), static_cast<double>(cr - 1))) + 1;
                ++row_tries;
            }
            temp = cover[x][y] & 15;
        }
        cover[x][y] &= 240;
        record.push_back({static_cast<std::uint32_t>(x - 1), static_cast<std::uint32_t>(y - 1)});
    }
    return record;
}

std::vector<std::pair<double, double>> reference_logistic(double k, double r, std::size_t steps) {
    std::vector<std::pair<double, double>> out;
    out.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        volatile double kk = k;  // keep the compiler from fusing or reassociating
        const double x = r * kk * (1.0 - kk);
        volatile double xx = x;
        const double y = r * xx * (1.0 - xx);
        out.emplace_back(x, y);
        k = x;
    }
    return out;
}

bool high_nibbles_equal(const GrayImage& a, const GrayImage& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] >> 4) != (b[i] >> 4)) return false;
    }
    return true;
}

bool roundtrip(const GrayImage& cover, const GrayImage& tag, std::string_view key) {
    const Embedding e = embed(cover, tag, key);
    const Extraction ex = extract(e.watermarked, e.record);
    if (ex.payload.rows() != tag.rows() || ex.payload.cols() != tag.cols()) return false;
    for (std::size_t i = 0; i < tag.size(); ++i) {
        const int expected = tag[i] / 16;
        if (ex.payload[i] != expected) return false;
        const Coord c = e.record.positions[i];
        if ((e.watermarked.at(c.row, c.col) % 16) != expected) return false;
    }
    return high_nibbles_equal(cover, e.watermarked);
}

bool fragility(const GrayImage& watermarked, const PositionRecord& record) {
    const NibblePlane base = extract(watermarked, record).payload;
    for (std::size_t idx = 0; idx < record.positions.size(); ++idx) {
        const Coord c = record.positions[idx];
        for (int delta = 1; delta <= 15; ++delta) {
            GrayImage altered = watermarked;
            altered.at(c.row, c.col) = static_cast<std::uint8_t>(altered.at(c.row, c.col) ^ delta);
            const NibblePlane got = extract(altered, record).payload;
            std::size_t changed = 0;
            for (std::size_t i = 0; i < got.size(); ++i) {
                if (got[i] != base[i]) {
                    if (i != idx) return false;
                    ++changed;
                }
            }
            if (changed != 1) return false;
        }
    }
    return true;
}

bool complement_isolation(const GrayImage& watermarked, const PositionRecord& record) {
    std::vector<bool> recorded(watermarked.size(), false);
    for (const Coord& c : record.positions) recorded[c.row * watermarked.cols() + c.col] = true;
    const NibblePlane base = extract(watermarked, record).payload;
    for (std::size_t p = 0; p < watermarked.size(); ++p) {
        if (recorded[p]) continue;
        for (int v = 0; v < 256; ++v) {
            GrayImage altered = watermarked;
            altered[p] = static_cast<std::uint8_t>(v);
            if (!(extract(altered, record).payload == base)) return false;
        }
    }
    return true;
}

GrayImage random_image(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    GrayImage img(rows, cols);
    for (std::uint8_t& p : img.data()) p = static_cast<std::uint8_t>(rng() & 0xFF);
    return img;
}

}  // namespace fragmark::oracle
