#include "fragmark/metrics.hpp"

#include <cmath>
#include <limits>

#include "fragmark/error.hpp"

namespace fragmark {

double mse(const GrayImage& a, const GrayImage& b) {
    if (a.dims() != b.dims()) throw Error(ErrorCode::DimensionMismatch, "dimension mismatch");
    // Exact integer accumulation; 255^2 * 2^32 pixels still fits in 64 bits.
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
        sum += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(sum) / static_cast<double>(a.size());
}

double psnr(const GrayImage& a, const GrayImage& b) {
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

double ber(const NibblePlane& a, const NibblePlane& b) {
    if (a.dims() != b.dims()) throw Error(ErrorCode::DimensionMismatch, "dimension mismatch");
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
    return static_cast<double>(diff) / static_cast<double>(a.size());
}

}  // namespace fragmark
