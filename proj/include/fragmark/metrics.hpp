#pragma once

#include "fragmark/image.hpp"

namespace fragmark {

/// Peak signal-to-noise ratio in dB against a 255 peak; +infinity when the
/// images are identical.
double psnr(const GrayImage& a, const GrayImage& b);

/// Mean squared error over all pixels.
double mse(const GrayImage& a, const GrayImage& b);

/// Fraction of positions where the two planes differ.
double ber(const NibblePlane& a, const NibblePlane& b);

}  // namespace fragmark
