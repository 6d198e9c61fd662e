#pragma once

#include "segment/image.hpp"

#include <limits>

namespace segment {

inline constexpr double kPeakSquared = 255.0 * 255.0;

/// Mean squared error pooled over all pixels and all three channels.
double mse(const RgbImage& original, const RgbImage& segmented);

/// 10 log10(255^2 / mse), +infinity when the images are identical.
double psnr(const RgbImage& original, const RgbImage& segmented);
double psnr_from_mse(double mse_value);

}  // namespace segment
