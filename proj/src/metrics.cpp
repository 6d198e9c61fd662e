#include "segment/metrics.hpp"

#include "segment/errors.hpp"

#include <cmath>
#include <cstdint>

namespace segment {

double mse(const RgbImage& original, const RgbImage& segmented) {
    if (original.width() != segmented.width() || original.height() != segmented.height()) {
        throw ShapeMismatch("images differ in size");
    }
    const std::uint8_t* a = original.data().data();
    const std::uint8_t* b = segmented.data().data();
    const auto n = static_cast<std::ptrdiff_t>(original.data().size());
    // Integer accumulation keeps the result independent of the thread split.
    std::uint64_t sum = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
        const int d = int{a[s]} - int{b[s]};
        sum += static_cast<std::uint64_t>(d * d);
    }
    return n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n);
}

double psnr_from_mse(double mse_value) {
    if (mse_value <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPeakSquared / mse_value);
}

double psnr(const RgbImage& original, const RgbImage& segmented) {
    return psnr_from_mse(mse(original, segmented));
}

}  // namespace segment
