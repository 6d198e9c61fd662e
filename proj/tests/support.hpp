#pragma once

#include "segment/image.hpp"
#include "segment/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace test {

inline segment::ChannelHistogram histogram_from(std::initializer_list<std::pair<int, std::uint64_t>> bins) {
    std::array<std::uint64_t, segment::kLevels> counts{};
    for (auto [i, c] : bins) counts[i] = c;
    return segment::ChannelHistogram::from_counts(counts);
}

/// Random histogram: a few Gaussian-ish bumps plus sparse noise, with mass at i >= 1.
inline segment::ChannelHistogram random_histogram(segment::Rng& rng) {
    std::array<std::uint64_t, segment::kLevels> counts{};
    const int bumps = 1 + static_cast<int>(rng.index(4));
    for (int b = 0; b < bumps; ++b) {
        const double centre = rng.uniform(0, 255), width = rng.uniform(2, 40);
        const double height = rng.uniform(10, 1000);
        for (int i = 0; i < segment::kLevels; ++i) {
            const double z = (i - centre) / width;
            counts[i] += static_cast<std::uint64_t>(height * std::exp(-0.5 * z * z));
        }
    }
    for (int k = 0; k < 20; ++k) counts[rng.index(segment::kLevels)] += rng.index(50);
    counts[1 + rng.index(254)] += 1;
    return segment::ChannelHistogram::from_counts(counts);
}

inline segment::ThresholdSet random_thresholds(segment::Rng& rng, int n) {
    std::vector<int> levels;
    while (static_cast<int>(levels.size()) < n) {
        const int v = 1 + static_cast<int>(rng.index(255));
        if (std::find(levels.begin(), levels.end(), v) == levels.end()) levels.push_back(v);
    }
    std::sort(levels.begin(), levels.end());
    return segment::ThresholdSet(levels);
}

inline segment::RgbImage random_image(segment::Rng& rng, int w, int h) {
    std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h * 3);
    for (auto& v : data) v = static_cast<std::uint8_t>(rng.index(256));
    return segment::RgbImage(w, h, std::move(data));
}

}  // namespace test
