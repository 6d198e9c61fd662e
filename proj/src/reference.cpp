#include "segment/reference.hpp"

#include "oracle_detail.hpp"
#include "segment/errors.hpp"

#include <algorithm>
#include <limits>

namespace segment::reference {

ChannelHistogram channel_histogram(const RgbImage& img, int ch) {
    if (ch < 0 || ch >= kChannels) throw InvalidRange("channel index must be 0, 1 or 2");
    std::array<std::uint64_t, kLevels> counts{};
    const auto data = img.data();
    for (std::size_t s = static_cast<std::size_t>(ch); s < data.size(); s += kChannels) ++counts[data[s]];
    return ChannelHistogram::from_counts(counts);
}

RgbImage apply_thresholds(const RgbImage& img, const ChannelThresholds& thresholds,
                          const ClassValues& class_values) {
    for (int ch = 0; ch < kChannels; ++ch) {
        if (class_values[ch].size() != thresholds[ch].class_count()) {
            throw ShapeMismatch("class value count does not match threshold count");
        }
    }
    RgbImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            for (int ch = 0; ch < kChannels; ++ch) {
                const int v = img.at(x, y, ch);
                const auto& t = thresholds[ch];
                std::size_t k = 0;
                while (k < t.size() && v >= t[k]) ++k;
                out.at(x, y, ch) = class_values[ch][k];
            }
        }
    }
    return out;
}

double mse(const RgbImage& original, const RgbImage& segmented) {
    if (original.width() != segmented.width() || original.height() != segmented.height()) {
        throw ShapeMismatch("images differ in size");
    }
    const auto a = original.data();
    const auto b = segmented.data();
    double sum = 0.0;
    for (std::size_t s = 0; s < a.size(); ++s) {
        const double d = static_cast<double>(a[s]) - static_cast<double>(b[s]);
        sum += d * d;
    }
    return a.empty() ? 0.0 : sum / static_cast<double>(a.size());
}

OracleResult exhaustive_best(const MceTables& tables, int nth) {
    detail::check_oracle_size(nth);
    double global_min = std::numeric_limits<double>::infinity();
    for (int first = 1; first < kLevels; ++first) {
        global_min = std::min(global_min, detail::min_with_first(tables, first, nth));
    }
    for (int first = 1; first < kLevels; ++first) {
        if (auto hit = detail::first_within(tables, first, nth, global_min + kOracleTieTolerance)) return *hit;
    }
    throw InvalidRange("no feasible threshold set");
}

}  // namespace segment::reference
