#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace segment {

inline constexpr int kLevels = 256;
inline constexpr int kChannels = 3;

/// Interleaved 8-bit RGB image, row-major.
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height);
    RgbImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }
    bool empty() const { return data_.empty(); }

    std::span<const std::uint8_t> data() const { return data_; }
    std::span<std::uint8_t> data() { return data_; }

    std::uint8_t at(int x, int y, int ch) const { return data_[index(x, y, ch)]; }
    std::uint8_t& at(int x, int y, int ch) { return data_[index(x, y, ch)]; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    std::size_t index(int x, int y, int ch) const {
        return (static_cast<std::size_t>(y) * width_ + x) * kChannels + ch;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Normalized 256-bin intensity distribution of one channel.
struct ChannelHistogram {
    std::array<std::uint64_t, kLevels> counts{};
    std::array<double, kLevels> probabilities{};
    std::uint64_t total = 0;

    /// Builds a histogram from raw counts; probabilities are counts / total.
    static ChannelHistogram from_counts(const std::array<std::uint64_t, kLevels>& counts);
};

/// Strictly increasing thresholds t_1 < ... < t_n, each in [1, 255].
/// Class k covers [t_k, t_{k+1}) with t_0 = 0 and t_{n+1} = 256.
class ThresholdSet {
public:
    ThresholdSet() = default;
    /// Throws InvalidRange unless the levels are strictly increasing in [1, 255].
    explicit ThresholdSet(std::vector<int> levels);

    std::span<const int> levels() const { return levels_; }
    std::size_t size() const { return levels_.size(); }
    std::size_t class_count() const { return levels_.size() + 1; }
    int operator[](std::size_t i) const { return levels_[i]; }

    int class_lo(std::size_t k) const { return k == 0 ? 0 : levels_[k - 1]; }
    int class_hi(std::size_t k) const { return k == levels_.size() ? kLevels : levels_[k]; }

    friend bool operator==(const ThresholdSet&, const ThresholdSet&) = default;
    friend auto operator<=>(const ThresholdSet&, const ThresholdSet&) = default;

private:
    std::vector<int> levels_;
};

using ChannelThresholds = std::array<ThresholdSet, kChannels>;
using ClassValues = std::array<std::vector<std::uint8_t>, kChannels>;

RgbImage decode_image(std::span<const std::uint8_t> bytes);
RgbImage read_image(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const RgbImage& img);
void write_png(const RgbImage& img, const std::filesystem::path& path);

ChannelHistogram channel_histogram(const RgbImage& img, int ch);

/// Maps each channel sample to class_values[ch][k] where k is its class under thresholds[ch].
RgbImage apply_thresholds(const RgbImage& img, const ChannelThresholds& thresholds,
                          const ClassValues& class_values);

/// Lookup table sending every intensity to its class representative.
std::array<std::uint8_t, kLevels> class_lookup(const ThresholdSet& t,
                                               std::span<const std::uint8_t> values);

}  // namespace segment
