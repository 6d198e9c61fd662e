#pragma once

#include "segment/image.hpp"
#include "segment/optimizer.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace segment {

/// Environment variable that, when set, replaces ExperimentConfig::output_dir.
inline constexpr const char* kOutputDirEnv = "SEGMENT_OUTPUT_DIR";

struct ExperimentConfig {
    std::vector<std::filesystem::path> image_paths;
    std::vector<Algorithm> algorithms{Algorithm::WMRA, Algorithm::WOA, Algorithm::MRA};
    std::vector<int> nth_values{2, 3, 4, 5};
    int runs = 15;
    int population = 25;
    int max_iters = 300;
    std::uint64_t base_seed = 20240501;
    double v_fraction = 0.1;
    double lb = 1.0;
    double ub = 255.0;
    std::filesystem::path output_dir = "results";
    bool write_segmented = true;

    void validate() const;
};

/// Parses "key = value" lines; '#' starts a comment. Relative image paths are
/// resolved against base_dir. Recognized keys: images, algorithms, nth, runs,
/// population, max_iters, base_seed, v_fraction, lb, ub, output_dir,
/// write_segmented.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});

/// Reads and parses a config file, then applies the SEGMENT_OUTPUT_DIR override.
ExperimentConfig load_config(const std::filesystem::path& path);

struct ChannelRun {
    ThresholdSet thresholds;
    double fitness = 0.0;
    ConvergenceTrace trace;
    BranchLog branches;
};

struct RunRecord {
    std::string image_id;
    Algorithm algorithm = Algorithm::WMRA;
    int nth = 0;
    int run = 0;
    std::array<ChannelRun, kChannels> channels;
    double psnr = 0.0;
    double mse = 0.0;
    double wall_seconds = 0.0;
    /// Reconstruction kept for run 0 only, written out as the sample segmentation.
    std::optional<RgbImage> segmented;
};

/// Positional seed for one channel optimization: base_seed XOR a stable hash
/// of (image, algorithm, nTh, run, channel).
std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& image_id, Algorithm algorithm,
                          int nth, int run, int channel);

/// Reconstructs the image from per-channel thresholds using class means.
RgbImage reconstruct(const RgbImage& img, const std::array<MceTables, kChannels>& tables,
                     const ChannelThresholds& thresholds);

/// Runs every (image, algorithm, nTh, run) cell. Records come back ordered
/// by that tuple no matter how the work was scheduled.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

/// CSV reports keyed by file name: fitness_{red,green,blue}.csv, psnr.csv,
/// mse.csv, runs.csv and convergence_<image>_nth<k>.csv.
std::map<std::string, std::string> render_reports(const std::vector<RunRecord>& records);

/// Writes render_reports() plus the sample segmentations under dir.
void write_reports(const std::vector<RunRecord>& records, const std::filesystem::path& dir);

/// Parses "r:100,150,g:90,160,b:80,170" (',' or ';' separated).
ChannelThresholds parse_channel_thresholds(const std::string& spec);

}  // namespace segment
