// segment: multilevel thresholding experiments from the command line.
//
//   segment run --config experiment.cfg
//   segment oracle --image lesion.png --nth 2
//   segment apply --image lesion.png --thresholds r:90,170,g:80,160,b:70,150 --out seg.png

#include "segment/encoding.hpp"
#include "segment/errors.hpp"
#include "segment/harness.hpp"
#include "segment/metrics.hpp"
#include "segment/objective.hpp"
#include "segment/oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

namespace {

constexpr const char* kChannelNames[segment::kChannels] = {"red", "green", "blue"};

std::string levels_text(const segment::ThresholdSet& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
    return out;
}

int cmd_run(const std::string& config_path, const std::string& output_override) {
    auto cfg = segment::load_config(config_path);
    if (!output_override.empty()) cfg.output_dir = output_override;
    const auto started = std::chrono::steady_clock::now();
    const auto records = segment::run_experiment(cfg);
    segment::write_reports(records, cfg.output_dir);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("%zu runs in %.1f s; reports in %s\n", records.size(), secs, cfg.output_dir.string().c_str());
    return 0;
}

int cmd_oracle(const std::string& image_path, int nth) {
    const auto img = segment::read_image(image_path);
    std::printf("channel,thresholds,fitness\n");
    for (int ch = 0; ch < segment::kChannels; ++ch) {
        const auto tables = segment::build_tables(segment::channel_histogram(img, ch));
        const auto best = segment::exhaustive_best(tables, nth);
        std::printf("%s,%s,%.10g\n", kChannelNames[ch], levels_text(best.thresholds).c_str(), best.value);
    }
    return 0;
}

int cmd_apply(const std::string& image_path, const std::string& spec, const std::string& out_path) {
    const auto img = segment::read_image(image_path);
    const auto thresholds = segment::parse_channel_thresholds(spec);
    std::array<segment::MceTables, segment::kChannels> tables;
    for (int ch = 0; ch < segment::kChannels; ++ch) {
        tables[ch] = segment::build_tables(segment::channel_histogram(img, ch));
    }
    const auto segmented = segment::reconstruct(img, tables, thresholds);
    segment::write_png(segmented, out_path);
    const double m = segment::mse(img, segmented);
    std::printf("wrote %s\n", out_path.c_str());
    for (int ch = 0; ch < segment::kChannels; ++ch) {
        std::printf("%s fitness %.6g\n", kChannelNames[ch], segment::mce_fitness(tables[ch], thresholds[ch]).value);
    }
    std::printf("psnr %.3f\nmse %.3f\n", segment::psnr_from_mse(m), m);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multilevel color image thresholding by minimum cross entropy"};
    app.require_subcommand(1);

    std::string config_path, output_dir;
    auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
    run->add_option("--config", config_path, "Experiment config (key = value lines)")->required();
    run->add_option("--output-dir", output_dir, "Override the output directory");

    std::string oracle_image;
    int nth = 2;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive MCE optimum per channel (nth <= 3)");
    oracle->add_option("--image", oracle_image, "PNG or JPEG image")->required();
    oracle->add_option("--nth", nth, "Number of thresholds")->required();

    std::string apply_image, spec, out_path;
    auto* apply = app.add_subcommand("apply", "Segment an image with given thresholds");
    apply->add_option("--image", apply_image, "PNG or JPEG image")->required();
    apply->add_option("--thresholds", spec, "e.g. r:90,170,g:80,160,b:70,150")->required();
    apply->add_option("--out", out_path, "Output PNG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) return cmd_run(config_path, output_dir);
        if (*oracle) return cmd_oracle(oracle_image, nth);
        if (*apply) return cmd_apply(apply_image, spec, out_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "segment: error: %s\n", e.what());
        return 1;
    }
    return 1;
}
