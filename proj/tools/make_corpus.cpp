// Generates the four synthetic dermoscopy-style test images shipped in data/corpus.
//
//   make_corpus <output-dir>
//
// Each image is a pigmented lesion with an irregular border on a shaded skin
// background, with texture, a few hairs and sensor noise. Output is fully
// determined by the per-image seed.

#include "segment/image.hpp"
#include "segment/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <vector>

namespace {

using segment::Rng;

struct Rgb {
    double r, g, b;
};

Rgb mix(Rgb a, Rgb b, double t) {
    return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

// Bilinear value noise on a coarse lattice.
class ValueNoise {
public:
    ValueNoise(int cells, Rng& rng) : cells_(cells), grid_((cells + 1) * (cells + 1)) {
        for (auto& v : grid_) v = rng.uniform();
    }
    double at(double u, double v) const {
        const double x = std::clamp(u, 0.0, 1.0) * cells_;
        const double y = std::clamp(v, 0.0, 1.0) * cells_;
        const int x0 = std::min(static_cast<int>(x), cells_ - 1);
        const int y0 = std::min(static_cast<int>(y), cells_ - 1);
        const double fx = smooth(x - x0), fy = smooth(y - y0);
        const auto g = [&](int i, int j) { return grid_[j * (cells_ + 1) + i]; };
        const double top = g(x0, y0) + (g(x0 + 1, y0) - g(x0, y0)) * fx;
        const double bot = g(x0, y0 + 1) + (g(x0 + 1, y0 + 1) - g(x0, y0 + 1)) * fx;
        return top + (bot - top) * fy;
    }

private:
    static double smooth(double t) { return t * t * (3.0 - 2.0 * t); }
    int cells_;
    std::vector<double> grid_;
};

struct Style {
    std::uint64_t seed;
    Rgb skin;
    Rgb lesion_edge;
    Rgb lesion_core;
    double radius;
    int hairs;
};

double gaussian(Rng& rng) {
    const double u1 = std::max(rng.uniform(), 1e-12), u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

segment::RgbImage render(const Style& s, int width, int height) {
    Rng rng(s.seed);
    ValueNoise coarse(6, rng), fine(40, rng), blotch(12, rng);
    std::array<double, 6> harmonics{};
    for (auto& h : harmonics) h = rng.uniform(-0.12, 0.12);
    const double cx = rng.uniform(0.42, 0.58), cy = rng.uniform(0.42, 0.58);

    struct Hair {
        double x0, y0, angle, curve, width;
    };
    std::vector<Hair> hairs;
    for (int i = 0; i < s.hairs; ++i) {
        hairs.push_back({rng.uniform(), rng.uniform(), rng.uniform(0.0, std::numbers::pi), rng.uniform(-1.5, 1.5),
                         rng.uniform(0.0025, 0.005)});
    }

    segment::RgbImage img(width, height);
    const double aspect = static_cast<double>(width) / height;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double u = (x + 0.5) / width, v = (y + 0.5) / height;
            const double dx = (u - cx) * aspect, dy = v - cy;
            const double r = std::hypot(dx, dy);
            const double theta = std::atan2(dy, dx);

            double border = s.radius;
            for (std::size_t k = 0; k < harmonics.size(); ++k) {
                border *= 1.0 + harmonics[k] * std::sin((k + 2) * theta + k);
            }
            border *= 0.9 + 0.2 * coarse.at(u, v);

            // Skin: gentle shading plus vignette from the dermatoscope.
            const double shade = 0.85 + 0.15 * coarse.at(v, u) - 0.35 * std::pow(r / 0.75, 2.0);
            Rgb c{s.skin.r * shade, s.skin.g * shade, s.skin.b * shade};

            const double edge = std::clamp((border - r) / (0.25 * s.radius), 0.0, 1.0);
            if (edge > 0.0) {
                const double depth = std::clamp(1.0 - r / border + 0.3 * (blotch.at(u, v) - 0.5), 0.0, 1.0);
                Rgb lesion = mix(s.lesion_edge, s.lesion_core, depth);
                // Pigment network.
                const double net = 0.5 + 0.5 * std::sin(60.0 * u + 8.0 * fine.at(u, v)) *
                                             std::sin(60.0 * v + 8.0 * fine.at(v, u));
                lesion = mix(lesion, s.lesion_core, 0.35 * net * depth);
                c = mix(c, lesion, edge);
            }

            for (const auto& h : hairs) {
                const double px = u - h.x0, py = v - h.y0;
                const double along = px * std::cos(h.angle) + py * std::sin(h.angle);
                const double across = -px * std::sin(h.angle) + py * std::cos(h.angle) - h.curve * along * along;
                if (std::abs(along) < 0.45 && std::abs(across) < h.width) c = mix(c, Rgb{45, 30, 25}, 0.8);
            }

            const double grain = 8.0 * (fine.at(u, v) - 0.5);
            const double channel[3] = {c.r, c.g, c.b};
            for (int ch = 0; ch < 3; ++ch) {
                const double value = channel[ch] + grain + 3.0 * gaussian(rng);
                img.at(x, y, ch) = static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, 255L));
            }
        }
    }
    return img;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: make_corpus <output-dir>\n");
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);
    const std::array<Style, 4> styles{{
        {11, {226, 170, 150}, {150, 90, 70}, {70, 40, 35}, 0.26, 3},
        {23, {238, 190, 168}, {170, 110, 90}, {95, 55, 50}, 0.30, 0},
        {37, {205, 150, 125}, {120, 75, 60}, {50, 30, 30}, 0.22, 5},
        {41, {240, 200, 185}, {185, 120, 110}, {110, 60, 75}, 0.34, 2},
    }};
    for (std::size_t i = 0; i < styles.size(); ++i) {
        const auto path = dir / ("img" + std::to_string(i + 1) + ".png");
        segment::write_png(render(styles[i], 320, 240), path);
        std::printf("wrote %s\n", path.string().c_str());
    }
    return 0;
}
