#include "segment/encoding.hpp"

#include "segment/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace segment {

ThresholdSet decode_position(std::span<const double> position) {
    constexpr int kMin = 1;
    constexpr int kMax = kLevels - 1;
    if (position.size() > static_cast<std::size_t>(kMax)) {
        throw Unrepairable("cannot place " + std::to_string(position.size()) + " distinct thresholds in [1, 255]");
    }
    std::vector<int> levels(position.size());
    for (std::size_t i = 0; i < position.size(); ++i) {
        if (!std::isfinite(position[i])) throw Unrepairable("non-finite position component");
        levels[i] = static_cast<int>(std::lround(std::clamp(position[i], double{kMin}, double{kMax})));
    }
    std::sort(levels.begin(), levels.end());
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (levels[i] <= levels[i - 1]) levels[i] = levels[i - 1] + 1;
    }
    if (!levels.empty() && levels.back() > kMax) {
        levels.back() = kMax;
        for (std::size_t i = levels.size() - 1; i-- > 0;) {
            if (levels[i] >= levels[i + 1]) levels[i] = levels[i + 1] - 1;
        }
    }
    return ThresholdSet(std::move(levels));
}

Objective objective_adapter(MceTables tables) {
    auto shared = std::make_shared<const MceTables>(std::move(tables));
    return [shared](std::span<const double> position) {
        return mce_fitness(*shared, decode_position(position)).value;
    };
}

}  // namespace segment
