#pragma once

#include "segment/image.hpp"

#include <array>
#include <vector>

namespace segment {

/// Prefix sums over a normalized histogram; entry j sums bins i < j.
///
/// Accumulated in long double so that differences over a class range stay
/// well below the 1e-12 scale at which pure classes must evaluate to zero.
struct MceTables {
    std::array<long double, kLevels + 1> cum_h{};
    std::array<long double, kLevels + 1> cum_ih{};
    std::array<long double, kLevels + 1> cum_ih_log_i{};

    long double mass(int lo, int hi) const { return cum_h[hi] - cum_h[lo]; }
    long double first_moment(int lo, int hi) const { return cum_ih[hi] - cum_ih[lo]; }
    long double log_moment(int lo, int hi) const { return cum_ih_log_i[hi] - cum_ih_log_i[lo]; }
};

/// Minimum-cross-entropy objective value (nats) and the class means behind it.
struct MceValue {
    double value = 0.0;
    std::vector<double> class_means;
};

MceTables build_tables(const ChannelHistogram& h);

/// Mean intensity over [lo, hi); midpoint (lo + hi - 1) / 2 for a class with no mass.
double class_mean(const MceTables& tables, int lo, int hi);

/// Cross entropy between the histogram and its class-mean reconstruction:
///   sum_k sum_{i in class k, i >= 1} i h(i) log(i / u_k)
/// evaluated in O(classes) from the prefix tables. Each class term is
/// non-negative (x log(x / u) is convex and vanishes at the class mean), so
/// the value is >= 0 and exactly 0 when every class holds a single level.
MceValue mce_fitness(const MceTables& tables, const ThresholdSet& t);

/// Same quantity by a direct loop over the histogram. Slow; kept as the
/// independent check for mce_fitness.
MceValue mce_fitness_direct(const ChannelHistogram& h, const ThresholdSet& t);

/// Class means rounded to the nearest integer and clamped to [0, 255].
std::vector<std::uint8_t> reconstruction_values(const MceValue& v);

}  // namespace segment
