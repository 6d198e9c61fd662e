#include "segment/objective.hpp"

#include "segment/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace segment {

MceTables build_tables(const ChannelHistogram& h) {
    MceTables t;
    for (int i = 0; i < kLevels; ++i) {
        const long double p = h.probabilities[i];
        const long double ip = static_cast<long double>(i) * p;
        t.cum_h[i + 1] = t.cum_h[i] + p;
        t.cum_ih[i + 1] = t.cum_ih[i] + ip;
        t.cum_ih_log_i[i + 1] = t.cum_ih_log_i[i] + (i > 0 ? ip * std::log(static_cast<long double>(i)) : 0.0L);
    }
    return t;
}

namespace {

void check_range(int lo, int hi) {
    if (lo < 0 || hi > kLevels || lo >= hi) {
        throw InvalidRange("invalid class range [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
    }
}

long double mean_or_midpoint(long double moment, long double mass, int lo, int hi) {
    if (mass <= 0.0L) return 0.5L * static_cast<long double>(lo + hi - 1);
    return moment / mass;
}

}  // namespace

double class_mean(const MceTables& tables, int lo, int hi) {
    check_range(lo, hi);
    return static_cast<double>(mean_or_midpoint(tables.first_moment(lo, hi), tables.mass(lo, hi), lo, hi));
}

MceValue mce_fitness(const MceTables& tables, const ThresholdSet& t) {
    MceValue out;
    out.class_means.resize(t.class_count());
    long double total = 0.0L;
    for (std::size_t k = 0; k < t.class_count(); ++k) {
        const int lo = t.class_lo(k);
        const int hi = t.class_hi(k);
        check_range(lo, hi);
        const long double moment = tables.first_moment(lo, hi);
        const long double mean = mean_or_midpoint(moment, tables.mass(lo, hi), lo, hi);
        out.class_means[k] = static_cast<double>(mean);
        // Classes whose only mass sits at i = 0 contribute nothing.
        if (moment <= 0.0L) continue;
        total += tables.log_moment(lo, hi) - moment * std::log(mean);
    }
    out.value = static_cast<double>(total);
    return out;
}

MceValue mce_fitness_direct(const ChannelHistogram& h, const ThresholdSet& t) {
    MceValue out;
    out.class_means.resize(t.class_count());
    double total = 0.0;
    for (std::size_t k = 0; k < t.class_count(); ++k) {
        const int lo = t.class_lo(k);
        const int hi = t.class_hi(k);
        check_range(lo, hi);
        double moment = 0.0;
        double mass = 0.0;
        for (int i = lo; i < hi; ++i) {
            moment += i * h.probabilities[i];
            mass += h.probabilities[i];
        }
        const double mean = mass > 0.0 ? moment / mass : 0.5 * (lo + hi - 1);
        out.class_means[k] = mean;
        for (int i = std::max(lo, 1); i < hi; ++i) {
            if (h.probabilities[i] == 0.0) continue;
            total += i * h.probabilities[i] * std::log(i / mean);
        }
    }
    out.value = total;
    return out;
}

std::vector<std::uint8_t> reconstruction_values(const MceValue& v) {
    std::vector<std::uint8_t> values(v.class_means.size());
    std::transform(v.class_means.begin(), v.class_means.end(), values.begin(), [](double m) {
        return static_cast<std::uint8_t>(std::clamp(std::lround(m), 0L, 255L));
    });
    return values;
}

}  // namespace segment
