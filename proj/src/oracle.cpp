#include "segment/oracle.hpp"

#include "oracle_detail.hpp"
#include "segment/errors.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace segment {

namespace detail {

void check_oracle_size(int nth) {
    if (nth < 1) throw InvalidRange("oracle needs at least one threshold");
    if (nth > kOracleMaxThresholds) {
        throw TooLarge("exhaustive search supports at most " + std::to_string(kOracleMaxThresholds) +
                       " thresholds, got " + std::to_string(nth));
    }
}

// Visits, in lexicographic order, every strictly increasing set whose first
// element is `first`. Stops early when the visitor returns false.
template <class Visitor>
void for_each_with_first(int first, int nth, Visitor&& visit) {
    std::vector<int> levels(static_cast<std::size_t>(nth));
    levels[0] = first;
    constexpr int kTop = kLevels - 1;
    if (first + nth - 1 > kTop) return;
    for (int i = 1; i < nth; ++i) levels[i] = first + i;
    while (true) {
        if (!visit(levels)) return;
        int pos = nth - 1;
        while (pos >= 1 && levels[pos] == kTop - (nth - 1 - pos)) --pos;
        if (pos < 1) return;
        ++levels[pos];
        for (int i = pos + 1; i < nth; ++i) levels[i] = levels[i - 1] + 1;
    }
}

double min_with_first(const MceTables& tables, int first, int nth) {
    double best = std::numeric_limits<double>::infinity();
    for_each_with_first(first, nth, [&](const std::vector<int>& levels) {
        const double v = mce_fitness(tables, ThresholdSet(levels)).value;
        if (v < best) best = v;
        return true;
    });
    return best;
}

std::optional<OracleResult> first_within(const MceTables& tables, int first, int nth, double limit) {
    std::optional<OracleResult> found;
    for_each_with_first(first, nth, [&](const std::vector<int>& levels) {
        ThresholdSet t(levels);
        const double v = mce_fitness(tables, t).value;
        if (v <= limit) {
            found = OracleResult{std::move(t), v};
            return false;
        }
        return true;
    });
    return found;
}

}  // namespace detail

OracleResult exhaustive_best(const MceTables& tables, int nth) {
    detail::check_oracle_size(nth);
    constexpr int kFirstMax = kLevels - 1;

    double global_min = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(dynamic, 4) reduction(min : global_min)
    for (int first = 1; first <= kFirstMax; ++first) {
        const double v = detail::min_with_first(tables, first, nth);
        if (v < global_min) global_min = v;
    }

    const double limit = global_min + kOracleTieTolerance;
    std::vector<std::optional<OracleResult>> hits(kFirstMax + 1);
#pragma omp parallel for schedule(dynamic, 4)
    for (int first = 1; first <= kFirstMax; ++first) {
        hits[first] = detail::first_within(tables, first, nth, limit);
    }
    for (int first = 1; first <= kFirstMax; ++first) {
        if (hits[first]) return *hits[first];
    }
    throw InvalidRange("no feasible threshold set");
}

}  // namespace segment
