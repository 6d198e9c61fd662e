#pragma once

#include "segment/image.hpp"
#include "segment/objective.hpp"

namespace segment {

inline constexpr int kOracleMaxThresholds = 3;

/// Values closer than this are treated as equal when picking the
/// lexicographically smallest minimizer.
inline constexpr double kOracleTieTolerance = 1e-12;

struct OracleResult {
    ThresholdSet thresholds;
    double value = 0.0;
};

/// Global minimizer of mce_fitness over every integer ThresholdSet of size nTh.
///
/// Runs in two passes: the exact minimum value first, then the
/// lexicographically smallest set within kOracleTieTolerance of it. Both
/// passes are order-independent, so the OpenMP split over the first
/// threshold cannot change the answer. Throws TooLarge for nTh > 3 and
/// InvalidRange for nTh < 1.
OracleResult exhaustive_best(const MceTables& tables, int nth);

}  // namespace segment
