#pragma once

// Single-threaded versions of the data-parallel kernels. Tests compare the
// OpenMP kernels against these; the benchmark times both.

#include "segment/image.hpp"
#include "segment/objective.hpp"
#include "segment/oracle.hpp"

namespace segment::reference {

ChannelHistogram channel_histogram(const RgbImage& img, int ch);

RgbImage apply_thresholds(const RgbImage& img, const ChannelThresholds& thresholds,
                          const ClassValues& class_values);

double mse(const RgbImage& original, const RgbImage& segmented);

OracleResult exhaustive_best(const MceTables& tables, int nth);

}  // namespace segment::reference
