#pragma once

// Shared by the OpenMP oracle and its serial reference.

#include "segment/oracle.hpp"

#include <optional>

namespace segment::detail {

void check_oracle_size(int nth);

/// Lowest fitness over all sets whose first threshold is `first`.
double min_with_first(const MceTables& tables, int first, int nth);

/// Lexicographically first set starting at `first` with fitness <= limit.
std::optional<OracleResult> first_within(const MceTables& tables, int first, int nth, double limit);

}  // namespace segment::detail
