#pragma once

#include <span>

namespace kslab {

/// Pairwise (cascade) summation in index order. Deterministic: the
/// association tree depends only on the length of the input.
double pairwise_sum(std::span<const double> values);

}  // namespace kslab
