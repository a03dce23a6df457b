#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fundsim {

/// Currency in integer minor units (e.g. cents). Ledgers never hold floats.
using Money = std::int64_t;

/// Round to nearest integer, ties to even. Throws std::overflow_error when the
/// value does not fit Money and std::invalid_argument on NaN.
Money round_half_even(double value);

/// Split `total` across `weights` proportionally so the parts sum to `total`
/// exactly. Largest-remainder rounding; ties go to the lowest index, so callers
/// that need a tie-break on member id pass entries sorted by id. Requires
/// total >= 0, all weights >= 0 and at least one weight > 0.
std::vector<Money> allocate_proportional(Money total, std::span<const Money> weights);

/// Same contract with real-valued weights (attribution shares). Weights must be
/// finite and >= 0 with a positive sum. `total` must stay below 2^53 so the
/// quotient arithmetic is exact in binary64.
std::vector<Money> allocate_proportional(Money total, std::span<const double> weights);

}  // namespace fundsim
