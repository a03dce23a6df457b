#pragma once

#include <cstdint>
#include <vector>

#include "fundsim/rng.hpp"

namespace fundsim {

/// Generative model for a single company's outcome. Survivors draw a terminal
/// fair multiple from a heavy-tailed Pareto; every year of life carries an
/// independent failure hazard; the time to liquidity is uniform. Reported
/// (paper) marks run above fair value by `markup_inflation`.
struct OutcomeModel {
    double failure_hazard = 0.08;        // per-year, [0, 1]
    double pareto_alpha = 1.8;           // tail index, > 1 (+inf = point mass at xmin)
    double pareto_xmin = 1.1;            // minimum surviving multiple, > 0
    double stepup_mu = 0.10;             // log-space drift of yearly valuation step-ups
    double stepup_sigma = 0.50;          // log-space dispersion, >= 0
    double years_to_liquidity_min = 5.0; // > 0
    double years_to_liquidity_max = 12.0;
    double markup_inflation = 0.48;      // reported marks = fair * (1 + this), > -1

    void validate() const;  // throws std::invalid_argument
    bool operator==(const OutcomeModel&) const = default;
};

/// Names a reproducible random stream: the same (master_seed, stream_id) pair
/// replays the same outcome anywhere.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

/// A sampled company trajectory, scaled per unit of entry investment.
/// paper_marks[a-1] is the reported valuation multiple at age a years
/// (ages 1..ceil(liquidity_year)); the entry mark at age 0 is 1 by definition.
/// A failed company has terminal_multiple 0, liquidity_year equal to the
/// failure year, and a final mark of 0.
struct CompanyOutcome {
    double terminal_multiple = 0.0;  // fair exit multiple; 0 iff failed
    double liquidity_year = 0.0;     // years from entry
    std::vector<double> paper_marks; // size == ceil(liquidity_year)

    bool failed() const { return terminal_multiple == 0.0; }
};

/// The stream RNG for a seed spec.
Rng derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

/// Draws one company outcome. Draw order is fixed (liquidity, yearly hazards,
/// terminal multiple, step-ups) so results are stable under the same seed.
/// Surviving paths interpolate the entry value to the terminal fair value with
/// log-normal step-ups bridged in log space; paper marks multiply fair marks
/// by (1 + markup_inflation) exactly.
CompanyOutcome sample_outcome(const OutcomeModel& model, const SeedSpec& seed);

}  // namespace fundsim
