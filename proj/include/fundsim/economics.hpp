#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fundsim/money.hpp"

namespace fundsim {

/// Which GP utility model produced a value: the fee+carry shorthand or the
/// expanded form that also prices the GP commitment.
enum class UtilityModel { simple, expanded };

const char* to_string(UtilityModel model);

/// Fund terms. Rates are dimensionless fractions; fund_size is Money so the
/// ledger side can reuse the same struct, while the utility functions evaluate
/// in binary64 (they are model evaluations, not ledgers).
struct FundParams {
    Money fund_size = 0;         // committed capital, > 0
    int lifespan_years = 0;      // > 0
    double mgmt_fee_rate = 0.0;  // annual, [0, 1]
    double gp_commit_rate = 0.0; // GP share of commitments, [0, 1]
    double carry_rate = 0.0;     // share of profit, [0, 1]

    /// Throws std::invalid_argument; also rejects lifetime fees above the fund
    /// (mgmt_fee_rate * lifespan_years must stay <= 1).
    void validate() const;
};

struct UtilityBreakdown {
    double fee_utility = 0.0;   // lifetime management fees
    double carry_utility = 0.0; // carried interest on profit
    double commit_pnl = 0.0;    // GP's own-commitment gain/loss (expanded only)
    double total = 0.0;         // always the exact sum of the three parts
    UtilityModel model = UtilityModel::simple;
};

/// Lifetime management fees: fund_size * mgmt_fee_rate * lifespan_years.
double management_fee_utility(const FundParams& params);

/// Carry in the simple model: net-of-fee capital grows by `multiple`, carry on
/// the gain over that net-of-fee base. Exactly zero at multiple 1.
double carry_utility_simple(const FundParams& params, double multiple);

UtilityBreakdown gp_utility_simple(const FundParams& params, double multiple);

/// Expanded model: fees plus the GP's commitment P&L plus carry on the outside
/// investors' profit, where profit is measured against committed capital and
/// the invested base is net of lifetime fees. Optional clamp floors the carry
/// term at zero (defaults off; the raw model lets carry go negative).
UtilityBreakdown gp_utility_expanded(const FundParams& params, double multiple,
                                     bool clamp_carry_at_zero = false);

/// Same expanded-model total evaluated as a flat sum of product terms rather
/// than the grouped breakdown; kept as an independent route for cross-checks.
double expanded_utility_polynomial(const FundParams& params, double multiple);

/// simple total minus expanded total at the same multiple. With no GP commit
/// this collapses to carry_rate * fees, independent of the multiple.
double model_discrepancy(const FundParams& params, double multiple);

/// Multiple above which raising the management fee rate starts reducing total
/// expanded utility: 1 / (g + c*(1-g)).
double fee_incentive_threshold(const FundParams& params);

/// A named set of parameter overrides for sweeps.
struct ParamOverride {
    std::string id;
    std::optional<Money> fund_size;
    std::optional<int> lifespan_years;
    std::optional<double> mgmt_fee_rate;
    std::optional<double> gp_commit_rate;
    std::optional<double> carry_rate;

    FundParams apply(FundParams base) const;  // validates the result
};

struct SweepRow {
    std::string variant_id;
    double multiple = 0.0;
    double total = 0.0;
    double fee_utility = 0.0;
    double carry_utility = 0.0;
    double commit_pnl = 0.0;
    UtilityModel model = UtilityModel::simple;
};

/// One row per (variant, multiple): the baseline first, then variants in input
/// order, multiples ascending within each. The grid must be non-empty with all
/// entries finite and >= 0.
std::vector<SweepRow> utility_sweep(const FundParams& base,
                                    std::span<const ParamOverride> variants,
                                    std::span<const double> multiple_grid,
                                    UtilityModel model);

}  // namespace fundsim
