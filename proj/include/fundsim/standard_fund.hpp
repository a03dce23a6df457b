#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fundsim/economics.hpp"
#include "fundsim/kpi.hpp"
#include "fundsim/market.hpp"
#include "fundsim/money.hpp"

namespace fundsim {

enum class CheckPolicy { equal_weight, weighted };

const char* to_string(CheckPolicy policy);

/// How investable capital (committed minus lifetime fees) is put to work:
/// first checks spread evenly across the deployment window, the remainder
/// reserved for one follow-on round the year the window closes.
struct DeploymentSchedule {
    int deployment_years = 4;       // valid 3..5 and <= fund lifespan
    double initial_fraction = 0.6;  // share of investable capital in first checks
    int companies_per_fund = 50;
    CheckPolicy check_policy = CheckPolicy::equal_weight;
    std::vector<double> check_weights;  // weighted policy: one weight per company

    double followon_reserve() const { return 1.0 - initial_fraction; }

    /// Throws std::invalid_argument on an infeasible schedule.
    void validate(int lifespan_years) const;
};

struct PositionView {
    Money cost_basis = 0;
    Money fair_value = 0;
    Money paper_value = 0;
};

/// End-of-run snapshot of the fund ledger. Calls are made just in time, so
/// dry_powder is zero at every year boundary and paid-in always equals
/// invested + fees + dry_powder exactly, in minor units.
struct FundState {
    Money dry_powder = 0;
    std::map<int, PositionView> positions;  // live positions by company index
    Money fee_ledger = 0;
    CashFlowSeries cash_flows;
    NavSeries nav;  // fair-value marks
    int year = 0;
};

struct TimelinePoint {
    int year = 0;
    Money paid_in = 0;     // cumulative
    Money invested = 0;    // cumulative
    Money fees = 0;        // cumulative
    Money nav_fair = 0;
    Money nav_paper = 0;
    Money distributed = 0;  // cumulative, net of carry
    double dpi = 0.0;
    double tvpi_fair = 0.0;
    double tvpi_paper = 0.0;
    std::optional<double> irr;  // on fair marks; unset when no root exists
    bool irr_ambiguous = false;
};

struct FundTimeline {
    std::vector<TimelinePoint> points;  // one per year, 0..horizon
    int deployment_end_year = 0;        // the follow-on year
};

struct FundRunResult {
    CashFlowSeries investor_flows;  // calls negative, net distributions positive
    NavSeries nav_fair;
    NavSeries nav_paper;
    FundTimeline timeline;

    // Realized GP economics from the ledger, per unit of committed capital so
    // the numbers sit on the same scale as the closed-form utility model. The
    // GP's own fee payments net out against fee income, so commit P&L runs on
    // the invested share only; carry is taken on the outside investors' share
    // of profit over total paid-in and floored at zero.
    UtilityBreakdown realized_gp;

    Money paid_in_total = 0;
    Money invested_total = 0;
    Money fees_total = 0;
    Money gross_proceeds = 0;   // fair-value exit proceeds before carry
    Money carry_total = 0;
    Money distributed_total = 0;  // gross_proceeds - carry_total

    FundState final_state;
    std::vector<CompanyOutcome> outcomes;  // one per company, sampling order
};

struct RunFundOptions {
    bool timeline_irr = true;  // per-year IRR is the slow part of a run
};

/// Simulates one fund: yearly just-in-time capital calls sized to that year's
/// checks plus the year's fee accrual, a single follow-on round at the end of
/// the deployment window into positions marked above cost (bought at paper
/// price), and exits at fair value with carry withheld from profit
/// distributions. The clock runs past the fee horizon until the last position
/// exits. Company i draws its outcome from substream(seed.stream_id, i).
FundRunResult run_fund(const FundParams& params, const DeploymentSchedule& schedule,
                       const OutcomeModel& model, const SeedSpec& seed,
                       const RunFundOptions& options = {});

struct SuccessorDecision {
    bool raise_next = false;
    double basis_tvpi = 0.0;
    double threshold = 0.0;
};

/// Whether the GP raises the next fund: compares the reported (paper-mark)
/// TVPI at the end of the deployment window against the threshold, >= wins.
SuccessorDecision successor_decision(const FundTimeline& timeline, double threshold = 1.5);

}  // namespace fundsim
