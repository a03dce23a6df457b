#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fundsim/distributed.hpp"
#include "fundsim/distributed_sim.hpp"
#include "fundsim/economics.hpp"
#include "fundsim/kpi.hpp"
#include "fundsim/standard_fund.hpp"

namespace fundsim {

/// Real numbers render with 12 significant digits; integers stay exact.
std::string format_number(double value);
std::string format_money(Money value);

/// Quotes a field when it contains a comma, quote, or newline (quotes double).
std::string csv_escape(std::string_view field);

/// variant_id, m, total, fee_utility, carry_utility, commit_pnl, model_tag
std::string sweep_csv(std::span<const SweepRow> rows);

/// as_of_years, paid_in, distributed, nav, irr, dpi, tvpi, rvpi,
/// tvpi_dpi_ratio, irr_ambiguous. Unavailable irr and ratio render empty.
std::string kpi_timeline_csv(std::span<const KpiTimelinePoint> points);

/// One committed-fund timeline row tagged with its trial.
struct StandardSimRow {
    int trial = 0;
    TimelinePoint point;
};

/// trial, year, paid_in, invested, fees, nav_fair, nav_paper, distributed,
/// dpi, tvpi_fair, tvpi_paper, irr
std::string standard_sim_csv(std::span<const StandardSimRow> rows);

/// deal_id, state, member, role, flow_type, amount, time
std::string deal_ledger_csv(std::span<const DealLedgerRow> rows);

/// One automation decision against one deal.
struct MatchTraceRow {
    std::string rule_id;
    std::string deal_id;
    int quarter = 0;
    MatchDecision decision = MatchDecision::no_match;
    MatchReason reason = MatchReason::ok;
    std::optional<Money> check;  // only on match
};

/// rule_id, deal_id, quarter, decision, reason, check
std::string match_trace_csv(std::span<const MatchTraceRow> rows);

/// trial, lp_dpi_standard, lp_dpi_distributed, fees_standard,
/// fees_distributed, carry_standard, carry_distributed, admin_standard,
/// admin_distributed, gp_take_standard, pod_take_distributed
std::string compare_csv(std::span<const CompareRow> rows);

}  // namespace fundsim
