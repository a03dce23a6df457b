#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fundsim/automation.hpp"
#include "fundsim/distributed.hpp"
#include "fundsim/market.hpp"
#include "fundsim/standard_fund.hpp"

namespace fundsim {

/// One rule owner's capital book. The base moves only by realized profit and
/// loss at exits, so available + reserved + deployed == base at every step.
struct InvestorAccount {
    Money base = 0;
    Money available = 0;
    Money reserved = 0;
    Money deployed = 0;  // cost basis of live positions
};

/// Scenario inputs for the deal-by-deal firm. Company outcomes draw from the
/// same (trial, company) streams as the committed-fund simulation, so a paired
/// comparison sees identical underlying companies; deal attributes draw from a
/// separate channel and never disturb that pairing.
struct DistributedScenarioConfig {
    OutcomeModel outcome_model;
    FeeSchedule fees;
    CarrySplitTable splits = CarrySplitTable::defaults();
    PodRoster roster;
    std::vector<AutomationRule> rules;
    std::map<std::string, Money> owner_capital;  // rule owner -> starting capital
    Money admin_cost = kDefaultSpvAdminCost;
    int deals_per_trial = 50;
    int deployment_years = 4;

    // Deal attribute generation (channel-1 draws).
    std::vector<std::string> sectors = {"biotech", "fintech", "climate", "devtools"};
    Money round_size_min = 2'000'000;
    Money round_size_max = 12'000'000;
    double cap_multiple_min = 3.0;  // valuation cap = round size x this
    double cap_multiple_max = 6.0;

    void validate() const;  // throws std::invalid_argument
};

struct DistributedTrialResult {
    int trial = 0;
    Money committed = 0;    // total investor commitments across SPVs
    Money invested = 0;     // total net dollars that reached companies
    Money distributed = 0;  // total investor distributions
    Money perf_fees = 0;
    Money carry = 0;
    Money admin = 0;
    int deals_funded = 0;    // follow-on SPVs included
    int deals_rejected = 0;
    double lp_dpi = 0.0;     // distributed / committed, 0 while nothing committed
    std::map<std::string, Money> member_take;  // carry + performance fee by member
    std::map<std::string, InvestorAccount> accounts;  // final owner books
    std::vector<CompanyOutcome> outcomes;  // channel-0 draws, shared with the committed fund
    std::vector<DealLedgerRow> ledger;
};

/// Runs one trial of the deal-by-deal firm: deals arrive over the deployment
/// window, automation rules size the checks, each funded deal closes into its
/// own SPV (one-time fee plus admin cost), reserves wait on the follow-on
/// criteria, and every exit settles through the carry waterfall. Ledger rows
/// record every flow through each SPV.
DistributedTrialResult run_distributed_trial(const DistributedScenarioConfig& config,
                                             std::uint64_t master_seed, int trial);

/// Paired per-trial comparison of the two firm models.
struct CompareRow {
    int trial = 0;
    double lp_dpi_standard = 0.0;
    double lp_dpi_distributed = 0.0;
    Money fees_standard = 0;
    Money fees_distributed = 0;
    Money carry_standard = 0;
    Money carry_distributed = 0;
    Money admin_standard = 0;  // the committed fund has no per-deal admin
    Money admin_distributed = 0;
    Money gp_take_standard = 0;       // fees + carry
    Money pod_take_distributed = 0;   // performance fees + carry
};

/// Builds the paired table. Both result sets must come from the same master
/// seed and outcome model (trial index pairs the company draws); a mismatch
/// throws std::invalid_argument.
std::vector<CompareRow> compare_models(const std::vector<FundRunResult>& standard_results,
                                       const std::vector<DistributedTrialResult>& distributed_results,
                                       const OutcomeModel& standard_model,
                                       const OutcomeModel& distributed_model,
                                       std::uint64_t standard_seed,
                                       std::uint64_t distributed_seed);

}  // namespace fundsim
