#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fundsim/automation.hpp"
#include "fundsim/money.hpp"

namespace fundsim {

enum class PodKind { core, sourcing, diligence, funding, success };

const char* to_string(PodKind kind);

/// All pod kinds in their fixed ledger order; allocation remainders fall
/// toward the front, so core absorbs ties deterministically.
inline constexpr PodKind kPodOrder[] = {PodKind::core, PodKind::sourcing, PodKind::diligence,
                                        PodKind::funding, PodKind::success};

struct Member {
    std::string id;
    std::set<PodKind> pod_memberships;
    Money capital_account = 0;
    std::map<std::string, double> attribution_log;  // deal id -> accumulated weight
};

struct Pod {
    PodKind kind = PodKind::core;
    std::set<std::string> members;
};

/// The firm's pod membership: at most one pod per kind, and the core pod must
/// exist (unassignable entitlements fall back to it).
struct PodRoster {
    std::vector<Pod> pods;

    void validate() const;  // throws std::invalid_argument
    const Pod* find(PodKind kind) const;
};

/// Per-deal contribution weights, by pod and member.
using Attribution = std::map<PodKind, std::map<std::string, double>>;

enum class DealState { sourced, memo, funded, portfolio, exited, rejected };

const char* to_string(DealState state);

struct Deal {
    std::string id;
    DealTerms terms;
    DealState state = DealState::sourced;
    Attribution attribution;
    std::vector<std::pair<DealState, double>> history;  // every state with its timestamp
};

/// A fresh deal enters the pipeline as sourced.
Deal make_deal(std::string id, DealTerms terms, double created_at);

/// Moves a deal forward along sourced -> memo -> funded -> portfolio -> exited,
/// with rejected reachable from the pre-funded states. Funding happens only
/// through form_spv and exit only through exit_waterfall; this operation
/// refuses those targets. Timestamps must strictly increase. The attribution
/// delta accumulates onto the deal for later splits.
Deal advance_deal(Deal deal, DealState target, const Attribution& delta, double at);

struct FeeSchedule {
    double performance_fee = 0.02;  // one-time, on committed capital at close
    double carry = 0.20;

    void validate() const;
};

/// Pool shares in basis points so each table sums to exactly 10000; the core
/// pod holds the remainder in the shipped defaults.
struct CarrySplitTable {
    std::map<PodKind, int> perf_fee_bp;  // default: sourcing 3000, core 7000
    std::map<PodKind, int> carry_bp;     // default: diligence 2500, success 3000, core 4500

    static CarrySplitTable defaults();
    void validate() const;
};

inline constexpr Money kDefaultSpvAdminCost = 10'000;

struct SPV {
    std::string deal_id;
    std::map<std::string, Money> investor_allocations;  // member -> committed, all > 0
    Money admin_cost = kDefaultSpvAdminCost;
    Money performance_fee = 0;
    Money net_invested = 0;  // commitments - performance fee - admin cost
    double formed_at = 0.0;
};

class UnderfundedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SpvFormation {
    Deal deal;  // now funded
    SPV spv;
};

/// Closes a memo-state deal into an SPV: the one-time performance fee is
/// charged on committed capital (rounded half-to-even), the admin cost comes
/// off the top, and the rest is invested. Throws UnderfundedError when the
/// commitments cannot cover fee plus admin with something left to invest.
SpvFormation form_spv(Deal deal, const std::map<std::string, Money>& commitments,
                      const FeeSchedule& schedule, double at,
                      Money admin_cost = kDefaultSpvAdminCost);

/// Splits a pool across pods by basis-point shares and within each pod by the
/// deal's attribution weights (largest remainder, ties to the ascending member
/// id). A pod share with no positive attribution reroutes to core; when core
/// itself has no attribution the core pod's members split it equally. Pass
/// pod_ledger to also receive the per-pod totals after rerouting.
std::map<std::string, Money> split_pool(Money pool, const std::map<PodKind, int>& shares_bp,
                                        const Attribution& attribution, const PodRoster& roster,
                                        std::map<PodKind, Money>* pod_ledger = nullptr);

struct WaterfallResult {
    Deal deal;  // now exited
    std::map<std::string, Money> investor_distributions;
    std::map<std::string, Money> carry_payouts;
    std::map<PodKind, Money> pod_carry;
    Money carry_pool = 0;
};

/// Exits a portfolio deal: investors get their paid-in back pro-rata, profit
/// above paid-in bears carry at the schedule rate, the carry pool splits per
/// the table, and the residual profit returns to investors pro-rata. Exact in
/// minor units: distributions plus carry always equal gross proceeds.
WaterfallResult exit_waterfall(Deal deal, const SPV& spv, Money gross_proceeds,
                               const FeeSchedule& schedule, const CarrySplitTable& splits,
                               const PodRoster& roster, double at);

/// One row of the per-deal ledger CSV.
struct DealLedgerRow {
    std::string deal_id;
    std::string state;
    std::string member;  // empty for firm-level flows
    std::string role;
    std::string flow_type;
    Money amount = 0;
    double time = 0.0;

    bool operator==(const DealLedgerRow&) const = default;
};

}  // namespace fundsim
