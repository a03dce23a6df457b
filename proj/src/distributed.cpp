#include "fundsim/distributed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <span>

namespace fundsim {

namespace {

void validate_attribution(const Attribution& attribution) {
    for (const auto& [kind, weights] : attribution) {
        for (const auto& [member, weight] : weights) {
            if (member.empty()) {
                throw std::invalid_argument("attribution member id must be non-empty");
            }
            if (!std::isfinite(weight) || weight < 0.0) {
                throw std::invalid_argument("attribution weight must be finite and non-negative");
            }
        }
    }
}

bool has_positive_weight(const std::map<std::string, double>& weights) {
    return std::any_of(weights.begin(), weights.end(),
                       [](const auto& entry) { return entry.second > 0.0; });
}

double last_timestamp(const Deal& deal) {
    if (deal.history.empty()) {
        throw std::invalid_argument("deal has no history");
    }
    return deal.history.back().second;
}

void require_advancing_clock(const Deal& deal, double at) {
    if (!std::isfinite(at) || at <= last_timestamp(deal)) {
        throw std::invalid_argument("deal timestamps must strictly increase");
    }
}

}  // namespace

const char* to_string(PodKind kind) {
    switch (kind) {
        case PodKind::core: return "core";
        case PodKind::sourcing: return "sourcing";
        case PodKind::diligence: return "diligence";
        case PodKind::funding: return "funding";
        case PodKind::success: return "success";
    }
    throw std::invalid_argument("unknown pod kind");
}

const char* to_string(DealState state) {
    switch (state) {
        case DealState::sourced: return "sourced";
        case DealState::memo: return "memo";
        case DealState::funded: return "funded";
        case DealState::portfolio: return "portfolio";
        case DealState::exited: return "exited";
        case DealState::rejected: return "rejected";
    }
    throw std::invalid_argument("unknown deal state");
}

void PodRoster::validate() const {
    std::set<PodKind> seen;
    for (const auto& pod : pods) {
        if (!seen.insert(pod.kind).second) {
            throw std::invalid_argument("duplicate pod kind in roster");
        }
        for (const auto& member : pod.members) {
            if (member.empty()) {
                throw std::invalid_argument("pod member id must be non-empty");
            }
        }
    }
    if (seen.count(PodKind::core) == 0) {
        throw std::invalid_argument("roster must contain the core pod");
    }
}

const Pod* PodRoster::find(PodKind kind) const {
    for (const auto& pod : pods) {
        if (pod.kind == kind) return &pod;
    }
    return nullptr;
}

Deal make_deal(std::string id, DealTerms terms, double created_at) {
    if (id.empty()) {
        throw std::invalid_argument("deal id must be non-empty");
    }
    if (!std::isfinite(created_at)) {
        throw std::invalid_argument("deal creation time must be finite");
    }
    Deal deal;
    deal.id = std::move(id);
    deal.terms = std::move(terms);
    deal.state = DealState::sourced;
    deal.history.emplace_back(DealState::sourced, created_at);
    return deal;
}

Deal advance_deal(Deal deal, DealState target, const Attribution& delta, double at) {
    if (target == DealState::funded) {
        throw std::invalid_argument("deals fund through form_spv, not advance_deal");
    }
    if (target == DealState::exited) {
        throw std::invalid_argument("deals exit through exit_waterfall, not advance_deal");
    }
    bool legal = false;
    switch (deal.state) {
        case DealState::sourced:
            legal = target == DealState::memo || target == DealState::rejected;
            break;
        case DealState::memo:
            legal = target == DealState::rejected;
            break;
        case DealState::funded:
            legal = target == DealState::portfolio;
            break;
        case DealState::portfolio:
        case DealState::exited:
        case DealState::rejected:
            legal = false;
            break;
    }
    if (!legal) {
        throw std::invalid_argument(std::string("illegal deal transition: ") +
                                    to_string(deal.state) + " -> " + to_string(target));
    }
    require_advancing_clock(deal, at);
    validate_attribution(delta);
    for (const auto& [kind, weights] : delta) {
        for (const auto& [member, weight] : weights) {
            deal.attribution[kind][member] += weight;
        }
    }
    deal.state = target;
    deal.history.emplace_back(target, at);
    return deal;
}

void FeeSchedule::validate() const {
    if (!std::isfinite(performance_fee) || performance_fee < 0.0 || performance_fee > 1.0) {
        throw std::invalid_argument("performance fee must lie in [0, 1]");
    }
    if (!std::isfinite(carry) || carry < 0.0 || carry > 1.0) {
        throw std::invalid_argument("carry rate must lie in [0, 1]");
    }
}

CarrySplitTable CarrySplitTable::defaults() {
    CarrySplitTable table;
    table.perf_fee_bp = {{PodKind::sourcing, 3000}, {PodKind::core, 7000}};
    table.carry_bp = {{PodKind::diligence, 2500}, {PodKind::success, 3000},
                      {PodKind::core, 4500}};
    return table;
}

namespace {

void validate_shares(const std::map<PodKind, int>& shares_bp, const char* label) {
    long long total = 0;
    for (const auto& [kind, bp] : shares_bp) {
        if (bp < 0) {
            throw std::invalid_argument(std::string(label) + " share must be non-negative");
        }
        total += bp;
    }
    if (total != 10'000) {
        throw std::invalid_argument(std::string(label) +
                                    " shares must total exactly 10000 basis points");
    }
}

}  // namespace

void CarrySplitTable::validate() const {
    validate_shares(perf_fee_bp, "performance fee");
    validate_shares(carry_bp, "carry");
}

SpvFormation form_spv(Deal deal, const std::map<std::string, Money>& commitments,
                      const FeeSchedule& schedule, double at, Money admin_cost) {
    if (deal.state != DealState::memo) {
        throw std::invalid_argument("only a memo-state deal can close into an SPV");
    }
    schedule.validate();
    if (admin_cost < 0) {
        throw std::invalid_argument("admin cost must be non-negative");
    }
    if (commitments.empty()) {
        throw std::invalid_argument("an SPV needs at least one investor commitment");
    }
    require_advancing_clock(deal, at);

    Money total = 0;
    for (const auto& [member, amount] : commitments) {
        if (member.empty()) {
            throw std::invalid_argument("investor id must be non-empty");
        }
        if (amount <= 0) {
            throw std::invalid_argument("investor commitments must be positive");
        }
        total += amount;
    }

    Money fee = round_half_even(schedule.performance_fee * static_cast<double>(total));
    Money net = total - fee - admin_cost;
    if (net <= 0) {
        throw UnderfundedError("commitments do not cover the performance fee and admin cost");
    }

    SPV spv;
    spv.deal_id = deal.id;
    spv.investor_allocations = commitments;
    spv.admin_cost = admin_cost;
    spv.performance_fee = fee;
    spv.net_invested = net;
    spv.formed_at = at;

    deal.state = DealState::funded;
    deal.history.emplace_back(DealState::funded, at);
    return SpvFormation{std::move(deal), std::move(spv)};
}

std::map<std::string, Money> split_pool(Money pool, const std::map<PodKind, int>& shares_bp,
                                        const Attribution& attribution, const PodRoster& roster,
                                        std::map<PodKind, Money>* pod_ledger) {
    if (pool < 0) {
        throw std::invalid_argument("pool must be non-negative");
    }
    validate_shares(shares_bp, "pool");
    validate_attribution(attribution);
    roster.validate();
    if (pod_ledger != nullptr) {
        pod_ledger->clear();
    }
    std::map<std::string, Money> payouts;
    if (pool == 0) {
        return payouts;
    }

    constexpr std::size_t kPodCount = std::size(kPodOrder);
    std::array<Money, kPodCount> weights{};
    for (std::size_t i = 0; i < kPodCount; ++i) {
        auto it = shares_bp.find(kPodOrder[i]);
        weights[i] = it == shares_bp.end() ? 0 : it->second;
    }
    std::vector<Money> shares = allocate_proportional(pool, std::span<const Money>(weights));

    // A pod entitled to a share but with no positive attribution reroutes its
    // share to core (kPodOrder[0]).
    for (std::size_t i = 1; i < kPodCount; ++i) {
        if (shares[i] == 0) continue;
        auto it = attribution.find(kPodOrder[i]);
        if (it == attribution.end() || !has_positive_weight(it->second)) {
            shares[0] += shares[i];
            shares[i] = 0;
        }
    }

    Money paid = 0;
    for (std::size_t i = 0; i < kPodCount; ++i) {
        if (shares[i] == 0) continue;
        PodKind kind = kPodOrder[i];
        std::vector<std::string> members;
        std::vector<double> member_weights;
        auto it = attribution.find(kind);
        if (it != attribution.end() && has_positive_weight(it->second)) {
            for (const auto& [member, weight] : it->second) {
                members.push_back(member);
                member_weights.push_back(weight);
            }
        } else {
            // Only core can reach this branch; its members split equally.
            const Pod* core = roster.find(PodKind::core);
            if (core == nullptr || core->members.empty()) {
                throw std::invalid_argument(
                    "no attribution and no core members to receive the pool");
            }
            for (const auto& member : core->members) {
                members.push_back(member);
                member_weights.push_back(1.0);
            }
        }
        std::vector<Money> fills =
            allocate_proportional(shares[i], std::span<const double>(member_weights));
        for (std::size_t j = 0; j < members.size(); ++j) {
            payouts[members[j]] += fills[j];
            paid += fills[j];
        }
        if (pod_ledger != nullptr) {
            (*pod_ledger)[kind] += shares[i];
        }
    }
    if (paid != pool) {
        throw std::logic_error("pool split does not conserve the pool");
    }
    return payouts;
}

WaterfallResult exit_waterfall(Deal deal, const SPV& spv, Money gross_proceeds,
                               const FeeSchedule& schedule, const CarrySplitTable& splits,
                               const PodRoster& roster, double at) {
    if (deal.state != DealState::portfolio) {
        throw std::invalid_argument("only a portfolio-state deal can exit");
    }
    if (spv.deal_id != deal.id) {
        throw std::invalid_argument("SPV does not belong to this deal");
    }
    if (gross_proceeds < 0) {
        throw std::invalid_argument("gross proceeds must be non-negative");
    }
    schedule.validate();
    splits.validate();
    roster.validate();
    require_advancing_clock(deal, at);
    if (spv.investor_allocations.empty()) {
        throw std::invalid_argument("SPV has no investors");
    }

    Money paid_in = 0;
    std::vector<std::string> investors;
    std::vector<Money> allocations;
    for (const auto& [member, amount] : spv.investor_allocations) {
        if (member.empty() || amount <= 0) {
            throw std::invalid_argument("investor allocations must be positive");
        }
        paid_in += amount;
        investors.push_back(member);
        allocations.push_back(amount);
    }

    WaterfallResult result;
    if (gross_proceeds <= paid_in) {
        // No profit, no carry: whatever came back returns pro-rata.
        std::vector<Money> fills =
            allocate_proportional(gross_proceeds, std::span<const Money>(allocations));
        for (std::size_t i = 0; i < investors.size(); ++i) {
            result.investor_distributions[investors[i]] = fills[i];
        }
    } else {
        Money profit = gross_proceeds - paid_in;
        result.carry_pool = round_half_even(schedule.carry * static_cast<double>(profit));
        result.carry_payouts = split_pool(result.carry_pool, splits.carry_bp, deal.attribution,
                                          roster, &result.pod_carry);
        Money residual = profit - result.carry_pool;
        std::vector<Money> fills =
            allocate_proportional(residual, std::span<const Money>(allocations));
        for (std::size_t i = 0; i < investors.size(); ++i) {
            result.investor_distributions[investors[i]] = allocations[i] + fills[i];
        }
    }

    Money out = result.carry_pool;
    for (const auto& [member, amount] : result.investor_distributions) out += amount;
    if (out != gross_proceeds) {
        throw std::logic_error("waterfall does not conserve gross proceeds");
    }

    deal.state = DealState::exited;
    deal.history.emplace_back(DealState::exited, at);
    result.deal = std::move(deal);
    return result;
}

}  // namespace fundsim
