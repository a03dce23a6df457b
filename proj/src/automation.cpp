#include "fundsim/automation.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <tuple>

namespace fundsim {

bool FollowonCriteria::evaluate(const DealTerms& terms) const {
    if (!sectors.empty() && sectors.count(terms.sector) == 0) return false;
    if (min_round_size && terms.round_size < *min_round_size) return false;
    if (min_valuation_cap && terms.valuation_cap < *min_valuation_cap) return false;
    return true;
}

void AutomationRule::validate() const {
    if (id.empty()) throw std::invalid_argument("AutomationRule: empty id");
    if (min_round_size < 0 || max_valuation_cap < 0) {
        throw std::invalid_argument("AutomationRule: negative currency bound");
    }
    if (check_min < 0 || check_min > check_max) {
        throw std::invalid_argument("AutomationRule: check range must satisfy 0 <= min <= max");
    }
    if (max_per_quarter < 1) throw std::invalid_argument("AutomationRule: max_per_quarter < 1");
    if (!std::isfinite(holding_period_pref) || holding_period_pref < 0.0) {
        throw std::invalid_argument("AutomationRule: bad holding period");
    }
    if (!std::isfinite(followon_reserve_fraction) || followon_reserve_fraction < 0.0 ||
        followon_reserve_fraction > 1.0) {
        throw std::invalid_argument("AutomationRule: followon_reserve_fraction must be in [0, 1]");
    }
    if (!std::isfinite(fill_fraction) || fill_fraction < 0.0 || fill_fraction > 1.0) {
        throw std::invalid_argument("AutomationRule: fill_fraction must be in [0, 1]");
    }
}

const char* to_string(MatchDecision decision) {
    return decision == MatchDecision::match ? "match" : "no_match";
}

const char* to_string(MatchReason reason) {
    switch (reason) {
        case MatchReason::ok: return "ok";
        case MatchReason::sector: return "sector";
        case MatchReason::round_size: return "round_size";
        case MatchReason::valuation_cap: return "valuation_cap";
        case MatchReason::rate_limit: return "rate_limit";
        case MatchReason::check_floor: return "check_floor";
        case MatchReason::funds: return "funds";
    }
    return "unknown";
}

int quarter_of(double time) { return static_cast<int>(std::floor(time * 4.0)); }

int QuarterLedger::executed(const std::string& rule_id, int quarter) const {
    auto it = counts_.find({rule_id, quarter});
    return it == counts_.end() ? 0 : it->second;
}

void QuarterLedger::record_fill(const std::string& rule_id, int quarter) {
    ++counts_[{rule_id, quarter}];
}

MatchResult match(const AutomationRule& rule, const DealTerms& deal,
                  const QuarterLedger& ledger, Money owner_available_capital) {
    MatchResult r;
    if (!rule.sectors.empty() && rule.sectors.count(deal.sector) == 0) {
        r.reason = MatchReason::sector;
        return r;
    }
    if (deal.round_size < rule.min_round_size) {
        r.reason = MatchReason::round_size;
        return r;
    }
    if (deal.valuation_cap > rule.max_valuation_cap) {
        r.reason = MatchReason::valuation_cap;
        return r;
    }
    if (ledger.executed(rule.id, quarter_of(deal.announced_at)) >= rule.max_per_quarter) {
        r.reason = MatchReason::rate_limit;
        return r;
    }
    if (rule.check_min > deal.round_size) {
        r.reason = MatchReason::check_floor;
        return r;
    }
    if (owner_available_capital < rule.check_min) {
        r.reason = MatchReason::funds;
        return r;
    }
    r.decision = MatchDecision::match;
    r.reason = MatchReason::ok;
    Money offered =
        round_half_even(static_cast<double>(owner_available_capital) * rule.fill_fraction);
    r.proposed_check = std::min(rule.check_max, std::max(rule.check_min, offered));
    return r;
}

std::vector<RoundFill> allocate_round(Money round_capacity, std::vector<RoundRequest> requests) {
    if (round_capacity < 0) throw std::invalid_argument("allocate_round: negative capacity");
    for (const auto& q : requests) {
        if (q.check_min < 0 || q.proposed < q.check_min || q.proposed > q.check_max) {
            throw std::invalid_argument("allocate_round: proposed check outside its rule bounds");
        }
    }
    // Canonical order: result must not depend on arrival order.
    std::sort(requests.begin(), requests.end(), [](const RoundRequest& a, const RoundRequest& b) {
        return std::tie(a.created_at, a.rule_id) < std::tie(b.created_at, b.rule_id);
    });
    std::set<std::string> seen;
    for (const auto& q : requests) {
        if (!seen.insert(q.rule_id).second) {
            throw std::invalid_argument("allocate_round: duplicate rule id");
        }
    }

    std::vector<Money> amounts;
    while (!requests.empty()) {
        Money total = 0;
        for (const auto& q : requests) total += q.proposed;
        if (total <= round_capacity) {
            amounts.clear();
            for (const auto& q : requests) amounts.push_back(q.proposed);
            break;
        }
        std::vector<Money> weights;
        for (const auto& q : requests) weights.push_back(q.proposed);
        amounts = allocate_proportional(round_capacity, std::span<const Money>(weights));

        // Drop the youngest rule whose scaled check fell below its floor.
        std::size_t worst = requests.size();
        for (std::size_t i = 0; i < requests.size(); ++i) {
            if (amounts[i] >= requests[i].check_min) continue;
            if (worst == requests.size() ||
                std::tie(requests[i].created_at, requests[i].rule_id) >
                    std::tie(requests[worst].created_at, requests[worst].rule_id)) {
                worst = i;
            }
        }
        if (worst == requests.size()) break;  // scaled fill is feasible
        requests.erase(requests.begin() + static_cast<std::ptrdiff_t>(worst));
    }

    std::vector<RoundFill> fills;
    fills.reserve(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i) {
        fills.push_back({requests[i].rule_id, amounts[i]});
    }
    return fills;
}

Money reserve_followon(const AutomationRule& rule, Money staked_capital) {
    rule.validate();
    if (staked_capital < 0) throw std::invalid_argument("reserve_followon: negative stake");
    return round_half_even(static_cast<double>(staked_capital) * rule.followon_reserve_fraction);
}

}  // namespace fundsim
