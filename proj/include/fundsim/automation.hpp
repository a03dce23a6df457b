#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fundsim/money.hpp"

namespace fundsim {

/// The company-facing attributes a funding rule can see.
struct DealTerms {
    std::string sector;
    Money round_size = 0;
    Money valuation_cap = 0;
    std::string stage;         // bookkeeping only
    double announced_at = 0.0; // simulation years; buckets into calendar quarters
};

/// Declarative trigger for releasing a follow-on reserve: every present field
/// must hold for the next round's terms. An empty sector set means any sector.
struct FollowonCriteria {
    std::set<std::string> sectors;
    std::optional<Money> min_round_size;
    std::optional<Money> min_valuation_cap;

    bool evaluate(const DealTerms& terms) const;
};

/// A standing LP funding automation. An empty sector set matches any sector;
/// fill_fraction is the slice of available capital offered per check before
/// clamping to [check_min, check_max].
struct AutomationRule {
    std::string id;
    std::string owner;  // member id
    std::set<std::string> sectors;
    Money min_round_size = 0;
    Money max_valuation_cap = 0;
    Money check_min = 0;
    Money check_max = 0;
    int max_per_quarter = 1;
    double holding_period_pref = 0.0;  // years; recorded, never gates a match
    double followon_reserve_fraction = 0.0;
    FollowonCriteria followon_criteria;
    double fill_fraction = 1.0;
    std::uint64_t created_at = 0;  // ordinal; youngest rules yield first on oversubscription

    void validate() const;  // throws std::invalid_argument
};

enum class MatchDecision { match, no_match };

/// Reasons mirror the clauses in their fixed evaluation order; the first
/// failing clause names the reason.
enum class MatchReason { ok, sector, round_size, valuation_cap, rate_limit, check_floor, funds };

const char* to_string(MatchDecision decision);
const char* to_string(MatchReason reason);

struct MatchResult {
    MatchDecision decision = MatchDecision::no_match;
    MatchReason reason = MatchReason::ok;
    Money proposed_check = 0;  // in [check_min, check_max] when matched
};

/// Calendar quarter of a simulation timestamp: floor(years * 4).
int quarter_of(double time);

/// Executed fill counts per (rule, quarter).
class QuarterLedger {
  public:
    int executed(const std::string& rule_id, int quarter) const;
    void record_fill(const std::string& rule_id, int quarter);

  private:
    std::map<std::pair<std::string, int>, int> counts_;
};

/// Evaluates the rule against a deal. Clauses are conjunctive and checked in a
/// fixed order: sector, round size, valuation cap, quarter rate limit, check
/// floor vs the round (a minimum check larger than the round cannot fill), and
/// owner funds. The proposed check is fill_fraction of available capital,
/// rounded half-to-even and clamped to the rule's check range.
MatchResult match(const AutomationRule& rule, const DealTerms& deal,
                  const QuarterLedger& ledger, Money owner_available_capital);

struct RoundRequest {
    std::string rule_id;
    Money proposed = 0;
    Money check_min = 0;
    Money check_max = 0;
    std::uint64_t created_at = 0;
};

struct RoundFill {
    std::string rule_id;
    Money amount = 0;
};

/// Resolves oversubscription. Requests that fit fill as proposed; otherwise
/// all are scaled down pro-rata (largest remainder, so the total is exact) and
/// any check pushed below its floor causes the youngest violating rule to drop
/// out before re-scaling, until the remainder is feasible. The result only
/// depends on (created_at, rule_id), never on input order. Fills are returned
/// in that canonical order; dropped rules are omitted.
std::vector<RoundFill> allocate_round(Money round_capacity, std::vector<RoundRequest> requests);

/// Capital set aside for follow-ons: staked * fraction, rounded half-to-even.
Money reserve_followon(const AutomationRule& rule, Money staked_capital);

}  // namespace fundsim
