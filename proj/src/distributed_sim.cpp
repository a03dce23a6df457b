#include "fundsim/distributed_sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <tuple>

#include "fundsim/kpi.hpp"

namespace fundsim {

void DistributedScenarioConfig::validate() const {
    outcome_model.validate();
    fees.validate();
    splits.validate();
    roster.validate();
    std::set<std::string> rule_ids;
    for (const auto& rule : rules) {
        rule.validate();
        if (!rule_ids.insert(rule.id).second) {
            throw std::invalid_argument("rule ids must be unique");
        }
        auto it = owner_capital.find(rule.owner);
        if (it == owner_capital.end() || it->second < 0) {
            throw std::invalid_argument("every rule owner needs a non-negative capital entry");
        }
    }
    if (admin_cost < 0) {
        throw std::invalid_argument("admin cost must be non-negative");
    }
    if (deals_per_trial < 1 || deals_per_trial >= (1 << 18)) {
        throw std::invalid_argument("deals per trial must lie in [1, 2^18)");
    }
    if (deployment_years < 1) {
        throw std::invalid_argument("deployment window must be at least one year");
    }
    if (sectors.empty()) {
        throw std::invalid_argument("sector pool must be non-empty");
    }
    if (round_size_min <= 0 || round_size_max < round_size_min) {
        throw std::invalid_argument("round size bounds must satisfy 0 < min <= max");
    }
    if (!std::isfinite(cap_multiple_min) || !std::isfinite(cap_multiple_max) ||
        cap_multiple_min < 1.0 || cap_multiple_max < cap_multiple_min) {
        throw std::invalid_argument("cap multiples must satisfy 1 <= min <= max");
    }
}

namespace {

// A funded SPV waiting on its exit, plus the follow-on reservations made for it.
struct LivePosition {
    Deal deal;
    SPV spv;
    int company = 0;
    int entry_year = 0;
    int exit_year = 0;
    bool followon = false;  // this SPV is itself a follow-on tranche
    double entry_mark = 1.0;  // reported mark the money bought in at
};

struct Reservation {
    std::string deal_id;  // parent deal the reserve is tied to
    std::size_t rule_index = 0;
    Money amount = 0;
    int company = 0;
    int entry_year = 0;
    int exit_year = 0;
    int trigger_year = 0;  // first year the criteria hold; exit_year when never
};

enum class EventKind { arrival, release, exit };

struct Event {
    double time = 0.0;
    long seq = 0;  // FIFO tie-break; assignment order is deterministic
    EventKind kind = EventKind::arrival;
    std::size_t index = 0;

    bool operator>(const Event& other) const {
        return std::tie(time, seq) > std::tie(other.time, other.seq);
    }
};

struct TrialEngine {
    const DistributedScenarioConfig& config;
    std::uint64_t master_seed;
    int trial;

    DistributedTrialResult out;
    std::vector<AutomationRule> rules;  // canonical (created_at, id) order
    QuarterLedger quarter_ledger;
    std::vector<CompanyOutcome> outcomes;
    std::vector<DealTerms> terms;
    std::vector<double> arrival_time;
    std::vector<LivePosition> live;
    std::vector<Reservation> reservations;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events;
    long next_seq = 0;

    explicit TrialEngine(const DistributedScenarioConfig& cfg, std::uint64_t seed, int t)
        : config(cfg), master_seed(seed), trial(t) {}

    void push_event(double time, EventKind kind, std::size_t index) {
        events.push(Event{time, next_seq++, kind, index});
    }

    InvestorAccount& account(const std::string& owner) { return out.accounts.at(owner); }

    void row(const LivePosition& pos, std::string member, std::string role,
             std::string flow_type, Money amount, double time) {
        out.ledger.push_back(DealLedgerRow{pos.deal.id, to_string(pos.deal.state),
                                           std::move(member), std::move(role),
                                           std::move(flow_type), amount, time});
    }

    void prepare() {
        rules = config.rules;
        std::sort(rules.begin(), rules.end(), [](const AutomationRule& a, const AutomationRule& b) {
            return std::tie(a.created_at, a.id) < std::tie(b.created_at, b.id);
        });
        for (const auto& [owner, capital] : config.owner_capital) {
            InvestorAccount book;
            book.base = capital;
            book.available = capital;
            out.accounts[owner] = book;
        }

        int n = config.deals_per_trial;
        int window = config.deployment_years;
        outcomes.reserve(static_cast<std::size_t>(n));
        terms.resize(static_cast<std::size_t>(n));
        arrival_time.resize(static_cast<std::size_t>(n));
        std::vector<int> year_of(static_cast<std::size_t>(n));
        std::vector<int> per_year(static_cast<std::size_t>(window), 0);
        for (int i = 0; i < n; ++i) {
            int year = static_cast<int>((static_cast<std::int64_t>(i) * window) / n);
            year_of[static_cast<std::size_t>(i)] = year;
            ++per_year[static_cast<std::size_t>(year)];
        }
        std::vector<int> seen(static_cast<std::size_t>(window), 0);
        for (int i = 0; i < n; ++i) {
            auto u = static_cast<std::uint64_t>(i);
            // Same channel-0 stream as the committed-fund run, so company i is
            // the same company in both models.
            outcomes.push_back(sample_outcome(
                config.outcome_model, {master_seed, substream(static_cast<std::uint64_t>(trial), u)}));

            Rng attrs = derive_stream(master_seed, substream(static_cast<std::uint64_t>(trial), u, 1));
            DealTerms& t = terms[static_cast<std::size_t>(i)];
            t.sector = config.sectors[static_cast<std::size_t>(
                attrs.next_u64() % config.sectors.size())];
            t.round_size = round_half_even(attrs.uniform(static_cast<double>(config.round_size_min),
                                                         static_cast<double>(config.round_size_max)));
            t.valuation_cap = round_half_even(static_cast<double>(t.round_size) *
                                              attrs.uniform(config.cap_multiple_min,
                                                            config.cap_multiple_max));
            t.stage = "seed";

            int year = year_of[static_cast<std::size_t>(i)];
            int k = seen[static_cast<std::size_t>(year)]++;
            double offset = (k + 0.5) / per_year[static_cast<std::size_t>(year)];
            t.announced_at = year + 0.9 * offset;
            arrival_time[static_cast<std::size_t>(i)] = t.announced_at;
            push_event(t.announced_at, EventKind::arrival, static_cast<std::size_t>(i));
        }
    }

    // Collects the attribution the firm logs while working a deal: sourcing and
    // core staff log at memo time, diligence weights vary per deal.
    Attribution memo_attribution(int company) {
        Attribution attribution;
        Rng weights = derive_stream(master_seed,
                                    substream(static_cast<std::uint64_t>(trial),
                                              static_cast<std::uint64_t>(company), 2));
        for (const auto& pod : config.roster.pods) {
            for (const auto& member : pod.members) {
                double w = 1.0;
                if (pod.kind == PodKind::diligence) w = weights.uniform(0.5, 2.0);
                attribution[pod.kind][member] += w;
            }
        }
        return attribution;
    }

    void handle_arrival(std::size_t i) {
        const DealTerms& t = terms[i];
        const CompanyOutcome& outcome = outcomes[i];
        double at = arrival_time[i];

        Deal deal = make_deal("t" + std::to_string(trial) + "-d" + std::to_string(i), t, at);
        deal = advance_deal(std::move(deal), DealState::memo,
                            memo_attribution(static_cast<int>(i)), at + 0.001);

        std::vector<RoundRequest> requests;
        std::vector<std::size_t> request_rule;
        std::map<std::string, Money> proposed_by_owner;
        for (std::size_t r = 0; r < rules.size(); ++r) {
            const AutomationRule& rule = rules[r];
            // An owner's later rules see capital net of what the earlier ones
            // already proposed for this round, so combined fills never exceed
            // the owner's available balance.
            Money remaining = account(rule.owner).available - proposed_by_owner[rule.owner];
            MatchResult m = match(rule, t, quarter_ledger, remaining);
            if (m.decision == MatchDecision::match) {
                requests.push_back(RoundRequest{rule.id, m.proposed_check, rule.check_min,
                                                rule.check_max, rule.created_at});
                request_rule.push_back(r);
                proposed_by_owner[rule.owner] += m.proposed_check;
            }
        }
        std::vector<RoundFill> fills = allocate_round(t.round_size, requests);
        if (fills.empty()) {
            ++out.deals_rejected;
            return;
        }

        std::map<std::string, Money> commitments;
        std::vector<std::pair<std::size_t, Money>> rule_fills;  // rule index -> fill
        for (const auto& fill : fills) {
            for (std::size_t k = 0; k < requests.size(); ++k) {
                if (requests[k].rule_id == fill.rule_id) {
                    commitments[rules[request_rule[k]].owner] += fill.amount;
                    rule_fills.emplace_back(request_rule[k], fill.amount);
                    break;
                }
            }
        }

        SpvFormation formation;
        try {
            formation = form_spv(std::move(deal), commitments, config.fees, at + 0.002,
                                 config.admin_cost);
        } catch (const UnderfundedError&) {
            ++out.deals_rejected;
            return;
        }

        // The close went through: move capital, count the fills, set reserves.
        int quarter = quarter_of(t.announced_at);
        for (const auto& [rule_index, amount] : rule_fills) {
            const AutomationRule& rule = rules[rule_index];
            InvestorAccount& book = account(rule.owner);
            book.available -= amount;
            book.deployed += amount;
            quarter_ledger.record_fill(rule.id, quarter);

            Money reserve = reserve_followon(rule, amount);
            reserve = std::min(reserve, book.available);
            if (reserve > 0) {
                book.available -= reserve;
                book.reserved += reserve;
                Reservation res;
                res.deal_id = formation.deal.id;
                res.rule_index = rule_index;
                res.amount = reserve;
                res.company = static_cast<int>(i);
                res.entry_year = static_cast<int>(arrival_time[i]);
                res.exit_year = res.entry_year + static_cast<int>(outcome.paper_marks.size());
                res.trigger_year = first_trigger_year(rule, i, res.entry_year, res.exit_year);
                reservations.push_back(res);
                if (res.trigger_year < res.exit_year) {
                    push_event(res.trigger_year + 0.25, EventKind::release,
                               reservations.size() - 1);
                }
            }
        }

        LivePosition pos;
        pos.deal = std::move(formation.deal);
        pos.spv = std::move(formation.spv);
        pos.company = static_cast<int>(i);
        pos.entry_year = static_cast<int>(arrival_time[i]);
        pos.exit_year = pos.entry_year + static_cast<int>(outcome.paper_marks.size());
        ++out.deals_funded;

        record_close(pos, at + 0.002);
        pos.deal = advance_deal(std::move(pos.deal), DealState::portfolio, {}, at + 0.003);
        live.push_back(std::move(pos));
        push_event(pos_exit_time(live.back()), EventKind::exit, live.size() - 1);
    }

    double pos_exit_time(const LivePosition& pos) {
        // Exits settle mid-year, ordered by company then tranche.
        return pos.exit_year + 0.5 + 1e-4 * (pos.company + 1) + (pos.followon ? 5e-5 : 0.0);
    }

    // The first year, strictly inside the holding period, where the company's
    // then-current terms satisfy the rule's follow-on criteria.
    int first_trigger_year(const AutomationRule& rule, std::size_t company, int entry_year,
                           int exit_year) {
        const CompanyOutcome& outcome = outcomes[company];
        for (int age = 1; entry_year + age < exit_year; ++age) {
            double mark = outcome.paper_marks[static_cast<std::size_t>(age - 1)];
            if (mark <= 0.0) break;
            if (rule.followon_criteria.evaluate(aged_terms(terms[company], mark))) {
                return entry_year + age;
            }
        }
        return exit_year;  // never triggers while the position is live
    }

    static DealTerms aged_terms(const DealTerms& base, double mark) {
        DealTerms aged = base;
        aged.round_size = round_half_even(static_cast<double>(base.round_size) * mark);
        aged.valuation_cap = round_half_even(static_cast<double>(base.valuation_cap) * mark);
        return aged;
    }

    void record_close(const LivePosition& pos, double at) {
        for (const auto& [member, amount] : pos.spv.investor_allocations) {
            row(pos, member, "investor", "commitment", amount, at);
            out.committed += amount;
        }
        row(pos, "", "company", "investment", pos.spv.net_invested, at);
        out.invested += pos.spv.net_invested;
        row(pos, "", "spv", "admin_cost", pos.spv.admin_cost, at);
        out.admin += pos.spv.admin_cost;

        auto fee_payouts = split_pool(pos.spv.performance_fee, config.splits.perf_fee_bp,
                                      pos.deal.attribution, config.roster);
        for (const auto& [member, amount] : fee_payouts) {
            row(pos, member, "member", "performance_fee", amount, at);
            out.member_take[member] += amount;
        }
        out.perf_fees += pos.spv.performance_fee;
    }

    void handle_release(std::size_t res_index) {
        Reservation& res = reservations[res_index];
        if (res.amount <= 0) return;
        const AutomationRule& rule = rules[res.rule_index];
        InvestorAccount& book = account(rule.owner);
        Money amount = res.amount;
        res.amount = 0;
        book.reserved -= amount;

        const CompanyOutcome& outcome = outcomes[static_cast<std::size_t>(res.company)];
        int age = res.trigger_year - res.entry_year;
        double entry_mark = outcome.paper_marks[static_cast<std::size_t>(age - 1)];
        double at = res.trigger_year + 0.25;

        Deal deal = make_deal(res.deal_id + "-fo",
                              aged_terms(terms[static_cast<std::size_t>(res.company)], entry_mark),
                              at);
        deal = advance_deal(std::move(deal), DealState::memo, memo_attribution(res.company),
                            at + 0.001);
        SpvFormation formation;
        try {
            formation = form_spv(std::move(deal), {{rule.owner, amount}}, config.fees, at + 0.002,
                                 config.admin_cost);
        } catch (const UnderfundedError&) {
            // Triggered but too small to carry its own close costs: the
            // reserve simply returns to available capital.
            book.available += amount;
            return;
        }
        book.deployed += amount;

        LivePosition pos;
        pos.deal = std::move(formation.deal);
        pos.spv = std::move(formation.spv);
        pos.company = res.company;
        pos.entry_year = res.trigger_year;
        pos.exit_year = res.exit_year;
        pos.followon = true;
        pos.entry_mark = entry_mark;
        ++out.deals_funded;

        record_close(pos, at + 0.002);
        pos.deal = advance_deal(std::move(pos.deal), DealState::portfolio, {}, at + 0.003);
        live.push_back(std::move(pos));
        push_event(pos_exit_time(live.back()), EventKind::exit, live.size() - 1);
    }

    void handle_exit(std::size_t pos_index) {
        LivePosition& pos = live[pos_index];
        const CompanyOutcome& outcome = outcomes[static_cast<std::size_t>(pos.company)];
        double terminal_mark = outcome.failed() ? 0.0 : outcome.paper_marks.back();

        // The tranche bought in at entry_mark; proceeds scale by the reported
        // mark ratio and settle at fair value.
        Money paper = round_half_even(static_cast<double>(pos.spv.net_invested) * terminal_mark /
                                      pos.entry_mark);
        Money gross = fair_value_adjust(paper, config.outcome_model.markup_inflation);
        double at = pos_exit_time(pos);

        WaterfallResult settled = exit_waterfall(std::move(pos.deal), pos.spv, gross, config.fees,
                                                 config.splits, config.roster, at);
        pos.deal = std::move(settled.deal);

        row(pos, "", "company", "proceeds", gross, at);
        for (const auto& [member, amount] : settled.investor_distributions) {
            row(pos, member, "investor", "distribution", amount, at);
            out.distributed += amount;
            InvestorAccount& book = account(member);
            Money cost = pos.spv.investor_allocations.at(member);
            book.available += amount;
            book.deployed -= cost;
            book.base += amount - cost;
        }
        for (const auto& [member, amount] : settled.carry_payouts) {
            row(pos, member, "member", "carry", amount, at);
            out.member_take[member] += amount;
        }
        out.carry += settled.carry_pool;

        // A position that exits before its follow-on trigger releases the
        // reserve back to available capital.
        for (auto& res : reservations) {
            if (res.deal_id == pos.deal.id && res.amount > 0) {
                InvestorAccount& book = account(rules[res.rule_index].owner);
                book.reserved -= res.amount;
                book.available += res.amount;
                res.amount = 0;
            }
        }
    }

    DistributedTrialResult run() {
        prepare();
        while (!events.empty()) {
            Event event = events.top();
            events.pop();
            switch (event.kind) {
                case EventKind::arrival: handle_arrival(event.index); break;
                case EventKind::release: handle_release(event.index); break;
                case EventKind::exit: handle_exit(event.index); break;
            }
        }
        // Reserves whose trigger never came return at scenario end.
        for (auto& res : reservations) {
            if (res.amount > 0) {
                InvestorAccount& book = account(rules[res.rule_index].owner);
                book.reserved -= res.amount;
                book.available += res.amount;
                res.amount = 0;
            }
        }
        for (const auto& [owner, book] : out.accounts) {
            if (book.available + book.reserved + book.deployed != book.base) {
                throw std::logic_error("owner capital book does not balance");
            }
        }
        out.outcomes = std::move(outcomes);
        out.trial = trial;
        if (out.committed > 0) {
            out.lp_dpi = static_cast<double>(out.distributed) / static_cast<double>(out.committed);
        }
        return std::move(out);
    }
};

}  // namespace

DistributedTrialResult run_distributed_trial(const DistributedScenarioConfig& config,
                                             std::uint64_t master_seed, int trial) {
    config.validate();
    if (trial < 0) {
        throw std::invalid_argument("trial index must be non-negative");
    }
    TrialEngine engine(config, master_seed, trial);
    return engine.run();
}

std::vector<CompareRow> compare_models(const std::vector<FundRunResult>& standard_results,
                                       const std::vector<DistributedTrialResult>& distributed_results,
                                       const OutcomeModel& standard_model,
                                       const OutcomeModel& distributed_model,
                                       std::uint64_t standard_seed,
                                       std::uint64_t distributed_seed) {
    if (standard_seed != distributed_seed) {
        throw std::invalid_argument("paired comparison requires the same master seed");
    }
    if (!(standard_model == distributed_model)) {
        throw std::invalid_argument("paired comparison requires the same outcome model");
    }
    if (standard_results.size() != distributed_results.size()) {
        throw std::invalid_argument("paired comparison requires the same trial count");
    }
    std::vector<CompareRow> rows;
    rows.reserve(standard_results.size());
    for (std::size_t i = 0; i < standard_results.size(); ++i) {
        const FundRunResult& fund = standard_results[i];
        const DistributedTrialResult& firm = distributed_results[i];
        CompareRow row;
        row.trial = static_cast<int>(i);
        if (fund.paid_in_total > 0) {
            row.lp_dpi_standard = static_cast<double>(fund.distributed_total) /
                                  static_cast<double>(fund.paid_in_total);
        }
        row.lp_dpi_distributed = firm.lp_dpi;
        row.fees_standard = fund.fees_total;
        row.fees_distributed = firm.perf_fees;
        row.carry_standard = fund.carry_total;
        row.carry_distributed = firm.carry;
        row.admin_distributed = firm.admin;
        row.gp_take_standard = fund.fees_total + fund.carry_total;
        row.pod_take_distributed = firm.perf_fees + firm.carry;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace fundsim
