#include <doctest.h>

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "fundsim/distributed_sim.hpp"

using namespace fundsim;

namespace {

// Deterministic outcome model: every company survives, doubles its fair value
// over exactly eight years, and reported marks equal fair marks.
OutcomeModel doubling_model() {
    OutcomeModel model;
    model.failure_hazard = 0.0;
    model.pareto_alpha = std::numeric_limits<double>::infinity();
    model.pareto_xmin = 2.0;
    model.stepup_mu = 0.10;
    model.stepup_sigma = 0.0;
    model.years_to_liquidity_min = 8.0;
    model.years_to_liquidity_max = 8.0;
    model.markup_inflation = 0.0;
    return model;
}

AutomationRule base_rule() {
    AutomationRule rule;
    rule.id = "r-biotech";
    rule.owner = "lp-a";
    rule.sectors = {"biotech"};
    rule.min_round_size = 5'000'000;
    rule.max_valuation_cap = 25'000'000;
    rule.check_min = 100'000;
    rule.check_max = 250'000;
    rule.max_per_quarter = 100;
    rule.followon_reserve_fraction = 0.0;
    rule.created_at = 1;
    return rule;
}

PodRoster single_member_roster() {
    PodRoster roster;
    roster.pods.push_back({PodKind::core, {"carol"}});
    roster.pods.push_back({PodKind::sourcing, {"sam"}});
    roster.pods.push_back({PodKind::diligence, {"dina"}});
    roster.pods.push_back({PodKind::success, {"bob"}});
    return roster;
}

// Four identical deals in year zero, one per quarter, fully deterministic.
DistributedScenarioConfig deterministic_config() {
    DistributedScenarioConfig config;
    config.outcome_model = doubling_model();
    config.roster = single_member_roster();
    config.rules = {base_rule()};
    config.owner_capital = {{"lp-a", 10'000'000}};
    config.deals_per_trial = 4;
    config.deployment_years = 1;
    config.sectors = {"biotech"};
    config.round_size_min = 6'000'000;
    config.round_size_max = 6'000'000;
    config.cap_multiple_min = 4.0;
    config.cap_multiple_max = 4.0;
    return config;
}

Money ledger_sum(const DistributedTrialResult& result, const std::string& flow_type) {
    Money total = 0;
    for (const auto& row : result.ledger) {
        if (row.flow_type == flow_type) total += row.amount;
    }
    return total;
}

}  // namespace

TEST_CASE("deterministic scenario matches the hand ledger") {
    DistributedTrialResult result = run_distributed_trial(deterministic_config(), 11, 0);

    // Each deal: check 250,000; fee 5,000; admin 10,000; net 235,000 invested.
    // Doubling over 8 years: gross 470,000; profit 220,000; carry 44,000;
    // investor receives 426,000.
    CHECK(result.deals_funded == 4);
    CHECK(result.deals_rejected == 0);
    CHECK(result.committed == 1'000'000);
    CHECK(result.invested == 940'000);
    CHECK(result.perf_fees == 20'000);
    CHECK(result.admin == 40'000);
    CHECK(result.carry == 176'000);
    CHECK(result.distributed == 1'704'000);
    CHECK(result.lp_dpi == doctest::Approx(1.704).epsilon(1e-12));

    // Per-member take: carry splits 25/30/45 plus the fee's 30/70.
    CHECK(result.member_take.at("dina") == 44'000);   // diligence carry
    CHECK(result.member_take.at("bob") == 52'800);    // success carry
    CHECK(result.member_take.at("sam") == 6'000);     // sourcing fee share
    CHECK(result.member_take.at("carol") == 93'200);  // core carry + fee share

    const InvestorAccount& book = result.accounts.at("lp-a");
    CHECK(book.base == 10'704'000);
    CHECK(book.available == 10'704'000);
    CHECK(book.reserved == 0);
    CHECK(book.deployed == 0);
}

TEST_CASE("every deal's ledger rows conserve cash through the SPV") {
    DistributedScenarioConfig config = deterministic_config();
    config.rules[0].followon_reserve_fraction = 0.5;  // exercise follow-on SPVs too
    DistributedTrialResult result = run_distributed_trial(config, 11, 0);

    std::map<std::string, std::map<std::string, Money>> by_deal;
    for (const auto& row : result.ledger) {
        by_deal[row.deal_id][row.flow_type] += row.amount;
    }
    CHECK(!by_deal.empty());
    for (const auto& [deal_id, flows] : by_deal) {
        auto get = [&flows](const char* key) {
            auto it = flows.find(key);
            return it == flows.end() ? Money{0} : it->second;
        };
        CHECK(get("commitment") + get("proceeds") ==
              get("investment") + get("admin_cost") + get("performance_fee") +
                  get("distribution") + get("carry"));
    }
}

TEST_CASE("follow-on reserves release into their own SPV when criteria hold") {
    DistributedScenarioConfig config = deterministic_config();
    config.rules[0].followon_reserve_fraction = 0.5;
    // Empty criteria hold as soon as the first yearly mark prints.
    DistributedTrialResult result = run_distributed_trial(config, 11, 0);

    // Base SPV per deal: 250,000 committed, net 235,000. Follow-on SPV:
    // 125,000 committed, fee 2,500, admin 10,000, net 112,500, bought at the
    // year-1 mark 2^(1/8) and exiting at 2x fair: proceeds 206,326.
    CHECK(result.deals_funded == 8);
    CHECK(result.committed == 1'500'000);
    CHECK(result.invested == 1'390'000);
    CHECK(result.admin == 80'000);
    CHECK(result.perf_fees == 30'000);
    CHECK(result.carry == 4 * (44'000 + 16'265));
    CHECK(result.distributed == 1'704'000 + 4 * 190'061);

    int followon_rows = 0;
    for (const auto& row : result.ledger) {
        if (row.deal_id.ends_with("-fo") && row.flow_type == "investment") {
            ++followon_rows;
            CHECK(row.amount == 112'500);
        }
    }
    CHECK(followon_rows == 4);

    const InvestorAccount& book = result.accounts.at("lp-a");
    CHECK(book.reserved == 0);
    CHECK(book.deployed == 0);
    CHECK(book.available == book.base);
}

TEST_CASE("reserves whose criteria never hold return at scenario end") {
    DistributedScenarioConfig config = deterministic_config();
    config.rules[0].followon_reserve_fraction = 0.4;
    config.rules[0].followon_criteria.min_round_size = 1'000'000'000'000'000;
    DistributedTrialResult result = run_distributed_trial(config, 11, 0);

    CHECK(result.deals_funded == 4);
    CHECK(result.committed == 1'000'000);
    for (const auto& row : result.ledger) {
        CHECK(!row.deal_id.ends_with("-fo"));
    }
    const InvestorAccount& book = result.accounts.at("lp-a");
    CHECK(book.reserved == 0);
    CHECK(book.deployed == 0);
    CHECK(book.available == book.base);
    CHECK(book.base == 10'000'000 + (result.distributed - result.committed));
}

TEST_CASE("deals nobody matches are rejected") {
    DistributedScenarioConfig config = deterministic_config();
    config.rules[0].sectors = {"fintech"};
    DistributedTrialResult result = run_distributed_trial(config, 11, 0);

    CHECK(result.deals_funded == 0);
    CHECK(result.deals_rejected == 4);
    CHECK(result.committed == 0);
    CHECK(result.lp_dpi == 0.0);
    CHECK(result.ledger.empty());
    const InvestorAccount& book = result.accounts.at("lp-a");
    CHECK(book.available == 10'000'000);
    CHECK(book.base == 10'000'000);
}

TEST_CASE("company outcomes pair with the committed-fund run") {
    DistributedScenarioConfig config;
    config.roster = single_member_roster();
    config.rules = {base_rule()};
    config.rules[0].sectors = {};  // any sector
    config.rules[0].min_round_size = 0;
    config.rules[0].max_valuation_cap = 1'000'000'000'000;
    config.owner_capital = {{"lp-a", 100'000'000}};
    config.deals_per_trial = 30;
    config.deployment_years = 4;

    FundParams params;
    params.fund_size = 1'000'000'000;
    params.lifespan_years = 10;
    DeploymentSchedule schedule;
    schedule.companies_per_fund = 30;

    for (int trial : {0, 3}) {
        DistributedTrialResult firm =
            run_distributed_trial(config, 2026, trial);
        FundRunResult fund = run_fund(params, schedule, config.outcome_model,
                                      {2026, static_cast<std::uint64_t>(trial)},
                                      RunFundOptions{.timeline_irr = false});
        REQUIRE(firm.outcomes.size() == fund.outcomes.size());
        for (std::size_t i = 0; i < firm.outcomes.size(); ++i) {
            CHECK(firm.outcomes[i].terminal_multiple == fund.outcomes[i].terminal_multiple);
            CHECK(firm.outcomes[i].liquidity_year == fund.outcomes[i].liquidity_year);
            CHECK(firm.outcomes[i].paper_marks == fund.outcomes[i].paper_marks);
        }
    }
}

TEST_CASE("trials replay bit-identically") {
    DistributedScenarioConfig config = deterministic_config();
    config.outcome_model = OutcomeModel{};  // stochastic defaults
    config.rules[0].sectors = {};
    config.rules[0].min_round_size = 0;
    config.rules[0].max_valuation_cap = 1'000'000'000'000;
    config.round_size_min = 2'000'000;
    config.round_size_max = 12'000'000;
    config.cap_multiple_min = 3.0;
    config.cap_multiple_max = 6.0;
    config.deals_per_trial = 25;
    config.deployment_years = 3;
    config.rules[0].followon_reserve_fraction = 0.4;

    DistributedTrialResult a = run_distributed_trial(config, 99, 2);
    DistributedTrialResult b = run_distributed_trial(config, 99, 2);
    CHECK(a.ledger == b.ledger);
    CHECK(a.committed == b.committed);
    CHECK(a.distributed == b.distributed);
    CHECK(a.carry == b.carry);
    CHECK(a.member_take == b.member_take);

    DistributedTrialResult c = run_distributed_trial(config, 99, 3);
    CHECK(a.ledger != c.ledger);
}

TEST_CASE("owner books balance under stochastic load") {
    DistributedScenarioConfig config;
    config.roster = single_member_roster();
    AutomationRule a = base_rule();
    a.sectors = {};
    a.min_round_size = 0;
    a.max_valuation_cap = 1'000'000'000'000;
    a.followon_reserve_fraction = 0.4;
    AutomationRule b = a;
    b.id = "r-second";
    b.owner = "lp-b";
    b.check_min = 150'000;
    b.check_max = 400'000;
    b.created_at = 2;
    b.followon_criteria.min_round_size = 8'000'000;
    config.rules = {a, b};
    config.owner_capital = {{"lp-a", 3'000'000}, {"lp-b", 5'000'000}};
    config.deals_per_trial = 40;
    config.deployment_years = 4;

    for (int trial = 0; trial < 6; ++trial) {
        DistributedTrialResult result = run_distributed_trial(config, 7, trial);
        // run() throws std::logic_error if any book fails to balance; check the
        // realized P&L identity on top.
        for (const auto& [owner, book] : result.accounts) {
            CHECK(book.available + book.reserved + book.deployed == book.base);
            CHECK(book.reserved == 0);
            CHECK(book.deployed == 0);
        }
        Money base_total = 0;
        for (const auto& [owner, book] : result.accounts) base_total += book.base;
        CHECK(base_total == 8'000'000 + result.distributed - result.committed);

        CHECK(ledger_sum(result, "commitment") == result.committed);
        CHECK(ledger_sum(result, "distribution") == result.distributed);
        CHECK(ledger_sum(result, "carry") == result.carry);
        CHECK(ledger_sum(result, "performance_fee") == result.perf_fees);
    }
}

TEST_CASE("paired comparison requires matching seed and model") {
    DistributedScenarioConfig config = deterministic_config();
    DistributedTrialResult firm = run_distributed_trial(config, 11, 0);

    FundParams params;
    params.fund_size = 1'000'000'000;
    params.lifespan_years = 10;
    DeploymentSchedule schedule;
    FundRunResult fund = run_fund(params, schedule, config.outcome_model, {11, 0},
                                  RunFundOptions{.timeline_irr = false});

    std::vector<FundRunResult> standard;
    standard.push_back(std::move(fund));
    std::vector<DistributedTrialResult> firm_results;
    firm_results.push_back(std::move(firm));

    auto rows = compare_models(standard, firm_results, config.outcome_model,
                               config.outcome_model, 11, 11);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].trial == 0);
    CHECK(rows[0].fees_standard == standard[0].fees_total);
    CHECK(rows[0].carry_standard == standard[0].carry_total);
    CHECK(rows[0].gp_take_standard == standard[0].fees_total + standard[0].carry_total);
    CHECK(rows[0].fees_distributed == 20'000);
    CHECK(rows[0].admin_distributed == 40'000);
    CHECK(rows[0].pod_take_distributed == 20'000 + 176'000);
    CHECK(rows[0].lp_dpi_distributed == doctest::Approx(1.704).epsilon(1e-12));

    CHECK_THROWS_AS(compare_models(standard, firm_results, config.outcome_model,
                                   config.outcome_model, 11, 12),
                    std::invalid_argument);
    OutcomeModel other = config.outcome_model;
    other.markup_inflation = 0.48;
    CHECK_THROWS_AS(compare_models(standard, firm_results, config.outcome_model, other, 11, 11),
                    std::invalid_argument);
    firm_results.push_back(run_distributed_trial(config, 11, 1));
    CHECK_THROWS_AS(compare_models(standard, firm_results, config.outcome_model,
                                   config.outcome_model, 11, 11),
                    std::invalid_argument);
}

TEST_CASE("scenario configs validate") {
    DistributedScenarioConfig config = deterministic_config();
    CHECK_NOTHROW(config.validate());

    DistributedScenarioConfig bad = config;
    bad.owner_capital.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = config;
    bad.rules.push_back(base_rule());  // duplicate id
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = config;
    bad.deals_per_trial = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = config;
    bad.sectors.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = config;
    bad.round_size_max = bad.round_size_min - 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = config;
    bad.cap_multiple_min = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    CHECK_THROWS_AS(run_distributed_trial(config, 11, -1), std::invalid_argument);
}
