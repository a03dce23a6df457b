#include "fundsim/standard_fund.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace fundsim {

const char* to_string(CheckPolicy policy) {
    switch (policy) {
        case CheckPolicy::equal_weight: return "equal_weight";
        case CheckPolicy::weighted: return "weighted";
    }
    return "unknown";
}

void DeploymentSchedule::validate(int lifespan_years) const {
    if (deployment_years < 3 || deployment_years > 5) {
        throw std::invalid_argument("DeploymentSchedule: deployment_years must be 3..5");
    }
    if (deployment_years > lifespan_years) {
        throw std::invalid_argument("DeploymentSchedule: deployment window exceeds fund lifespan");
    }
    if (!std::isfinite(initial_fraction) || initial_fraction < 0.0 || initial_fraction > 1.0) {
        throw std::invalid_argument("DeploymentSchedule: initial_fraction must be in [0, 1]");
    }
    if (companies_per_fund <= 0) {
        throw std::invalid_argument("DeploymentSchedule: companies_per_fund must be > 0");
    }
    if (check_policy == CheckPolicy::weighted) {
        if (check_weights.size() != static_cast<std::size_t>(companies_per_fund)) {
            throw std::invalid_argument("DeploymentSchedule: weighted policy needs one weight per company");
        }
        double sum = 0.0;
        for (double w : check_weights) {
            if (!std::isfinite(w) || w < 0.0) {
                throw std::invalid_argument("DeploymentSchedule: check weights must be finite and >= 0");
            }
            sum += w;
        }
        if (sum <= 0.0) throw std::invalid_argument("DeploymentSchedule: check weights sum to zero");
    } else if (!check_weights.empty()) {
        throw std::invalid_argument("DeploymentSchedule: check_weights set but policy is equal_weight");
    }
}

namespace {

struct PlannedPosition {
    int company = 0;
    int entry_year = 0;
    int exit_year = 0;  // entry + ceil(years to liquidity); proceeds land here
    Money check = 0;
    Money followon = 0;
    double followon_basis = 1.0;  // paper multiple the follow-on was bought at
    const CompanyOutcome* outcome = nullptr;
};

// Reported valuation multiple at end of year `y` relative to the first check.
// The entry mark is 1; marks_[a-1] covers age a. Only queried while the
// position is live or exiting, so the index stays in range.
double mark_at(const PlannedPosition& p, int y) {
    if (y <= p.entry_year) return 1.0;
    std::size_t idx = static_cast<std::size_t>(y - p.entry_year - 1);
    return p.outcome->paper_marks[idx];
}

Money paper_at(const PlannedPosition& p, int y, int followon_year) {
    double m = mark_at(p, y);
    Money value = round_half_even(static_cast<double>(p.check) * m);
    if (p.followon > 0 && y >= followon_year) {
        // The follow-on tranche grows from the paper price it was bought at.
        value += round_half_even(static_cast<double>(p.followon) * m / p.followon_basis);
    }
    return value;
}

// Fair value of a live position. At entry the check itself is the fair price;
// from the first mark on, reported values carry the markup and are discounted.
Money fair_at(const PlannedPosition& p, int y, int followon_year, double markup) {
    if (y <= p.entry_year) return p.check;
    return fair_value_adjust(paper_at(p, y, followon_year), markup);
}

}  // namespace

FundRunResult run_fund(const FundParams& params, const DeploymentSchedule& schedule,
                       const OutcomeModel& model, const SeedSpec& seed,
                       const RunFundOptions& options) {
    params.validate();
    schedule.validate(params.lifespan_years);
    model.validate();

    const int lifespan = params.lifespan_years;
    const int window = schedule.deployment_years;  // follow-on lands this year
    const int n = schedule.companies_per_fund;
    const double fund = static_cast<double>(params.fund_size);

    // Fee plan: cumulative rounding makes the per-year fees telescope to the
    // lifetime total exactly.
    std::vector<Money> fee_by_year(static_cast<std::size_t>(lifespan), 0);
    Money fees_total = 0;
    for (int y = 0; y < lifespan; ++y) {
        Money cum = round_half_even(fund * params.mgmt_fee_rate * (y + 1));
        fee_by_year[static_cast<std::size_t>(y)] = cum - fees_total;
        fees_total = cum;
    }

    const Money investable = params.fund_size - fees_total;
    const double split[2] = {schedule.initial_fraction, schedule.followon_reserve()};
    auto pools = allocate_proportional(investable, std::span<const double>(split, 2));
    const Money initial_pool = pools[0];
    const Money reserve_pool = pools[1];

    std::vector<Money> checks;
    if (schedule.check_policy == CheckPolicy::equal_weight) {
        std::vector<Money> ones(static_cast<std::size_t>(n), 1);
        checks = allocate_proportional(initial_pool, ones);
    } else {
        checks = allocate_proportional(initial_pool, schedule.check_weights);
    }

    FundRunResult out;
    out.outcomes.reserve(static_cast<std::size_t>(n));
    std::vector<PlannedPosition> plan(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.outcomes.push_back(sample_outcome(
            model, {seed.master_seed,
                    substream(seed.stream_id, static_cast<std::uint64_t>(i))}));
    }
    for (int i = 0; i < n; ++i) {
        auto& p = plan[static_cast<std::size_t>(i)];
        p.company = i;
        p.entry_year = static_cast<int>((static_cast<std::int64_t>(i) * window) / n);
        // ^ spreads companies evenly over the deployment window
        p.check = checks[static_cast<std::size_t>(i)];
        p.outcome = &out.outcomes[static_cast<std::size_t>(i)];
        p.exit_year = p.entry_year + static_cast<int>(p.outcome->paper_marks.size());
    }

    // Follow-on round: reserve goes pro-rata by paper value into positions
    // still live past the window and marked above cost.
    Money followon_deployed = 0;
    if (reserve_pool > 0) {
        std::vector<std::size_t> qual;
        std::vector<Money> weights;
        for (std::size_t k = 0; k < plan.size(); ++k) {
            const auto& p = plan[k];
            if (p.exit_year <= window) continue;
            Money paper = paper_at(p, window, window);
            if (paper > p.check) {
                qual.push_back(k);
                weights.push_back(paper);
            }
        }
        if (!qual.empty()) {
            auto slices = allocate_proportional(reserve_pool, std::span<const Money>(weights));
            for (std::size_t j = 0; j < qual.size(); ++j) {
                auto& p = plan[qual[j]];
                p.followon = slices[j];
                p.followon_basis = mark_at(p, window);
            }
            followon_deployed = reserve_pool;
        }
    }

    // Total paid-in over the fund's life is fixed once the plan is known; the
    // carry schedule keys off it so per-exit withholdings telescope exactly.
    const Money paid_in_final = fees_total + initial_pool + followon_deployed;
    const double carry_share = params.carry_rate * (1.0 - params.gp_commit_rate);

    int horizon = lifespan;
    for (const auto& p : plan) horizon = std::max(horizon, p.exit_year);

    CashFlowSeries flows;
    NavSeries nav_fair;
    NavSeries nav_paper;
    FundTimeline timeline;
    timeline.deployment_end_year = window;

    Money paid_cum = 0, invested_cum = 0, fee_cum = 0, dist_cum = 0;
    Money gross_cum = 0, carry_cum = 0;

    for (int y = 0; y <= horizon; ++y) {
        Money invest_y = 0;
        for (const auto& p : plan) {
            if (p.entry_year == y) invest_y += p.check;
        }
        if (y == window) invest_y += followon_deployed;
        const Money fee_y = y < lifespan ? fee_by_year[static_cast<std::size_t>(y)] : 0;
        const Money call_y = invest_y + fee_y;
        if (call_y > 0) {
            flows.add_call(static_cast<double>(y), call_y);
            paid_cum += call_y;
        }
        invested_cum += invest_y;
        fee_cum += fee_y;

        Money gross_y = 0;
        for (const auto& p : plan) {
            if (p.exit_year == y) {
                gross_y += fair_at(p, y, window, model.markup_inflation);
            }
        }
        gross_cum += gross_y;
        const Money profit = gross_cum > paid_in_final ? gross_cum - paid_in_final : 0;
        const Money carry_target = round_half_even(carry_share * static_cast<double>(profit));
        const Money carry_delta = carry_target - carry_cum;
        if (carry_delta < 0 || carry_delta > gross_y) {
            throw std::logic_error("run_fund: carry schedule left its bounds");
        }
        carry_cum = carry_target;
        const Money dist_y = gross_y - carry_delta;
        if (dist_y > 0) {
            flows.add_distribution(static_cast<double>(y), dist_y);
            dist_cum += dist_y;
        }

        Money nf = 0, np = 0;
        for (const auto& p : plan) {
            if (p.entry_year <= y && p.exit_year > y) {
                np += paper_at(p, y, window);
                nf += fair_at(p, y, window, model.markup_inflation);
            }
        }
        nav_fair.add({static_cast<double>(y), nf});
        nav_paper.add({static_cast<double>(y), np});

        TimelinePoint tp;
        tp.year = y;
        tp.paid_in = paid_cum;
        tp.invested = invested_cum;
        tp.fees = fee_cum;
        tp.nav_fair = nf;
        tp.nav_paper = np;
        tp.distributed = dist_cum;
        if (paid_cum > 0) {
            // The series holds only events up to the current year here.
            KpiReport fair_report = multiples(flows, nf, static_cast<double>(y));
            tp.dpi = fair_report.dpi;
            tp.tvpi_fair = fair_report.tvpi;
            tp.tvpi_paper = multiples(flows, np, static_cast<double>(y)).tvpi;
            if (options.timeline_irr) {
                CashFlowSeries sub = flows;
                if (nf > 0) sub.add_distribution(static_cast<double>(y), nf);
                IrrResult ir = irr(sub, std::nullopt);
                tp.irr = ir.rate;
                tp.irr_ambiguous = ir.ambiguous;
            }
        }
        timeline.points.push_back(tp);
    }

    if (paid_cum != invested_cum + fee_cum) {
        throw std::logic_error("run_fund: cash conservation violated");
    }

    out.realized_gp.model = UtilityModel::expanded;
    out.realized_gp.fee_utility = static_cast<double>(fees_total) / fund;
    out.realized_gp.carry_utility = static_cast<double>(carry_cum) / fund;
    out.realized_gp.commit_pnl =
        params.gp_commit_rate * static_cast<double>(gross_cum - invested_cum) / fund;
    out.realized_gp.total = out.realized_gp.fee_utility + out.realized_gp.carry_utility +
                            out.realized_gp.commit_pnl;

    out.paid_in_total = paid_cum;
    out.invested_total = invested_cum;
    out.fees_total = fee_cum;
    out.gross_proceeds = gross_cum;
    out.carry_total = carry_cum;
    out.distributed_total = dist_cum;

    out.final_state.dry_powder = 0;
    out.final_state.fee_ledger = fee_cum;
    out.final_state.cash_flows = flows;
    out.final_state.nav = nav_fair;
    out.final_state.year = horizon;

    out.investor_flows = std::move(flows);
    out.nav_fair = std::move(nav_fair);
    out.nav_paper = std::move(nav_paper);
    out.timeline = std::move(timeline);
    return out;
}

SuccessorDecision successor_decision(const FundTimeline& timeline, double threshold) {
    if (timeline.points.empty()) {
        throw std::invalid_argument("successor_decision: empty timeline");
    }
    if (!std::isfinite(threshold) || threshold < 0.0) {
        throw std::invalid_argument("successor_decision: bad threshold");
    }
    // Last point at or before the end of the deployment window.
    const TimelinePoint* basis = nullptr;
    for (const auto& p : timeline.points) {
        if (p.year <= timeline.deployment_end_year &&
            (!basis || p.year > basis->year)) {
            basis = &p;
        }
    }
    if (!basis) {
        throw std::invalid_argument("successor_decision: no point at or before deployment end");
    }
    SuccessorDecision d;
    d.basis_tvpi = basis->tvpi_paper;
    d.threshold = threshold;
    d.raise_next = basis->tvpi_paper >= threshold;
    return d;
}

}  // namespace fundsim
