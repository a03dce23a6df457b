#include "fundsim/economics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fundsim {

const char* to_string(UtilityModel model) {
    return model == UtilityModel::simple ? "simple" : "expanded";
}

void FundParams::validate() const {
    if (fund_size <= 0) throw std::invalid_argument("FundParams: fund_size must be > 0");
    if (lifespan_years <= 0) throw std::invalid_argument("FundParams: lifespan_years must be > 0");
    auto rate_ok = [](double r) { return std::isfinite(r) && r >= 0.0 && r <= 1.0; };
    if (!rate_ok(mgmt_fee_rate)) throw std::invalid_argument("FundParams: mgmt_fee_rate outside [0,1]");
    if (!rate_ok(gp_commit_rate)) throw std::invalid_argument("FundParams: gp_commit_rate outside [0,1]");
    if (!rate_ok(carry_rate)) throw std::invalid_argument("FundParams: carry_rate outside [0,1]");
    if (mgmt_fee_rate * lifespan_years > 1.0) {
        throw std::invalid_argument("FundParams: lifetime fees exceed the fund");
    }
}

namespace {

void check_multiple(double m) {
    if (!std::isfinite(m) || m < 0.0) {
        throw std::invalid_argument("multiple must be finite and >= 0");
    }
}

}  // namespace

double management_fee_utility(const FundParams& params) {
    params.validate();
    double pl = params.mgmt_fee_rate * params.lifespan_years;
    return static_cast<double>(params.fund_size) * pl;
}

double carry_utility_simple(const FundParams& params, double multiple) {
    params.validate();
    check_multiple(multiple);
    double fees = management_fee_utility(params);
    double base = static_cast<double>(params.fund_size) - fees;
    return (base * multiple - base) * params.carry_rate;
}

UtilityBreakdown gp_utility_simple(const FundParams& params, double multiple) {
    UtilityBreakdown out;
    out.model = UtilityModel::simple;
    out.fee_utility = management_fee_utility(params);
    out.carry_utility = carry_utility_simple(params, multiple);
    out.commit_pnl = 0.0;
    out.total = out.fee_utility + out.carry_utility + out.commit_pnl;
    return out;
}

UtilityBreakdown gp_utility_expanded(const FundParams& params, double multiple,
                                     bool clamp_carry_at_zero) {
    params.validate();
    check_multiple(multiple);
    double f = static_cast<double>(params.fund_size);
    double pl = params.mgmt_fee_rate * params.lifespan_years;
    double invested = f * (1.0 - pl);           // capital at work, net of lifetime fees
    double profit = invested * multiple - f;    // gain over committed capital
    UtilityBreakdown out;
    out.model = UtilityModel::expanded;
    out.fee_utility = f * pl;
    out.commit_pnl = params.gp_commit_rate * profit;
    out.carry_utility = params.carry_rate * (1.0 - params.gp_commit_rate) * profit;
    if (clamp_carry_at_zero) out.carry_utility = std::max(0.0, out.carry_utility);
    out.total = out.fee_utility + out.carry_utility + out.commit_pnl;
    return out;
}

double expanded_utility_polynomial(const FundParams& params, double multiple) {
    params.validate();
    check_multiple(multiple);
    double f = static_cast<double>(params.fund_size);
    double m = multiple;
    double p = params.mgmt_fee_rate;
    double l = static_cast<double>(params.lifespan_years);
    double g = params.gp_commit_rate;
    double c = params.carry_rate;
    double pl = p * l;
    // Flat term-by-term sum; deliberately not the grouped form so the two
    // routes check each other.
    double s = m * g - m * g * pl + pl - g + m * c - m * c * g - m * pl * c +
               m * pl * c * g - c + c * g;
    return f * s;
}

double model_discrepancy(const FundParams& params, double multiple) {
    return gp_utility_simple(params, multiple).total -
           gp_utility_expanded(params, multiple).total;
}

double fee_incentive_threshold(const FundParams& params) {
    params.validate();
    double g = params.gp_commit_rate;
    double c = params.carry_rate;
    double denom = g + c * (1.0 - g);
    if (denom <= 0.0) {
        throw std::domain_error("fee_incentive_threshold: undefined when carry and commit are both zero");
    }
    return 1.0 / denom;
}

FundParams ParamOverride::apply(FundParams base) const {
    if (fund_size) base.fund_size = *fund_size;
    if (lifespan_years) base.lifespan_years = *lifespan_years;
    if (mgmt_fee_rate) base.mgmt_fee_rate = *mgmt_fee_rate;
    if (gp_commit_rate) base.gp_commit_rate = *gp_commit_rate;
    if (carry_rate) base.carry_rate = *carry_rate;
    base.validate();
    return base;
}

std::vector<SweepRow> utility_sweep(const FundParams& base,
                                    std::span<const ParamOverride> variants,
                                    std::span<const double> multiple_grid,
                                    UtilityModel model) {
    base.validate();
    if (multiple_grid.empty()) {
        throw std::invalid_argument("utility_sweep: empty multiple grid");
    }
    for (double m : multiple_grid) check_multiple(m);

    std::vector<std::pair<std::string, FundParams>> cases;
    cases.emplace_back("baseline", base);
    for (const ParamOverride& v : variants) {
        cases.emplace_back(v.id, v.apply(base));
    }

    std::vector<SweepRow> rows;
    rows.reserve(cases.size() * multiple_grid.size());
    for (const auto& [id, params] : cases) {
        for (double m : multiple_grid) {
            UtilityBreakdown u = model == UtilityModel::simple
                                     ? gp_utility_simple(params, m)
                                     : gp_utility_expanded(params, m);
            rows.push_back({id, m, u.total, u.fee_utility, u.carry_utility, u.commit_pnl, model});
        }
    }
    return rows;
}

}  // namespace fundsim
