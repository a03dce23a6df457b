#include "fundsim/market.hpp"

#include <cmath>
#include <stdexcept>

namespace fundsim {

void OutcomeModel::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(failure_hazard) || failure_hazard < 0.0 || failure_hazard > 1.0) {
        throw std::invalid_argument("OutcomeModel: failure_hazard outside [0,1]");
    }
    if (std::isnan(pareto_alpha) || pareto_alpha <= 1.0) {
        throw std::invalid_argument("OutcomeModel: pareto_alpha must be > 1");
    }
    if (!finite(pareto_xmin) || pareto_xmin <= 0.0) {
        throw std::invalid_argument("OutcomeModel: pareto_xmin must be > 0");
    }
    if (!finite(stepup_mu)) throw std::invalid_argument("OutcomeModel: stepup_mu must be finite");
    if (!finite(stepup_sigma) || stepup_sigma < 0.0) {
        throw std::invalid_argument("OutcomeModel: stepup_sigma must be >= 0");
    }
    if (!finite(years_to_liquidity_min) || years_to_liquidity_min <= 0.0) {
        throw std::invalid_argument("OutcomeModel: years_to_liquidity_min must be > 0");
    }
    if (!finite(years_to_liquidity_max) || years_to_liquidity_max < years_to_liquidity_min) {
        throw std::invalid_argument("OutcomeModel: liquidity range inverted");
    }
    if (!finite(markup_inflation) || markup_inflation <= -1.0) {
        throw std::invalid_argument("OutcomeModel: markup_inflation must be > -1");
    }
}

Rng derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return Rng(master_seed, stream_id);
}

CompanyOutcome sample_outcome(const OutcomeModel& model, const SeedSpec& seed) {
    model.validate();
    Rng rng = derive_stream(seed.master_seed, seed.stream_id);

    CompanyOutcome out;
    double liquidity = rng.uniform(model.years_to_liquidity_min, model.years_to_liquidity_max);
    int years = static_cast<int>(std::ceil(liquidity));

    int failure_year = 0;  // 0 = survives
    for (int y = 1; y <= years; ++y) {
        if (rng.bernoulli(model.failure_hazard)) {
            failure_year = y;
            break;
        }
    }

    double markup = 1.0 + model.markup_inflation;
    if (failure_year > 0) {
        out.terminal_multiple = 0.0;
        out.liquidity_year = static_cast<double>(failure_year);
        out.paper_marks.resize(static_cast<std::size_t>(failure_year), 0.0);
        double log_value = 0.0;
        for (int y = 1; y < failure_year; ++y) {
            log_value += model.stepup_mu + model.stepup_sigma * rng.normal();
            out.paper_marks[static_cast<std::size_t>(y) - 1] = std::exp(log_value) * markup;
        }
        // paper_marks[failure_year - 1] stays 0: the write-off.
        return out;
    }

    double terminal = rng.pareto(model.pareto_alpha, model.pareto_xmin);
    out.terminal_multiple = terminal;
    out.liquidity_year = liquidity;
    out.paper_marks.resize(static_cast<std::size_t>(years), 0.0);

    // Random walk in log space, then tilted so the path ends exactly at the
    // terminal fair value (a bridge: intermediate marks keep their dispersion).
    std::vector<double> walk(static_cast<std::size_t>(years), 0.0);
    double acc = 0.0;
    for (int y = 1; y <= years; ++y) {
        acc += model.stepup_mu + model.stepup_sigma * rng.normal();
        walk[static_cast<std::size_t>(y) - 1] = acc;
    }
    double log_terminal = std::log(terminal);
    double end_gap = log_terminal - walk.back();
    for (int y = 1; y <= years; ++y) {
        double log_fair = walk[static_cast<std::size_t>(y) - 1] +
                          end_gap * static_cast<double>(y) / static_cast<double>(years);
        out.paper_marks[static_cast<std::size_t>(y) - 1] = std::exp(log_fair) * markup;
    }
    return out;
}

}  // namespace fundsim
