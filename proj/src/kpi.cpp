#include "fundsim/kpi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fundsim {

namespace {

void check_event(const CashFlowEvent& e) {
    if (!std::isfinite(e.time) || e.time < 0.0) {
        throw std::invalid_argument("CashFlowEvent: time must be finite and >= 0");
    }
    if (e.kind == FlowKind::capital_call && e.amount >= 0) {
        throw std::invalid_argument("CashFlowEvent: capital calls are negative amounts");
    }
    if (e.kind == FlowKind::distribution && e.amount <= 0) {
        throw std::invalid_argument("CashFlowEvent: distributions are positive amounts");
    }
}

}  // namespace

CashFlowSeries CashFlowSeries::from_events(std::vector<CashFlowEvent> events) {
    for (const auto& e : events) check_event(e);
    std::stable_sort(events.begin(), events.end(),
                     [](const CashFlowEvent& a, const CashFlowEvent& b) { return a.time < b.time; });
    CashFlowSeries out;
    out.events_ = std::move(events);
    return out;
}

void CashFlowSeries::add(CashFlowEvent event) {
    check_event(event);
    // upper_bound keeps insertion order among equal times.
    auto it = std::upper_bound(events_.begin(), events_.end(), event.time,
                               [](double t, const CashFlowEvent& e) { return t < e.time; });
    events_.insert(it, event);
}

void CashFlowSeries::add_call(double time, Money paid_in) {
    if (paid_in <= 0) throw std::invalid_argument("add_call: paid_in must be > 0");
    add({time, -paid_in, FlowKind::capital_call});
}

void CashFlowSeries::add_distribution(double time, Money amount) {
    add({time, amount, FlowKind::distribution});
}

void CashFlowSeries::require_call_first() const {
    if (events_.empty()) return;
    for (const auto& e : events_) {
        if (e.kind == FlowKind::capital_call) return;          // earliest call found first
        if (e.kind == FlowKind::distribution) break;
    }
    throw std::invalid_argument("CashFlowSeries: a distribution precedes the first capital call");
}

void NavSeries::add(NavMark mark) {
    if (!std::isfinite(mark.time) || mark.time < 0.0) {
        throw std::invalid_argument("NavMark: bad time");
    }
    if (mark.value < 0) throw std::invalid_argument("NavMark: negative value");
    auto it = std::upper_bound(marks_.begin(), marks_.end(), mark.time,
                               [](double t, const NavMark& m) { return t < m.time; });
    marks_.insert(it, mark);
}

std::optional<Money> NavSeries::value_at(double time) const {
    std::optional<Money> latest;
    for (const auto& m : marks_) {
        if (m.time > time) break;
        latest = m.value;
    }
    return latest;
}

namespace {

// NPV evaluator with two shapes: a Horner pass over per-year coefficients when
// every flow lands on an integer year (the simulators emit annual flows), and
// the general exp-based form otherwise.
struct NpvEval {
    std::vector<double> coeffs;  // integer-time path, index = year
    std::vector<double> amounts; // general path
    std::vector<double> times;
    bool integer_times = false;

    explicit NpvEval(const std::vector<CashFlowEvent>& events) {
        integer_times = true;
        double max_t = 0.0;
        for (const auto& e : events) {
            if (e.time != std::floor(e.time) || e.time > 512.0) {
                integer_times = false;
                break;
            }
            max_t = std::max(max_t, e.time);
        }
        if (integer_times) {
            coeffs.assign(static_cast<std::size_t>(max_t) + 1, 0.0);
            for (const auto& e : events) {
                coeffs[static_cast<std::size_t>(e.time)] += static_cast<double>(e.amount);
            }
        } else {
            amounts.reserve(events.size());
            times.reserve(events.size());
            for (const auto& e : events) {
                amounts.push_back(static_cast<double>(e.amount));
                times.push_back(e.time);
            }
        }
    }

    double operator()(double rate) const {
        if (integer_times) {
            // NPV = sum coeffs[t] * x^t with x = 1/(1+r), evaluated by Horner.
            double x = 1.0 / (1.0 + rate);
            double acc = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) {
                acc = acc * x + coeffs[i];
            }
            return acc;
        }
        double log_df = std::log1p(rate);
        double acc = 0.0;
        for (std::size_t i = 0; i < amounts.size(); ++i) {
            acc += amounts[i] * std::exp(-times[i] * log_df);
        }
        return acc;
    }
};

constexpr double kIrrLow = -0.9999;
constexpr double kIrrHigh = 10.0;
constexpr double kIrrStep = 1e-3;

}  // namespace

IrrResult irr(const CashFlowSeries& series, std::optional<Money> terminal_nav) {
    if (series.empty()) throw std::invalid_argument("irr: empty series");
    series.require_call_first();
    if (terminal_nav && *terminal_nav < 0) {
        throw std::invalid_argument("irr: negative terminal nav");
    }

    std::vector<CashFlowEvent> events = series.events();
    double scale = 0.0;
    for (const auto& e : events) scale += std::abs(static_cast<double>(e.amount));
    if (terminal_nav && *terminal_nav > 0) {
        events.push_back({events.back().time, *terminal_nav, FlowKind::distribution});
        scale += static_cast<double>(*terminal_nav);
    }
    const double tol = 1e-9 * scale;

    NpvEval npv(events);

    // Scan the fixed grid; remember every bracket and the leftmost near-zero node.
    IrrResult out;
    int crossings = 0;
    double bracket_lo = 0.0, bracket_hi = 0.0, f_lo = 0.0, f_hi = 0.0;
    bool have_bracket = false;
    std::optional<double> node_root;

    double prev_r = kIrrLow;
    double prev_f = npv(prev_r);
    if (std::abs(prev_f) <= tol) node_root = prev_r;
    for (std::size_t k = 1;; ++k) {
        double r = kIrrLow + static_cast<double>(k) * kIrrStep;
        if (r > kIrrHigh) r = kIrrHigh;
        double f = npv(r);
        if (std::abs(f) <= tol && !node_root) node_root = r;
        if ((prev_f < 0.0 && f > 0.0) || (prev_f > 0.0 && f < 0.0)) {
            ++crossings;
            if (!have_bracket) {
                bracket_lo = prev_r;
                bracket_hi = r;
                f_lo = prev_f;
                f_hi = f;
                have_bracket = true;
            }
        }
        prev_r = r;
        prev_f = f;
        if (r >= kIrrHigh) break;
    }

    out.ambiguous = crossings > 1;
    if (!have_bracket) {
        if (node_root) out.rate = *node_root;  // grid landed on the root itself
        return out;
    }
    if (node_root && *node_root <= bracket_lo) {
        out.rate = *node_root;
        return out;
    }

    // Bisect the leftmost bracket. Run the interval down to ~1e-13 width rather
    // than stopping at the residual tolerance: near-flat NPV curves (e.g. a
    // breakeven ledger) meet the residual bound while the rate is still loose.
    double lo = bracket_lo, hi = bracket_hi;
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        double fm = npv(mid);
        if (fm == 0.0) break;
        if ((f_lo < 0.0) == (fm < 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
        if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    out.rate = mid;
    return out;
}

KpiReport multiples(const CashFlowSeries& series, std::optional<Money> nav_at, double as_of) {
    if (!std::isfinite(as_of) || as_of < 0.0) throw std::invalid_argument("multiples: bad as_of");
    if (nav_at && *nav_at < 0) throw std::invalid_argument("multiples: negative nav");
    series.require_call_first();
    Money paid_in = 0;
    Money distributed = 0;
    for (const auto& e : series.events()) {
        if (e.time > as_of) break;
        if (e.kind == FlowKind::capital_call) paid_in -= e.amount;
        else distributed += e.amount;
    }
    if (paid_in <= 0) throw std::invalid_argument("multiples: nothing paid in by as_of");

    KpiReport out;
    out.as_of = as_of;
    // Single divisions of the integer totals keep the multiples exactly scale
    // invariant and make tvpi = dpi + rvpi an identity of doubles.
    out.dpi = static_cast<double>(distributed) / static_cast<double>(paid_in);
    out.rvpi = nav_at ? static_cast<double>(*nav_at) / static_cast<double>(paid_in) : 0.0;
    out.tvpi = out.dpi + out.rvpi;
    if (out.dpi > 0.0) out.tvpi_dpi_ratio = out.tvpi / out.dpi;
    return out;
}

Money fair_value_adjust(Money paper_valuation, double inflation_rate) {
    if (paper_valuation < 0) throw std::invalid_argument("fair_value_adjust: negative valuation");
    if (!std::isfinite(inflation_rate) || inflation_rate <= -1.0) {
        throw std::invalid_argument("fair_value_adjust: inflation_rate must be > -1");
    }
    return round_half_even(static_cast<double>(paper_valuation) / (1.0 + inflation_rate));
}

Money apply_markup(Money fair_value, double inflation_rate) {
    if (fair_value < 0) throw std::invalid_argument("apply_markup: negative value");
    if (!std::isfinite(inflation_rate) || inflation_rate <= -1.0) {
        throw std::invalid_argument("apply_markup: inflation_rate must be > -1");
    }
    return round_half_even(static_cast<double>(fair_value) * (1.0 + inflation_rate));
}

}  // namespace fundsim
