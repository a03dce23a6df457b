#pragma once

#include <optional>
#include <vector>

#include "fundsim/money.hpp"

namespace fundsim {

enum class FlowKind { capital_call, distribution };

/// One dated cash flow from the investor's point of view: capital calls are
/// negative amounts, distributions positive. Zero amounts are rejected.
struct CashFlowEvent {
    double time = 0.0;  // years from fund start, >= 0
    Money amount = 0;
    FlowKind kind = FlowKind::capital_call;
};

/// Events kept sorted by time; insertion order is preserved among equal times.
class CashFlowSeries {
  public:
    CashFlowSeries() = default;
    static CashFlowSeries from_events(std::vector<CashFlowEvent> events);

    /// Validates the event and inserts it keeping the sort stable.
    void add(CashFlowEvent event);
    void add_call(double time, Money paid_in);        // paid_in > 0, stored negative
    void add_distribution(double time, Money amount); // amount > 0

    const std::vector<CashFlowEvent>& events() const { return events_; }
    bool empty() const { return events_.empty(); }

    /// Enforces "at least one capital call before any distribution".
    void require_call_first() const;

  private:
    std::vector<CashFlowEvent> events_;
};

struct NavMark {
    double time = 0.0;
    Money value = 0;  // >= 0
};

class NavSeries {
  public:
    void add(NavMark mark);
    const std::vector<NavMark>& marks() const { return marks_; }
    /// Latest mark at or before `time`, if any.
    std::optional<Money> value_at(double time) const;

  private:
    std::vector<NavMark> marks_;
};

struct IrrResult {
    std::optional<double> rate;  // unset when NPV never changes sign in-domain
    bool ambiguous = false;      // multiple sign changes; rate is the smallest root
};

struct KpiReport {
    IrrResult irr;
    double dpi = 0.0;
    double rvpi = 0.0;
    double tvpi = 0.0;  // always dpi + rvpi, same expression, so the identity is exact
    std::optional<double> tvpi_dpi_ratio;  // unset while dpi == 0
    double as_of = 0.0;
};

/// Annual-compounding IRR: the r in (-0.9999, 10] with sum(amount_i * (1+r)^-t_i)
/// ~ 0, found by scanning a 1e-3-spaced grid for sign changes and bisecting the
/// leftmost bracket until |NPV| <= 1e-9 * sum(|amount_i|). More than one sign
/// change sets `ambiguous`; none leaves `rate` unset (distinct from errors,
/// which throw). `terminal_nav`, if given and positive, is appended as a
/// distribution at the final event time.
IrrResult irr(const CashFlowSeries& series, std::optional<Money> terminal_nav = {});

/// Point-in-time multiples over flows with time <= as_of. `nav_at` is the
/// unrealized value at as_of (absent means zero). Throws if nothing has been
/// paid in by as_of.
KpiReport multiples(const CashFlowSeries& series, std::optional<Money> nav_at, double as_of);

/// Reported (paper) valuation deflated to fair value: paper / (1 + inflation),
/// rounded half-to-even to minor units. The default inflation is the observed
/// average gap between reported post-money marks and fair value.
Money fair_value_adjust(Money paper_valuation, double inflation_rate = 0.48);

/// Inverse direction: fair value re-inflated to a reported mark.
Money apply_markup(Money fair_value, double inflation_rate);

/// One row of the standard KPI timeline serialization.
struct KpiTimelinePoint {
    double as_of_years = 0.0;
    Money paid_in = 0;
    Money distributed = 0;
    Money nav = 0;
    IrrResult irr;
    double dpi = 0.0;
    double tvpi = 0.0;
    double rvpi = 0.0;
    std::optional<double> tvpi_dpi_ratio;
};

}  // namespace fundsim
