#include "fundsim/csv.hpp"

#include <cinttypes>
#include <cstdio>

namespace fundsim {

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

std::string format_money(Money value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%" PRId64, value);
    return buffer;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

namespace {

// Joins pre-rendered fields into one line. Numeric fields never need escaping;
// string fields arrive already escaped.
void append_line(std::string& out, std::initializer_list<std::string> fields) {
    bool first = true;
    for (const auto& field : fields) {
        if (!first) out += ',';
        out += field;
        first = false;
    }
    out += '\n';
}

}  // namespace

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "variant_id,m,total,fee_utility,carry_utility,commit_pnl,model_tag\n";
    for (const auto& row : rows) {
        append_line(out, {csv_escape(row.variant_id), format_number(row.multiple),
                          format_number(row.total), format_number(row.fee_utility),
                          format_number(row.carry_utility), format_number(row.commit_pnl),
                          std::string(to_string(row.model))});
    }
    return out;
}

std::string kpi_timeline_csv(std::span<const KpiTimelinePoint> points) {
    std::string out =
        "as_of_years,paid_in,distributed,nav,irr,dpi,tvpi,rvpi,tvpi_dpi_ratio,irr_ambiguous\n";
    for (const auto& p : points) {
        append_line(out, {format_number(p.as_of_years), format_money(p.paid_in),
                          format_money(p.distributed), format_money(p.nav),
                          p.irr.rate ? format_number(*p.irr.rate) : std::string(),
                          format_number(p.dpi), format_number(p.tvpi), format_number(p.rvpi),
                          p.tvpi_dpi_ratio ? format_number(*p.tvpi_dpi_ratio) : std::string(),
                          p.irr.ambiguous ? "1" : "0"});
    }
    return out;
}

std::string standard_sim_csv(std::span<const StandardSimRow> rows) {
    std::string out =
        "trial,year,paid_in,invested,fees,nav_fair,nav_paper,distributed,dpi,tvpi_fair,"
        "tvpi_paper,irr\n";
    for (const auto& row : rows) {
        const TimelinePoint& p = row.point;
        append_line(out, {format_number(row.trial), format_number(p.year),
                          format_money(p.paid_in), format_money(p.invested),
                          format_money(p.fees), format_money(p.nav_fair),
                          format_money(p.nav_paper), format_money(p.distributed),
                          format_number(p.dpi), format_number(p.tvpi_fair),
                          format_number(p.tvpi_paper),
                          p.irr ? format_number(*p.irr) : std::string()});
    }
    return out;
}

std::string deal_ledger_csv(std::span<const DealLedgerRow> rows) {
    std::string out = "deal_id,state,member,role,flow_type,amount,time\n";
    for (const auto& row : rows) {
        append_line(out, {csv_escape(row.deal_id), csv_escape(row.state),
                          csv_escape(row.member), csv_escape(row.role),
                          csv_escape(row.flow_type), format_money(row.amount),
                          format_number(row.time)});
    }
    return out;
}

std::string match_trace_csv(std::span<const MatchTraceRow> rows) {
    std::string out = "rule_id,deal_id,quarter,decision,reason,check\n";
    for (const auto& row : rows) {
        append_line(out, {csv_escape(row.rule_id), csv_escape(row.deal_id),
                          format_number(row.quarter), std::string(to_string(row.decision)),
                          std::string(to_string(row.reason)),
                          row.check ? format_money(*row.check) : std::string()});
    }
    return out;
}

std::string compare_csv(std::span<const CompareRow> rows) {
    std::string out =
        "trial,lp_dpi_standard,lp_dpi_distributed,fees_standard,fees_distributed,"
        "carry_standard,carry_distributed,admin_standard,admin_distributed,"
        "gp_take_standard,pod_take_distributed\n";
    for (const auto& row : rows) {
        append_line(out, {format_number(row.trial), format_number(row.lp_dpi_standard),
                          format_number(row.lp_dpi_distributed), format_money(row.fees_standard),
                          format_money(row.fees_distributed), format_money(row.carry_standard),
                          format_money(row.carry_distributed), format_money(row.admin_standard),
                          format_money(row.admin_distributed), format_money(row.gp_take_standard),
                          format_money(row.pod_take_distributed)});
    }
    return out;
}

}  // namespace fundsim
