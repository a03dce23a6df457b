#include "fundsim/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace fundsim {

namespace {

using nlohmann::ordered_json;

int line_at(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte),
                                           '\n'));
}

// Best-effort line of a key: the first occurrence of "key" quoted in the raw
// text. Good enough to aim an editor; parse errors carry exact positions.
int line_of_key(const std::string& text, const std::string& key) {
    std::size_t at = text.find('"' + key + '"');
    if (at == std::string::npos) return 1;
    return line_at(text, at);
}

[[noreturn]] void fail(const std::string& text, const std::string& key, const std::string& what) {
    throw ConfigError("config key '" + key + "': " + what, line_of_key(text, key));
}

Money money_from(const ordered_json& value, const std::string& text, const std::string& key) {
    if (value.is_number_unsigned()) {
        auto v = value.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<Money>::max())) {
            fail(text, key, "amount does not fit a 64-bit signed value");
        }
        return static_cast<Money>(v);
    }
    if (value.is_number_integer()) return value.get<Money>();
    fail(text, key, "expected an integer amount in minor currency units");
}

double number_from(const ordered_json& value, const std::string& text, const std::string& key) {
    if (!value.is_number()) fail(text, key, "expected a number");
    return value.get<double>();
}

int int_from(const ordered_json& value, const std::string& text, const std::string& key) {
    if (!value.is_number_integer() && !value.is_number_unsigned()) {
        fail(text, key, "expected an integer");
    }
    return value.get<int>();
}

std::string string_from(const ordered_json& value, const std::string& text,
                        const std::string& key) {
    if (!value.is_string()) fail(text, key, "expected a string");
    return value.get<std::string>();
}

bool bool_from(const ordered_json& value, const std::string& text, const std::string& key) {
    if (!value.is_boolean()) fail(text, key, "expected true or false");
    return value.get<bool>();
}

void require_object(const ordered_json& value, const std::string& text, const std::string& key,
                    std::initializer_list<const char*> allowed) {
    if (!value.is_object()) fail(text, key, "expected an object");
    for (const auto& item : value.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return item.key() == k;
            }) == allowed.end()) {
            fail(text, item.key(), "unknown key");
        }
    }
}

PodKind pod_kind_from(const std::string& name, const std::string& text, const std::string& key) {
    for (PodKind kind : kPodOrder) {
        if (name == to_string(kind)) return kind;
    }
    fail(text, key, "unknown pod kind '" + name + "'");
}

std::set<std::string> string_set_from(const ordered_json& value, const std::string& text,
                                      const std::string& key) {
    if (!value.is_array()) fail(text, key, "expected an array of strings");
    std::set<std::string> out;
    for (const auto& item : value) out.insert(string_from(item, text, key));
    return out;
}

std::map<PodKind, int> shares_from(const ordered_json& value, const std::string& text,
                                   const std::string& key) {
    if (!value.is_object()) fail(text, key, "expected an object of pod fractions");
    std::map<PodKind, int> shares;
    for (const auto& item : value.items()) {
        PodKind kind = pod_kind_from(item.key(), text, key);
        double fraction = number_from(item.value(), text, key);
        shares[kind] = static_cast<int>(round_half_even(fraction * 10'000.0));
    }
    return shares;
}

DealTerms deal_terms_from(const ordered_json& value, const std::string& text,
                          const std::string& key) {
    require_object(value, text, key,
                   {"sector", "round_size", "valuation_cap", "stage", "announced_at"});
    DealTerms terms;
    if (value.contains("sector")) terms.sector = string_from(value["sector"], text, "sector");
    if (value.contains("round_size")) {
        terms.round_size = money_from(value["round_size"], text, "round_size");
    }
    if (value.contains("valuation_cap")) {
        terms.valuation_cap = money_from(value["valuation_cap"], text, "valuation_cap");
    }
    if (value.contains("stage")) terms.stage = string_from(value["stage"], text, "stage");
    if (value.contains("announced_at")) {
        terms.announced_at = number_from(value["announced_at"], text, "announced_at");
    }
    return terms;
}

AutomationRule rule_from(const ordered_json& value, const std::string& text) {
    require_object(value, text, "rules",
                   {"id", "owner", "sectors", "min_round_size", "max_valuation_cap", "check_min",
                    "check_max", "max_per_quarter", "holding_period_pref",
                    "followon_reserve_fraction", "followon_criteria", "fill_fraction",
                    "created_at"});
    AutomationRule rule;
    if (value.contains("id")) rule.id = string_from(value["id"], text, "id");
    if (value.contains("owner")) rule.owner = string_from(value["owner"], text, "owner");
    if (value.contains("sectors")) rule.sectors = string_set_from(value["sectors"], text, "sectors");
    if (value.contains("min_round_size")) {
        rule.min_round_size = money_from(value["min_round_size"], text, "min_round_size");
    }
    if (value.contains("max_valuation_cap")) {
        rule.max_valuation_cap = money_from(value["max_valuation_cap"], text, "max_valuation_cap");
    }
    if (value.contains("check_min")) rule.check_min = money_from(value["check_min"], text, "check_min");
    if (value.contains("check_max")) rule.check_max = money_from(value["check_max"], text, "check_max");
    if (value.contains("max_per_quarter")) {
        rule.max_per_quarter = int_from(value["max_per_quarter"], text, "max_per_quarter");
    }
    if (value.contains("holding_period_pref")) {
        rule.holding_period_pref = number_from(value["holding_period_pref"], text,
                                               "holding_period_pref");
    }
    if (value.contains("followon_reserve_fraction")) {
        rule.followon_reserve_fraction =
            number_from(value["followon_reserve_fraction"], text, "followon_reserve_fraction");
    }
    if (value.contains("fill_fraction")) {
        rule.fill_fraction = number_from(value["fill_fraction"], text, "fill_fraction");
    }
    if (value.contains("created_at")) {
        rule.created_at = value["created_at"].is_number_unsigned()
                              ? value["created_at"].get<std::uint64_t>()
                              : static_cast<std::uint64_t>(
                                    int_from(value["created_at"], text, "created_at"));
    }
    if (value.contains("followon_criteria")) {
        const auto& crit = value["followon_criteria"];
        require_object(crit, text, "followon_criteria",
                       {"sectors", "min_round_size", "min_valuation_cap"});
        if (crit.contains("sectors")) {
            rule.followon_criteria.sectors = string_set_from(crit["sectors"], text, "sectors");
        }
        if (crit.contains("min_round_size")) {
            rule.followon_criteria.min_round_size =
                money_from(crit["min_round_size"], text, "min_round_size");
        }
        if (crit.contains("min_valuation_cap")) {
            rule.followon_criteria.min_valuation_cap =
                money_from(crit["min_valuation_cap"], text, "min_valuation_cap");
        }
    }
    return rule;
}

}  // namespace

const char* to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::utility_sweep: return "utility_sweep";
        case ScenarioKind::standard_sim: return "standard_sim";
        case ScenarioKind::distributed_sim: return "distributed_sim";
        case ScenarioKind::compare: return "compare";
        case ScenarioKind::match_eval: return "match_eval";
    }
    throw std::invalid_argument("unknown scenario kind");
}

void RunConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
    if (out_dir.empty()) throw std::invalid_argument("output directory must be non-empty");

    switch (scenario) {
        case ScenarioKind::utility_sweep:
            fund.validate();
            if (sweep.multiple_steps < 1 || !std::isfinite(sweep.multiple_min) ||
                !std::isfinite(sweep.multiple_max) || sweep.multiple_max < sweep.multiple_min ||
                sweep.multiple_min < 0.0) {
                throw std::invalid_argument("sweep grid must be a non-negative ascending range");
            }
            for (const auto& variant : sweep.variants) {
                if (variant.id.empty()) {
                    throw std::invalid_argument("sweep variants need non-empty ids");
                }
                variant.apply(fund);  // validates the combination
            }
            break;
        case ScenarioKind::standard_sim:
            fund.validate();
            schedule.validate(fund.lifespan_years);
            outcome_model.validate();
            break;
        case ScenarioKind::distributed_sim:
            firm.validate();
            break;
        case ScenarioKind::compare:
            fund.validate();
            schedule.validate(fund.lifespan_years);
            outcome_model.validate();
            firm.validate();
            if (!(firm.outcome_model == outcome_model)) {
                throw std::invalid_argument(
                    "compare requires the firm to use the shared outcome model");
            }
            break;
        case ScenarioKind::match_eval:
            if (firm.rules.empty()) {
                throw std::invalid_argument("match_eval needs at least one rule");
            }
            for (const auto& rule : firm.rules) {
                rule.validate();
                auto it = firm.owner_capital.find(rule.owner);
                if (it == firm.owner_capital.end() || it->second < 0) {
                    throw std::invalid_argument(
                        "every rule owner needs a non-negative capital entry");
                }
            }
            if (match_eval.deals.empty() && match_eval.generated_deals < 1) {
                throw std::invalid_argument(
                    "match_eval needs scripted deals or generated_deals >= 1");
            }
            if (match_eval.generated_deals < 0) {
                throw std::invalid_argument("generated_deals must be non-negative");
            }
            break;
    }
}

RunConfig parse_config(const std::string& json_text) {
    ordered_json root;
    try {
        root = ordered_json::parse(json_text);
    } catch (const ordered_json::parse_error& e) {
        throw ConfigError(e.what(), line_at(json_text, e.byte));
    }
    const std::string& text = json_text;
    require_object(root, text, "config",
                   {"scenario", "trials", "master_seed", "out_dir", "svg", "threads", "fund",
                    "schedule", "outcome_model", "fees", "splits", "pods", "rules",
                    "owner_capital", "deal_flow", "sweep", "match_eval"});

    RunConfig config;
    if (root.contains("scenario")) {
        std::string name = string_from(root["scenario"], text, "scenario");
        bool found = false;
        for (ScenarioKind kind :
             {ScenarioKind::utility_sweep, ScenarioKind::standard_sim,
              ScenarioKind::distributed_sim, ScenarioKind::compare, ScenarioKind::match_eval}) {
            if (name == to_string(kind)) {
                config.scenario = kind;
                found = true;
                break;
            }
        }
        if (!found) {
            fail(text, "scenario",
                 "unknown scenario '" + name +
                     "' (expected utility_sweep, standard_sim, distributed_sim, compare, or "
                     "match_eval)");
        }
    }
    if (root.contains("trials")) config.trials = int_from(root["trials"], text, "trials");
    if (root.contains("master_seed")) {
        const auto& seed = root["master_seed"];
        if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
            fail(text, "master_seed", "expected an unsigned integer");
        }
        if (seed.is_number_integer() && seed.get<std::int64_t>() < 0) {
            fail(text, "master_seed", "must be non-negative");
        }
        config.master_seed = seed.get<std::uint64_t>();
    }
    if (root.contains("out_dir")) config.out_dir = string_from(root["out_dir"], text, "out_dir");
    if (root.contains("svg")) config.svg = bool_from(root["svg"], text, "svg");
    if (root.contains("threads")) config.threads = int_from(root["threads"], text, "threads");

    if (root.contains("fund")) {
        const auto& fund = root["fund"];
        require_object(fund, text, "fund",
                       {"fund_size", "lifespan_years", "mgmt_fee_rate", "gp_commit_rate",
                        "carry_rate"});
        if (fund.contains("fund_size")) {
            config.fund.fund_size = money_from(fund["fund_size"], text, "fund_size");
        }
        if (fund.contains("lifespan_years")) {
            config.fund.lifespan_years = int_from(fund["lifespan_years"], text, "lifespan_years");
        }
        if (fund.contains("mgmt_fee_rate")) {
            config.fund.mgmt_fee_rate = number_from(fund["mgmt_fee_rate"], text, "mgmt_fee_rate");
        }
        if (fund.contains("gp_commit_rate")) {
            config.fund.gp_commit_rate =
                number_from(fund["gp_commit_rate"], text, "gp_commit_rate");
        }
        if (fund.contains("carry_rate")) {
            config.fund.carry_rate = number_from(fund["carry_rate"], text, "carry_rate");
        }
    }

    if (root.contains("schedule")) {
        const auto& schedule = root["schedule"];
        require_object(schedule, text, "schedule",
                       {"deployment_years", "initial_fraction", "companies_per_fund",
                        "check_policy", "check_weights"});
        if (schedule.contains("deployment_years")) {
            config.schedule.deployment_years =
                int_from(schedule["deployment_years"], text, "deployment_years");
        }
        if (schedule.contains("initial_fraction")) {
            config.schedule.initial_fraction =
                number_from(schedule["initial_fraction"], text, "initial_fraction");
        }
        if (schedule.contains("companies_per_fund")) {
            config.schedule.companies_per_fund =
                int_from(schedule["companies_per_fund"], text, "companies_per_fund");
        }
        if (schedule.contains("check_policy")) {
            std::string policy = string_from(schedule["check_policy"], text, "check_policy");
            if (policy == to_string(CheckPolicy::equal_weight)) {
                config.schedule.check_policy = CheckPolicy::equal_weight;
            } else if (policy == to_string(CheckPolicy::weighted)) {
                config.schedule.check_policy = CheckPolicy::weighted;
            } else {
                fail(text, "check_policy", "unknown check policy '" + policy + "'");
            }
        }
        if (schedule.contains("check_weights")) {
            const auto& weights = schedule["check_weights"];
            if (!weights.is_array()) fail(text, "check_weights", "expected an array of numbers");
            config.schedule.check_weights.clear();
            for (const auto& w : weights) {
                config.schedule.check_weights.push_back(number_from(w, text, "check_weights"));
            }
        }
    }

    if (root.contains("outcome_model")) {
        const auto& model = root["outcome_model"];
        require_object(model, text, "outcome_model",
                       {"failure_hazard", "pareto_alpha", "pareto_xmin", "stepup_mu",
                        "stepup_sigma", "years_to_liquidity_min", "years_to_liquidity_max",
                        "markup_inflation"});
        auto set = [&](const char* key, double& field) {
            if (model.contains(key)) field = number_from(model[key], text, key);
        };
        set("failure_hazard", config.outcome_model.failure_hazard);
        set("pareto_alpha", config.outcome_model.pareto_alpha);
        set("pareto_xmin", config.outcome_model.pareto_xmin);
        set("stepup_mu", config.outcome_model.stepup_mu);
        set("stepup_sigma", config.outcome_model.stepup_sigma);
        set("years_to_liquidity_min", config.outcome_model.years_to_liquidity_min);
        set("years_to_liquidity_max", config.outcome_model.years_to_liquidity_max);
        set("markup_inflation", config.outcome_model.markup_inflation);
        config.firm.outcome_model = config.outcome_model;
    }

    if (root.contains("fees")) {
        const auto& fees = root["fees"];
        require_object(fees, text, "fees", {"performance_fee", "carry"});
        if (fees.contains("performance_fee")) {
            config.firm.fees.performance_fee =
                number_from(fees["performance_fee"], text, "performance_fee");
        }
        if (fees.contains("carry")) {
            config.firm.fees.carry = number_from(fees["carry"], text, "carry");
        }
    }

    if (root.contains("splits")) {
        const auto& splits = root["splits"];
        require_object(splits, text, "splits", {"perf_fee", "carry"});
        if (splits.contains("perf_fee")) {
            config.firm.splits.perf_fee_bp = shares_from(splits["perf_fee"], text, "perf_fee");
        }
        if (splits.contains("carry")) {
            config.firm.splits.carry_bp = shares_from(splits["carry"], text, "carry");
        }
        try {
            config.firm.splits.validate();
        } catch (const std::invalid_argument& e) {
            fail(text, "splits", e.what());
        }
    }

    if (root.contains("pods")) {
        const auto& pods = root["pods"];
        if (!pods.is_array()) fail(text, "pods", "expected an array of pods");
        config.firm.roster.pods.clear();
        for (const auto& entry : pods) {
            require_object(entry, text, "pods", {"kind", "members"});
            Pod pod;
            if (entry.contains("kind")) {
                pod.kind = pod_kind_from(string_from(entry["kind"], text, "kind"), text, "kind");
            }
            if (entry.contains("members")) {
                pod.members = string_set_from(entry["members"], text, "members");
            }
            config.firm.roster.pods.push_back(std::move(pod));
        }
    }

    if (root.contains("rules")) {
        const auto& rules = root["rules"];
        if (!rules.is_array()) fail(text, "rules", "expected an array of rules");
        config.firm.rules.clear();
        for (const auto& entry : rules) config.firm.rules.push_back(rule_from(entry, text));
    }

    if (root.contains("owner_capital")) {
        const auto& capital = root["owner_capital"];
        if (!capital.is_object()) fail(text, "owner_capital", "expected owner -> amount");
        config.firm.owner_capital.clear();
        for (const auto& item : capital.items()) {
            config.firm.owner_capital[item.key()] =
                money_from(item.value(), text, "owner_capital");
        }
    }

    if (root.contains("deal_flow")) {
        const auto& flow = root["deal_flow"];
        require_object(flow, text, "deal_flow",
                       {"deals_per_trial", "deployment_years", "admin_cost", "sectors",
                        "round_size_min", "round_size_max", "cap_multiple_min",
                        "cap_multiple_max"});
        if (flow.contains("deals_per_trial")) {
            config.firm.deals_per_trial = int_from(flow["deals_per_trial"], text,
                                                   "deals_per_trial");
        }
        if (flow.contains("deployment_years")) {
            config.firm.deployment_years =
                int_from(flow["deployment_years"], text, "deployment_years");
        }
        if (flow.contains("admin_cost")) {
            config.firm.admin_cost = money_from(flow["admin_cost"], text, "admin_cost");
        }
        if (flow.contains("sectors")) {
            const auto& sectors = flow["sectors"];
            if (!sectors.is_array()) fail(text, "sectors", "expected an array of strings");
            config.firm.sectors.clear();
            for (const auto& s : sectors) {
                config.firm.sectors.push_back(string_from(s, text, "sectors"));
            }
        }
        if (flow.contains("round_size_min")) {
            config.firm.round_size_min = money_from(flow["round_size_min"], text,
                                                    "round_size_min");
        }
        if (flow.contains("round_size_max")) {
            config.firm.round_size_max = money_from(flow["round_size_max"], text,
                                                    "round_size_max");
        }
        if (flow.contains("cap_multiple_min")) {
            config.firm.cap_multiple_min =
                number_from(flow["cap_multiple_min"], text, "cap_multiple_min");
        }
        if (flow.contains("cap_multiple_max")) {
            config.firm.cap_multiple_max =
                number_from(flow["cap_multiple_max"], text, "cap_multiple_max");
        }
    }

    if (root.contains("sweep")) {
        const auto& sweep = root["sweep"];
        require_object(sweep, text, "sweep",
                       {"model", "multiple_min", "multiple_max", "multiple_steps", "variants"});
        if (sweep.contains("model")) {
            std::string model = string_from(sweep["model"], text, "model");
            if (model == to_string(UtilityModel::simple)) {
                config.sweep.model = UtilityModel::simple;
            } else if (model == to_string(UtilityModel::expanded)) {
                config.sweep.model = UtilityModel::expanded;
            } else {
                fail(text, "model", "unknown utility model '" + model + "'");
            }
        }
        if (sweep.contains("multiple_min")) {
            config.sweep.multiple_min = number_from(sweep["multiple_min"], text, "multiple_min");
        }
        if (sweep.contains("multiple_max")) {
            config.sweep.multiple_max = number_from(sweep["multiple_max"], text, "multiple_max");
        }
        if (sweep.contains("multiple_steps")) {
            config.sweep.multiple_steps =
                int_from(sweep["multiple_steps"], text, "multiple_steps");
        }
        if (sweep.contains("variants")) {
            const auto& variants = sweep["variants"];
            if (!variants.is_array()) fail(text, "variants", "expected an array of variants");
            config.sweep.variants.clear();
            for (const auto& entry : variants) {
                require_object(entry, text, "variants",
                               {"id", "fund_size", "lifespan_years", "mgmt_fee_rate",
                                "gp_commit_rate", "carry_rate"});
                ParamOverride variant;
                if (entry.contains("id")) variant.id = string_from(entry["id"], text, "id");
                if (entry.contains("fund_size")) {
                    variant.fund_size = money_from(entry["fund_size"], text, "fund_size");
                }
                if (entry.contains("lifespan_years")) {
                    variant.lifespan_years =
                        int_from(entry["lifespan_years"], text, "lifespan_years");
                }
                if (entry.contains("mgmt_fee_rate")) {
                    variant.mgmt_fee_rate =
                        number_from(entry["mgmt_fee_rate"], text, "mgmt_fee_rate");
                }
                if (entry.contains("gp_commit_rate")) {
                    variant.gp_commit_rate =
                        number_from(entry["gp_commit_rate"], text, "gp_commit_rate");
                }
                if (entry.contains("carry_rate")) {
                    variant.carry_rate = number_from(entry["carry_rate"], text, "carry_rate");
                }
                config.sweep.variants.push_back(std::move(variant));
            }
        }
    }

    if (root.contains("match_eval")) {
        const auto& eval = root["match_eval"];
        require_object(eval, text, "match_eval", {"deals", "generated_deals"});
        if (eval.contains("deals")) {
            const auto& deals = eval["deals"];
            if (!deals.is_array()) fail(text, "deals", "expected an array of deals");
            config.match_eval.deals.clear();
            for (const auto& entry : deals) {
                config.match_eval.deals.push_back(deal_terms_from(entry, text, "deals"));
            }
        }
        if (eval.contains("generated_deals")) {
            config.match_eval.generated_deals =
                int_from(eval["generated_deals"], text, "generated_deals");
        }
    }

    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), line_of_key(text, "scenario"));
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
    ordered_json root;
    root["scenario"] = to_string(config.scenario);
    root["trials"] = config.trials;
    root["master_seed"] = config.master_seed;
    root["out_dir"] = config.out_dir;
    root["svg"] = config.svg;
    root["threads"] = config.threads;

    root["fund"] = {{"fund_size", config.fund.fund_size},
                    {"lifespan_years", config.fund.lifespan_years},
                    {"mgmt_fee_rate", config.fund.mgmt_fee_rate},
                    {"gp_commit_rate", config.fund.gp_commit_rate},
                    {"carry_rate", config.fund.carry_rate}};

    root["schedule"] = {{"deployment_years", config.schedule.deployment_years},
                        {"initial_fraction", config.schedule.initial_fraction},
                        {"companies_per_fund", config.schedule.companies_per_fund},
                        {"check_policy", to_string(config.schedule.check_policy)},
                        {"check_weights", config.schedule.check_weights}};

    root["outcome_model"] = {
        {"failure_hazard", config.outcome_model.failure_hazard},
        {"pareto_alpha", config.outcome_model.pareto_alpha},
        {"pareto_xmin", config.outcome_model.pareto_xmin},
        {"stepup_mu", config.outcome_model.stepup_mu},
        {"stepup_sigma", config.outcome_model.stepup_sigma},
        {"years_to_liquidity_min", config.outcome_model.years_to_liquidity_min},
        {"years_to_liquidity_max", config.outcome_model.years_to_liquidity_max},
        {"markup_inflation", config.outcome_model.markup_inflation}};

    root["fees"] = {{"performance_fee", config.firm.fees.performance_fee},
                    {"carry", config.firm.fees.carry}};

    ordered_json perf_fee = ordered_json::object();
    for (const auto& [kind, bp] : config.firm.splits.perf_fee_bp) {
        perf_fee[to_string(kind)] = bp / 10'000.0;
    }
    ordered_json carry = ordered_json::object();
    for (const auto& [kind, bp] : config.firm.splits.carry_bp) {
        carry[to_string(kind)] = bp / 10'000.0;
    }
    root["splits"] = {{"perf_fee", perf_fee}, {"carry", carry}};

    ordered_json pods = ordered_json::array();
    for (const auto& pod : config.firm.roster.pods) {
        pods.push_back({{"kind", to_string(pod.kind)}, {"members", pod.members}});
    }
    root["pods"] = pods;

    ordered_json rules = ordered_json::array();
    for (const auto& rule : config.firm.rules) {
        ordered_json criteria = ordered_json::object();
        criteria["sectors"] = rule.followon_criteria.sectors;
        if (rule.followon_criteria.min_round_size) {
            criteria["min_round_size"] = *rule.followon_criteria.min_round_size;
        }
        if (rule.followon_criteria.min_valuation_cap) {
            criteria["min_valuation_cap"] = *rule.followon_criteria.min_valuation_cap;
        }
        rules.push_back({{"id", rule.id},
                         {"owner", rule.owner},
                         {"sectors", rule.sectors},
                         {"min_round_size", rule.min_round_size},
                         {"max_valuation_cap", rule.max_valuation_cap},
                         {"check_min", rule.check_min},
                         {"check_max", rule.check_max},
                         {"max_per_quarter", rule.max_per_quarter},
                         {"holding_period_pref", rule.holding_period_pref},
                         {"followon_reserve_fraction", rule.followon_reserve_fraction},
                         {"followon_criteria", criteria},
                         {"fill_fraction", rule.fill_fraction},
                         {"created_at", rule.created_at}});
    }
    root["rules"] = rules;

    root["owner_capital"] = config.firm.owner_capital;

    root["deal_flow"] = {{"deals_per_trial", config.firm.deals_per_trial},
                         {"deployment_years", config.firm.deployment_years},
                         {"admin_cost", config.firm.admin_cost},
                         {"sectors", config.firm.sectors},
                         {"round_size_min", config.firm.round_size_min},
                         {"round_size_max", config.firm.round_size_max},
                         {"cap_multiple_min", config.firm.cap_multiple_min},
                         {"cap_multiple_max", config.firm.cap_multiple_max}};

    ordered_json variants = ordered_json::array();
    for (const auto& variant : config.sweep.variants) {
        ordered_json entry;
        entry["id"] = variant.id;
        if (variant.fund_size) entry["fund_size"] = *variant.fund_size;
        if (variant.lifespan_years) entry["lifespan_years"] = *variant.lifespan_years;
        if (variant.mgmt_fee_rate) entry["mgmt_fee_rate"] = *variant.mgmt_fee_rate;
        if (variant.gp_commit_rate) entry["gp_commit_rate"] = *variant.gp_commit_rate;
        if (variant.carry_rate) entry["carry_rate"] = *variant.carry_rate;
        variants.push_back(std::move(entry));
    }
    root["sweep"] = {{"model", to_string(config.sweep.model)},
                     {"multiple_min", config.sweep.multiple_min},
                     {"multiple_max", config.sweep.multiple_max},
                     {"multiple_steps", config.sweep.multiple_steps},
                     {"variants", variants}};

    ordered_json deals = ordered_json::array();
    for (const auto& terms : config.match_eval.deals) {
        deals.push_back({{"sector", terms.sector},
                         {"round_size", terms.round_size},
                         {"valuation_cap", terms.valuation_cap},
                         {"stage", terms.stage},
                         {"announced_at", terms.announced_at}});
    }
    root["match_eval"] = {{"deals", deals},
                          {"generated_deals", config.match_eval.generated_deals}};

    return root.dump(2) + "\n";
}

}  // namespace fundsim
