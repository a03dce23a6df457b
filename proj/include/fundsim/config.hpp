#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fundsim/automation.hpp"
#include "fundsim/distributed_sim.hpp"
#include "fundsim/economics.hpp"
#include "fundsim/standard_fund.hpp"

namespace fundsim {

enum class ScenarioKind { utility_sweep, standard_sim, distributed_sim, compare, match_eval };

const char* to_string(ScenarioKind kind);

/// Configuration problem, carrying the 1-based line in the source text the
/// diagnostic points at (best effort for semantic errors, exact for parse
/// errors).
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& message, int line)
        : std::runtime_error(message), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

struct SweepSettings {
    std::vector<ParamOverride> variants;
    double multiple_min = 0.0;
    double multiple_max = 4.0;
    int multiple_steps = 81;
    UtilityModel model = UtilityModel::expanded;
};

struct MatchEvalSettings {
    std::vector<DealTerms> deals;  // scripted deal flow; empty means generated
    int generated_deals = 0;       // channel-1 deals when no script is given
};

/// Everything a run needs. Paper-calibrated constants live in the field
/// defaults here and in the domain types; engines only read fields.
struct RunConfig {
    ScenarioKind scenario = ScenarioKind::utility_sweep;
    FundParams fund{1'000'000'000, 10, 0.02, 0.01, 0.20};
    DeploymentSchedule schedule;
    OutcomeModel outcome_model;
    DistributedScenarioConfig firm;
    SweepSettings sweep;
    MatchEvalSettings match_eval;
    int trials = 1;
    std::uint64_t master_seed = 0;
    std::string out_dir = "out";
    bool svg = false;
    int threads = 1;

    void validate() const;  // throws std::invalid_argument
};

/// Parses and validates a JSON config. Unknown keys are rejected. Throws
/// ConfigError with a line number.
RunConfig parse_config(const std::string& json_text);

/// Reads the file and parses it. I/O failure throws std::runtime_error.
RunConfig load_config(const std::string& path);

/// Serializes so that parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

}  // namespace fundsim
