#ifndef FWC_REPORT_HPP
#define FWC_REPORT_HPP

// analyze / dual / verify runs assembled into versioned JSON reports.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fwc/analysis.hpp"
#include "fwc/bounds.hpp"
#include "fwc/construction.hpp"

namespace fwc {

inline constexpr int kReportVersion = 1;

enum class MethodChoice { Auto, Exhaustive, Class, Ideal };
MethodChoice parse_method(const std::string& text);

struct AnalyzeConfig {
    MethodChoice method = MethodChoice::Auto;
    RunOptions run;
    bool dual = true;
    unsigned dual_cap = 3;
};

struct VerifyConfig {
    std::uint64_t trials = 100;
    std::uint64_t seed = kDefaultSeed;
    bool subcode_only = false;
};

struct Report {
    nlohmann::json body;
    bool passed = true;  // every executed check held
};

nlohmann::json params_json(const TraceCode& code);
nlohmann::json rows_json(const WeightDistribution& dist);
std::string rows_csv(const nlohmann::json& rows);

Report run_analyze(const TraceCode& code, const AnalyzeConfig& cfg);
Report run_dual(const TraceCode& code, unsigned cap, std::uint64_t work_budget, unsigned threads);
Report run_verify(const TraceCode& code, const VerifyConfig& cfg);

}  // namespace fwc

#endif  // FWC_REPORT_HPP
