#pragma once

#include <string>
#include <vector>

#include "hahn/serialize.hpp"

namespace hahn {

struct SuiteConfig {
    std::string suite = "all"; // group-props, series-laws, hensel, defform, tower, all
    unsigned long seed = 42;
    int samples = 1000;
    int depth = 4;
    long margin_steps = 4;
};

struct CheckRecord {
    std::string name;
    std::string property;
    Verdict verdict = Verdict::Inconclusive;
    long checked = 0;
    long failures = 0;
    bool precision_trouble = false;
    Json details = Json::object();
};

struct Report {
    std::string schema = "hahn-report/1";
    SuiteConfig config;
    std::vector<CheckRecord> records; // sorted by check name
    long passed = 0;
    long failed = 0;
    long inconclusive = 0;
    double elapsed_seconds = 0.0;

    /// Deterministic body; timings live in a separate section so identical
    /// configurations produce byte-identical record content.
    Json to_json(bool with_timings = true) const;
};

/// Names of the checks a suite runs, in execution order.
std::vector<std::string> checks_for(const std::string& suite);

/// Run one named check with the given configuration.
CheckRecord run_check(const std::string& name, const SuiteConfig& config);

Report run_suite(const SuiteConfig& config);

/// 0 all pass, 1 check failure, 3 precision underflow in a required check.
int report_exit_code(const Report& report);

} // namespace hahn
