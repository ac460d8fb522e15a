#pragma once

#include "pfield/waveform.hpp"

#include <string>
#include <vector>

namespace pfield::validation {

struct Check {
    std::string name;
    bool passed = false;
    double measured = 0.0;  ///< statistic or deviation
    double threshold = 0.0; ///< pass bound for `measured`
    std::string detail;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Check> checks;

    bool passed() const;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    unsigned workers = 1;
    OracleMode mode = OracleMode::fast;
    double scale = 1.0; ///< multiplies every sample count
};

Report stable_suite(const SuiteOptions& opts);
Report field_suite(const SuiteOptions& opts);
Report decomposition_suite(const SuiteOptions& opts);
Report oracle_suite(const SuiteOptions& opts);

const std::vector<std::string>& suite_names();

/// Throws ConfigurationError for an unknown suite.
Report run_suite(const std::string& name, const SuiteOptions& opts);

} // namespace pfield::validation
