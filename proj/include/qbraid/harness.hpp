#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbraid {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    int k = 0;
    int sign = 1;
    int grid_n = 256;
    double grid_length = 24.0;
    std::map<std::string, double> tol_overrides;
    std::vector<std::string> suites;  // empty: all suites
    std::string report_format = "json";
    std::optional<std::string> csv_dir;
    std::uint64_t rng_seed = 1234;
    bool timing = false;  // runtime_ms is 0 unless set, keeping reports reproducible
};

const std::vector<std::string>& known_suites();

// Registered check: default tolerance and the formula it verifies.
struct CheckSpec {
    std::string name;
    std::string suite;
    std::string anchor;
    double tolerance = 0.0;
    bool negative_control = false;
};
const std::vector<CheckSpec>& check_registry();

// Throws ConfigError on a bad range, an unknown suite or an unknown override.
void validate(const RunConfig& cfg);

// passed <=> residual <= tolerance. A negative control is satisfied when it
// does not pass.
struct CheckReport {
    std::string check_name;
    std::string anchor;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool negative_control = false;
    double runtime_ms = 0.0;
    std::map<std::string, double> parameters;
    std::string error;  // set when the check threw

    bool satisfied() const { return negative_control ? !passed : passed; }
};

struct RunResult {
    std::vector<CheckReport> reports;  // sorted by check name
    int exit_code = 0;                 // 0 all satisfied, 1 otherwise
};

RunResult run_suite(const RunConfig& cfg);

std::string to_json(const RunConfig& cfg, const RunResult& result);
std::string to_text(const RunConfig& cfg, const RunResult& result);
std::string render(const RunConfig& cfg, const RunResult& result);

}  // namespace qbraid
