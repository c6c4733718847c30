/**
 * Run configuration, verification reports and the acceptance suite.
 *
 * A run executes one command and produces a RunReport: the configuration
 * echo, one record per check and a verdict. Exit codes are a function of the
 * verdict alone: 0 pass, 1 a check failed, 2 bad configuration or input,
 * 3 a numerical procedure did not converge.
 */
#ifndef RDPER_CLI_REPORT_HPP
#define RDPER_CLI_REPORT_HPP

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "rdper/error.hpp"

namespace rdper {

inline constexpr const char* artifact_version = "1.0.0";

/// Environment variable naming the default output directory.
inline constexpr const char* output_dir_env = "RDPER_OUTPUT_DIR";

struct RunConfig
{
    std::string command;

    // local model and topology
    int m1 = 1;
    int m2 = 1;
    double u0_re = 1.0;
    double u0_im = 0.0;
    std::string stratum = "crossing";
    int samples = 512;
    std::string model = "radial";   // radial | wedge-bundle | wedge | sphere | torus
    int m = 1;
    int n_sectors = 0;              // 0 picks 4 (m1 + m2)

    // truncated operators
    std::string op = "D";
    int T0 = 0;                     // 0 picks the operator's minimal window
    int steps = 6;
    bool cokernel = false;

    // hypergeometric example
    std::string a = "-1/2";
    std::string b = "-1/2";
    std::string c = "-2";
    std::string alpha = "1";
    std::string x = "-1";
    std::string y = "-2";
    double x_im = 0.0;
    double y_im = 0.0;

    // quadrature
    double rel_tol = 1e-10;
    double abs_tol = 1e-30;
    int max_level = 8;
    int digits = 25;
    double step = 1e-3;
    bool oracle = false;

    unsigned seed = 0;
    std::string output;             // report path; empty uses $RDPER_OUTPUT_DIR/<command>.json if set
};

/// Known commands, in help order.
const std::vector<std::string>& known_commands();

/// Names accepted by apply_setting (underscore spelling).
const std::vector<std::string>& config_keys();

/// Sets one field from text; dashes in `key` count as underscores. Throws ConfigError.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// "key = value" lines, '#' starts a comment. Throws ConfigError.
void load_config_file(RunConfig& config, const std::filesystem::path& path);

/// Throws ConfigError for an unknown command or a non-positive tolerance.
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);

/// "3", "-7/2" or a terminating decimal such as "-1.25". Throws ConfigError.
mpq_class parse_rational(const std::string& text);

struct CheckRecord
{
    std::string name;
    nlohmann::json inputs;
    nlohmann::json expected;
    nlohmann::json computed;
    std::string source;   // "formula", "paper", "oracle" or "property"
    bool pass = false;
    double runtime_s = 0;
};

struct RunReport
{
    std::string version = artifact_version;
    std::string command;
    nlohmann::json config;
    unsigned seed = 0;
    std::vector<CheckRecord> checks;
    nlohmann::json data = nlohmann::json::object();
    std::string verdict;   // "pass", "fail" or "error"
    int exit_code = 0;
    std::string error;

    bool all_pass() const;
};

/// 2 for input and configuration errors, 3 for non-convergence, 1 otherwise.
int exit_code_for(ErrorKind kind);

RunReport run(const RunConfig& config);

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

/// Writes to a temporary file next to `path` and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/**
 * Writes the JSON report (and a CSV table for chg-periods) to config.output
 * or to $RDPER_OUTPUT_DIR/<command>.json. Returns the paths written; empty
 * when no destination is configured.
 */
std::vector<std::filesystem::path> write_artifacts(const RunReport& report, const RunConfig& config);

struct ReportDiff
{
    std::vector<std::string> entries;
    bool empty() const { return entries.empty(); }
};

/**
 * Differences between the computed values of two reports. Floating-point
 * values agree when they are within 10x the looser relative tolerance of the
 * two configurations; error-estimate fields and exact values must match
 * exactly. Inputs and runtimes are not compared. Throws VersionMismatch when
 * the versions or commands differ.
 */
ReportDiff compare_reports(const RunReport& r1, const RunReport& r2);

// ---------------------------------------------------------------------------
// Acceptance suite

struct CriterionResult
{
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double runtime_s = 0;
    std::vector<CheckRecord> checks;
};

inline constexpr int criterion_count = 8;

/// Runs one acceptance criterion (1..8); errors become a failed result, never an exception.
CriterionResult run_criterion(int id, unsigned seed);

std::vector<CriterionResult> run_acceptance_suite(unsigned seed);

nlohmann::json to_json(const CriterionResult& result);
nlohmann::json to_json(const CheckRecord& record);

}   // namespace rdper

#endif
