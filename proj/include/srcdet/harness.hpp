#ifndef SRCDET_HARNESS_HPP
#define SRCDET_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "srcdet/estimators.hpp"
#include "srcdet/generators.hpp"

namespace srcdet {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An estimator, or the Top-k baseline sized by the same trial's MULTI_END_VERTEX set.
struct Method {
    bool top_k = false;
    EstimatorKind kind = EstimatorKind::kRumorCenter;
};

std::string method_name(const Method& m);
// Estimator names plus TOP_K; ALG4 and TOPK are accepted as aliases.
Method parse_method(const std::string& name);

struct ExperimentConfig {
    GeneratorSpec graph;
    std::optional<std::string> graph_file;  // edge list, replaces the generator
    bool regenerate_graph = false;          // fresh random graph per trial
    int spread_size = 2;
    long long end_fraction_num = 1;
    long long end_fraction_den = 1;
    std::vector<Method> methods;
    EstimatorOptions estimator;
    int trials = 1;
    uint64_t seed = 0;
    int threads = 0;  // 0: THREADS env, else hardware concurrency
    bool record_timing = false;
    std::string output_prefix;  // writes <prefix>.report.csv, .summary.json, .hist.dat
};

// Throws ConfigError on unknown keys, bad values or failed invariants.
ExperimentConfig parse_config(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& cfg);
void validate(const ExperimentConfig& cfg);

struct ReportRow {
    int trial = 0;
    std::string method;
    int kappa_size = 0;
    int error = 0;
    double runtime_ms = 0;
};

struct MethodSummary {
    int trials = 0;
    double mean_error = 0;
    double mean_kappa_size = 0;
    double p_error_0 = 0;
    double p_error_le_1 = 0;
    std::map<int, int> histogram;  // error hops -> trial count
};

struct ExperimentReport {
    std::vector<ReportRow> rows;  // ordered by trial, then method in config order
    std::map<std::string, MethodSummary> summary;
};

int resolve_threads(int requested);
ExperimentReport run_experiment(const ExperimentConfig& cfg);
std::map<std::string, MethodSummary> aggregate(const std::vector<ReportRow>& rows);

std::string report_csv(const std::vector<ReportRow>& rows);
std::string summary_json(const ExperimentConfig& cfg, const std::map<std::string, MethodSummary>& summary);
// One block per method: "# METHOD" then lines "error fraction", blocks split by two blank lines.
std::string histogram_dat(const std::map<std::string, MethodSummary>& summary);
// Writes the three report files under cfg.output_prefix.
void emit_report(const ExperimentConfig& cfg, const ExperimentReport& report);

}  // namespace srcdet

#endif
