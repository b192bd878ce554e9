#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gvflab/config.hpp"

namespace gvflab {

/// One metric observation. (trial, step, gvf_id, metric) is unique in a run.
struct MetricRow {
  int trial = 0;
  std::int64_t step = 0;
  std::string gvf_id;
  std::string metric;
  double value = 0.0;
};

/// Deterministic float formatting shared by every CSV writer.
std::string format_value(double v);

inline constexpr const char* kTrialHeader = "trial,step,gvf_id,metric,value";
inline constexpr const char* kSummaryHeader = "step,gvf_id,metric,mean,stderr,trials";

struct RunResult {
  std::filesystem::path dir;
  std::vector<std::filesystem::path> trial_files;
  std::filesystem::path manifest;
};

/// Execute every trial of the configured experiment, writing one CSV per
/// trial plus a manifest. Identical config and seed produce byte-identical
/// CSV files regardless of worker count.
RunResult run_experiment(const ExperimentConfig& config);

/// Rows of a single trial, in emission order (exposed for tests and for the
/// acceptance suite; run_experiment streams the same rows to disk).
std::vector<MetricRow> run_trial_rows(const ExperimentConfig& config, int trial);

/// Read a trial CSV written by run_experiment.
std::vector<MetricRow> read_trial_csv(const std::filesystem::path& file);

struct SummaryRow {
  std::int64_t step = 0;
  std::string gvf_id;
  std::string metric;
  double mean = 0.0;
  double stderr_ = 0.0;
  int trials = 0;
};

/// Combine the per-trial CSVs of a run directory: mean and standard error
/// of the mean across trials for every (step, gvf_id, metric).
std::vector<SummaryRow> aggregate(const std::filesystem::path& run_dir);

/// aggregate() plus a summary.csv written into the run directory.
std::filesystem::path write_summary(const std::filesystem::path& run_dir);

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& file);

}  // namespace gvflab
