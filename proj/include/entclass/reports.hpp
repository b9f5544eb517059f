// CSV and plain-text outputs of sweeps and oracle runs.
#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "entclass/oracle_report.hpp"
#include "entclass/sweep.hpp"

namespace entclass {

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "4x2x1".
std::string topology_string(const std::vector<int>& sizes);

/// One row per N: N, topology, parameter counts, mean and std of validation
/// and test accuracy and loss, A_T with its std, delta, SVM and KNN accuracy.
void write_sweep_csv(std::span<const RunResult> results, const std::filesystem::path& path);
/// One row per (N, combo).
void write_combos_csv(std::span<const RunResult> results, const std::filesystem::path& path);
void write_confusion_csv(const ConfusionMatrix& cm, std::span<const std::string> labels,
                         const std::filesystem::path& path);
/// One row per state: ranks, tangles and GME flags for clean and noisy.
void write_oracle_csv(const OracleReport& report, const std::filesystem::path& path);

std::string sweep_summary(std::span<const RunResult> results);
std::string oracle_summary(const OracleReport& report);

/// Writes <p>_sweep.csv, <p>_combos.csv, confusion_<p>_N<n>.csv,
/// summary_<p>.txt and models/<p>_N<n>.model under out_dir. All results
/// must share one problem. Throws ReportError on empty input before
/// touching the filesystem.
void emit_sweep_reports(std::span<const RunResult> results, const std::filesystem::path& out_dir);

/// Writes oracle_table.csv, confusion_oracle_gme.csv,
/// confusion_oracle_slocc.csv and oracle_summary.txt.
void emit_oracle_reports(const OracleReport& report, const std::filesystem::path& out_dir);

}  // namespace entclass
