#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ggp/experiments.hpp"

namespace ggp::cli {

/// Bumped whenever the records header changes.
inline constexpr int kRecordsSchemaVersion = 1;
inline constexpr std::string_view kRecordsHeader =
    "experiment,lambda,d,alpha,beta,seed,replication,metric,value";
inline constexpr std::string_view kSummaryHeader = "experiment,lambda,metric,n,mean,var,ci95";

using ExperimentConfig =
    std::variant<GumbelConfig, IntensityConfig, ScalingLimitConfig, MomentsConfig, CltConfig,
                 TailsConfig, SllnConfig, ConcentrationConfig, VertexCorrespondenceConfig>;

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string experiment;
  ExperimentConfig config;
  RunOptions options;
  std::string output_path = ".";
  OutputFormat format = OutputFormat::csv;
};

/// Parses and validates a JSON config. Missing fields take the experiment
/// defaults; workers defaults to default_workers(). Throws ParseError (with
/// line and column) for malformed JSON and ValidationError naming the field
/// for unknown keys, wrong types and out-of-range values.
RunConfig parse_config(std::string_view source);

ExperimentResult execute(const RunConfig& config);

/// Shortest round-trip decimal representation.
std::string format_number(double x);

std::string records_csv(const std::vector<ExperimentRecord>& records);
std::string records_json(const std::vector<ExperimentRecord>& records);

/// One row of a records file.
struct RecordRow {
  std::string experiment;
  double lambda = 0.0;
  int d = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  long long replication = 0;
  std::string metric;
  double value = 0.0;
};

std::vector<RecordRow> to_rows(const std::vector<ExperimentRecord>& records);
/// Throws ParseError for a malformed file or a header other than kRecordsHeader.
std::vector<RecordRow> parse_records_csv(std::string_view text);

struct SummaryRow {
  std::string experiment;
  double lambda = 0.0;
  std::string metric;
  std::size_t n = 0;
  double mean = 0.0;
  /// Empty (NaN) when n < 2.
  double var = 0.0;
  double ci95 = 0.0;
};

/// Groups by (experiment, lambda, metric); rows are ordered by experiment in
/// first-appearance order, then ascending lambda, then metric name.
/// Throws EmptyInput.
std::vector<SummaryRow> summarize_records(const std::vector<RecordRow>& rows);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Throws IoError when the file cannot be written.
void write_file(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace ggp::cli
