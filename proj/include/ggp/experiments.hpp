#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ggp/model.hpp"

namespace ggp {

enum class Verdict { pass, fail, info };
std::string_view to_string(Verdict v);

/// One embedded acceptance check of an experiment.
struct Check {
  std::string name;
  Verdict verdict = Verdict::info;
  std::string detail;
};

/// Metrics of one replication. replication = -1 marks run-level aggregates
/// (one such record per parameter group).
struct ExperimentRecord {
  std::string experiment;
  ModelParams params;
  std::uint64_t seed = 0;
  long long replication = 0;
  std::map<std::string, double> metrics;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::vector<Check> checks;
  bool passed() const;
};

struct RunOptions {
  std::uint64_t seed = 1;
  int workers = 1;
};

/// Stream id of replication `rep` in parameter group `group`.
constexpr std::uint64_t stream_id(std::uint64_t group, std::uint64_t rep) {
  return (group << 32) | rep;
}

struct GumbelConfig {
  double alpha = 0.0;
  double beta = 2.0;
  std::vector<long long> n_values{100000};
  int reps = 10000;
  double ks_threshold = 0.05;
  /// With several n values: independent runs per n whose median KS must decrease in n.
  int trend_runs = 0;
};
ExperimentResult run_gumbel(const GumbelConfig& cfg, const RunOptions& opt);

struct IntensityConfig {
  ModelParams params{2, 0.0, 2.0, 1e6};
  double spatial_radius = 2.0;
  double h_min = -5.0;
  double h_max = 1.0;
  /// Height bins of equal mass under the limit intensity e^h.
  int h_bins = 3;
  int reps = 1000;
  double min_expected = 200.0;
  double max_rel_error = 0.05;
  long long mc_samples = 1000000;
  double mass_tolerance = 0.01;
  double limit_lambda_small = 1e4;
  double limit_lambda_large = 1e8;
};
ExperimentResult run_intensity(const IntensityConfig& cfg, const RunOptions& opt);

struct ScalingLimitConfig {
  int d = 2;
  /// (alpha, beta) pairs.
  std::vector<std::pair<double, double>> shapes{{0.0, 2.0}, {1.0, 1.0}};
  std::vector<double> lambdas{1e3, 1e4, 1e5, 1e6};
  double L = 1.0;
  int grid_n = 41;
  int reps = 50;
  double h_cut = 6.0;
  int bootstrap = 1000;
};
ExperimentResult run_scaling_limit(const ScalingLimitConfig& cfg, const RunOptions& opt);

struct MomentsConfig {
  int d = 2;
  double alpha = 0.0;
  double beta = 2.0;
  std::vector<double> lambdas{1e3, 3162.2776601683795, 1e4, 31622.776601683792, 1e5, 316227.76601683791, 1e6};
  int reps = 500;
  /// Intrinsic volume whose expectation ratio is checked; 0 means d.
  int ratio_index = 0;
  double ratio_lo = 0.75;
  double ratio_hi = 1.05;
  double f_slope_tolerance = 0.15;
  double var_slope_tolerance = 0.2;
  int kubota_dirs = 2000;
  double h_cut = 6.0;
};
ExperimentResult run_moments(const MomentsConfig& cfg, const RunOptions& opt);

struct CltConfig {
  ModelParams params{2, 0.0, 2.0, 1e5};
  int reps = 2000;
  double max_abs_skewness = 0.25;
  double max_abs_excess_kurtosis = 0.5;
  double max_ks = 0.04;
  int kubota_dirs = 2000;
  double h_cut = 6.0;
};
ExperimentResult run_clt(const CltConfig& cfg, const RunOptions& opt);

struct TailsConfig {
  ModelParams params{2, 0.0, 2.0, 1e5};
  double M = 1.0;
  std::vector<double> t_grid{1.0, 2.0, 3.0, 4.0};
  int reps = 500;
  int grid_n = 41;
  double min_r2 = 0.9;
  double h_cut = 5.0;
};
ExperimentResult run_tails(const TailsConfig& cfg, const RunOptions& opt);

struct SllnConfig {
  int d = 2;
  double alpha = 0.0;
  double beta = 2.0;
  int i = 2;
  double a = 4.0;
  int k_max = 6;
  double p = 0.6;
  int reps = 500;
  int bootstrap = 1000;
  int kubota_dirs = 2000;
};
ExperimentResult run_slln(const SllnConfig& cfg, const RunOptions& opt);

struct ConcentrationConfig {
  ModelParams params{2, 0.0, 2.0, 1e5};
  int i = 2;
  std::vector<double> y_grid{1.0, 2.0, 3.0};
  int reps = 2000;
  int kubota_dirs = 2000;
  double h_cut = 6.0;
};
ExperimentResult run_concentration(const ConcentrationConfig& cfg, const RunOptions& opt);

/// min(1, 2 exp(-y^2 / 2^(2d+i+7))).
double concentration_bound(int d, int i, double y);

struct VertexCorrespondenceConfig {
  ModelParams params{2, 0.0, 2.0, 1e4};
  double L = 2.0;
  int reps = 50;
  double min_match = 0.95;
  double h_cut = 6.0;
};
ExperimentResult run_vertex_correspondence(const VertexCorrespondenceConfig& cfg,
                                           const RunOptions& opt);

/// Expected number of points of the scaled process in the box
/// {|v| <= rho} x [h_lo, h_hi], computed from the radial law and the spherical
/// cap measure (no Jacobian involved).
double exact_window_mass(const ModelParams& params, double r_lambda, double rho, double h_lo,
                         double h_hi);

}  // namespace ggp
