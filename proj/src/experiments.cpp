#include "ggp/experiments.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "ggp/error.hpp"
#include "ggp/festoon.hpp"
#include "ggp/parallel.hpp"
#include "ggp/rescale.hpp"
#include "ggp/sampling.hpp"
#include "ggp/simulate.hpp"
#include "ggp/stats.hpp"

namespace ggp {

namespace {

constexpr std::uint64_t kBootstrapGroup = 0xB00000;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

Check check(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? Verdict::pass : Verdict::fail, std::move(detail)};
}

Check info(std::string name, std::string detail) {
  return {std::move(name), Verdict::info, std::move(detail)};
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

ExperimentRecord record(const char* name, const ModelParams& p, std::uint64_t seed, long long rep) {
  return {name, p, seed, rep, {}};
}

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// C(d,i) kappa_d / kappa_{d-i} (beta log lambda)^(i/beta).
double volume_normalizer(int d, int i, double beta, double lambda) {
  return binomial(d, i) * unit_ball_volume(d) / unit_ball_volume(d - i) *
         std::pow(beta * std::log(lambda), i / beta);
}

std::vector<ScaledPoint> rescale_all(const Scaling& s, const PointCloud& pts) {
  std::vector<ScaledPoint> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = s.transform(pts[i].data());
  return out;
}

// Height above which sample_hull skipped points, or +inf when none were skipped.
double skipped_height(const Scaling& s, const HullSample& hs) {
  if (hs.inner_sampled) return std::numeric_limits<double>::infinity();
  return s.height_scale() * (1.0 - hs.r0 / s.r_lambda());
}

// Festoon of the rescaled sample. A skipped point (height above the cut) changes
// the festoon only if it lies below it, so the festoon is exact once its
// maximum stays below the cut; otherwise the inner points are drawn.
Festoon exact_festoon(RngStream& rng, const ModelParams& p, const Scaling& s, HullSample& hs,
                      std::vector<ScaledPoint>& scaled) {
  scaled = rescale_all(s, hs.points);
  Festoon f(scaled);
  if (f.max_height_bound() < skipped_height(s, hs)) return f;
  add_inner_points(rng, p, hs);
  scaled = rescale_all(s, hs.points);
  return Festoon(scaled);
}

bool strictly_decreasing(const std::vector<double>& x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] < x[i - 1])) return false;
  }
  return true;
}

bool strictly_increasing(const std::vector<double>& x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) return false;
  }
  return true;
}

std::string join(const std::vector<double>& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + num(x[i]);
  return s;
}

// Runs body(rep, rng) for each replication on its own stream and returns the
// results in replication order.
template <class T, class F>
std::vector<T> replicate(int reps, std::uint64_t group, const RunOptions& opt, F body) {
  std::vector<T> out(reps);
  parallel_for(reps, opt.workers, [&](std::size_t r) {
    RngStream rng(opt.seed, stream_id(group, r));
    out[r] = body(static_cast<long long>(r), rng);
  });
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::info: return "INFO";
  }
  return "INFO";
}

bool ExperimentResult::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const Check& c) { return c.verdict == Verdict::fail; });
}

// ---------------------------------------------------------------------------

ExperimentResult run_gumbel(const GumbelConfig& cfg, const RunOptions& opt) {
  require(cfg.reps >= 100, "gumbel needs reps >= 100");
  require(!cfg.n_values.empty(), "gumbel needs at least one n");
  for (long long n : cfg.n_values) require(n >= 100, "gumbel needs n >= 100");
  require(cfg.alpha > -1.0, "alpha must be > -1");
  require(cfg.beta >= 1.0, "beta must be >= 1");

  ExperimentResult res;
  std::vector<double> ks_by_n;
  for (std::size_t g = 0; g < cfg.n_values.size(); ++g) {
    const long long n = cfg.n_values[g];
    const ModelParams p{1, cfg.alpha, cfg.beta, static_cast<double>(n)};
    const auto xs = replicate<double>(cfg.reps, g, opt, [&](long long, RngStream& rng) {
      return sample_standardized_max(rng, n, cfg.alpha, cfg.beta);
    });
    for (int r = 0; r < cfg.reps; ++r) {
      auto rec = record("gumbel", p, opt.seed, r);
      rec.metrics["standardized_max"] = xs[r];
      res.records.push_back(std::move(rec));
    }
    const double ks = ks_statistic(xs, gumbel_cdf);
    ks_by_n.push_back(ks);
    auto agg = record("gumbel", p, opt.seed, -1);
    agg.metrics["ks"] = ks;
    agg.metrics["reps"] = cfg.reps;
    res.records.push_back(std::move(agg));
    const std::string label = "gumbel ks (alpha=" + num(cfg.alpha) + ", beta=" + num(cfg.beta) +
                              ", n=" + num(static_cast<double>(n)) + ")";
    res.checks.push_back(check(label, ks < cfg.ks_threshold,
                               "ks=" + num(ks) + " threshold=" + num(cfg.ks_threshold)));
  }

  if (cfg.trend_runs > 0 && cfg.n_values.size() >= 2) {
    std::vector<double> medians;
    for (std::size_t g = 0; g < cfg.n_values.size(); ++g) {
      std::vector<double> runs;
      for (int t = 0; t < cfg.trend_runs; ++t) {
        const std::uint64_t group = 1000 + 64 * static_cast<std::uint64_t>(t) + g;
        const auto xs = replicate<double>(cfg.reps, group, opt, [&](long long, RngStream& rng) {
          return sample_standardized_max(rng, cfg.n_values[g], cfg.alpha, cfg.beta);
        });
        runs.push_back(ks_statistic(xs, gumbel_cdf));
      }
      medians.push_back(median(runs));
    }
    res.checks.push_back(check("gumbel ks decreases in n", strictly_decreasing(medians),
                               "median ks over " + std::to_string(cfg.trend_runs) +
                                   " runs: " + join(medians)));
  }
  return res;
}

// ---------------------------------------------------------------------------

double exact_window_mass(const ModelParams& params, double r_lambda, double rho, double h_lo,
                         double h_hi) {
  const int d = params.d;
  const double rb = std::pow(r_lambda, params.beta);
  const double theta = rho / std::pow(r_lambda, params.beta / 2.0);
  if (!(theta <= std::numbers::pi) || !(h_hi <= rb) || !(h_lo < h_hi)) {
    throw Error(ErrorCode::OutsideWindow, "box is not inside the scaled window");
  }
  double cap = 0.0;
  if (d == 2) {
    cap = theta / std::numbers::pi;
  } else {
    const double half = 0.5 * boost::math::ibeta((d - 1) / 2.0, 0.5, std::pow(std::sin(theta), 2));
    cap = theta <= std::numbers::pi / 2 ? half : 1.0 - half;
  }
  const double r_lo = r_lambda * (1.0 - h_hi / rb);
  const double r_hi = r_lambda * (1.0 - h_lo / rb);
  return params.lambda * radial_probability(d, params.alpha, params.beta, r_lo, r_hi) * cap;
}

ExperimentResult run_intensity(const IntensityConfig& cfg, const RunOptions& opt) {
  const ModelParams p = validate_params(cfg.params.d, cfg.params.alpha, cfg.params.beta,
                                        cfg.params.lambda);
  require(std::isfinite(cfg.h_min) && cfg.h_min < cfg.h_max, "intensity window needs finite h_min < h_max");
  require(cfg.spatial_radius > 0.0, "spatial_radius must be > 0");
  require(cfg.h_bins >= 1 && cfg.reps >= 1, "h_bins and reps must be >= 1");
  require(cfg.mc_samples >= 1000, "mc_samples must be >= 1000");

  const int d = p.d;
  const int k = d - 1;
  const Scaling s(p);
  const double R = s.r_lambda();
  ExperimentResult res;

  // Bin edges with equal e^h mass.
  std::vector<double> edges(cfg.h_bins + 1);
  const double e_lo = std::exp(cfg.h_min);
  const double e_hi = std::exp(cfg.h_max);
  for (int b = 0; b <= cfg.h_bins; ++b) edges[b] = std::log(e_lo + (e_hi - e_lo) * b / cfg.h_bins);
  edges.front() = cfg.h_min;
  edges.back() = cfg.h_max;
  const double spatial = unit_ball_volume(k) * std::pow(cfg.spatial_radius, k);

  auto bin_masses = [&](const ModelParams& q, double r) {
    std::vector<double> m(cfg.h_bins);
    for (int b = 0; b < cfg.h_bins; ++b) {
      m[b] = exact_window_mass(q, r, cfg.spatial_radius, edges[b], edges[b + 1]);
    }
    return m;
  };
  std::vector<double> limit(cfg.h_bins);
  for (int b = 0; b < cfg.h_bins; ++b) limit[b] = spatial * (std::exp(edges[b + 1]) - std::exp(edges[b]));
  const auto exact = bin_masses(p, R);

  // Empirical counts: only the radial shell that maps into the height range matters.
  const double r_lo = R * (1.0 - cfg.h_max / s.height_scale());
  const double r_hi = R * (1.0 - cfg.h_min / s.height_scale());
  const auto counts = replicate<std::vector<double>>(cfg.reps, 0, opt, [&](long long, RngStream& rng) {
    std::vector<double> c(cfg.h_bins, 0.0);
    const PointCloud pts = sample_polytope_shell(rng, p, std::max(r_lo, 0.0), r_hi);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto w = s.transform(pts[i].data());
      double n2 = 0.0;
      for (double x : w.v) n2 += x * x;
      if (n2 > cfg.spatial_radius * cfg.spatial_radius || w.h < cfg.h_min || w.h > cfg.h_max) continue;
      const auto it = std::upper_bound(edges.begin(), edges.end(), w.h);
      const int b = std::clamp(static_cast<int>(it - edges.begin()) - 1, 0, cfg.h_bins - 1);
      c[b] += 1.0;
    }
    return c;
  });
  std::vector<double> total(cfg.h_bins, 0.0);
  for (int r = 0; r < cfg.reps; ++r) {
    auto rec = record("intensity", p, opt.seed, r);
    for (int b = 0; b < cfg.h_bins; ++b) {
      rec.metrics["count_bin_" + std::to_string(b)] = counts[r][b];
      total[b] += counts[r][b];
    }
    res.records.push_back(std::move(rec));
  }
  double max_rel_exact = 0.0;
  double max_rel_limit = 0.0;
  double chi2 = 0.0;
  int used = 0;
  for (int b = 0; b < cfg.h_bins; ++b) {
    const double expected = cfg.reps * exact[b];
    chi2 += (total[b] - expected) * (total[b] - expected) / expected;
    if (expected < cfg.min_expected) continue;
    ++used;
    max_rel_exact = std::max(max_rel_exact, std::abs(total[b] - expected) / expected);
    max_rel_limit = std::max(max_rel_limit, std::abs(total[b] - cfg.reps * limit[b]) / (cfg.reps * limit[b]));
  }

  // Deterministic distance between the exact bin masses and the e^h limit.
  auto limit_gap = [&](double lambda) {
    const ModelParams q{d, p.alpha, p.beta, lambda};
    const auto m = bin_masses(q, critical_radius(q));
    double g = 0.0;
    for (int b = 0; b < cfg.h_bins; ++b) g = std::max(g, std::abs(m[b] / limit[b] - 1.0));
    return g;
  };
  const double gap_small = limit_gap(cfg.limit_lambda_small);
  const double gap_large = limit_gap(cfg.limit_lambda_large);

  // Importance-sampling estimate of the total mass of the scaled intensity over
  // the whole window: v uniform on the ball of radius pi R^(beta/2), h from the
  // radial law with alpha + 1 (so the proposal is not proportional to nu).
  // The weight is nu(v, h) / proposal density.
  const double ball_r = std::numbers::pi * s.spatial_scale();
  const double log_uniform = -std::log(unit_ball_volume(k)) - k * std::log(ball_r);
  const double alpha_q = p.alpha + 1.0;
  const double shape = (d + alpha_q) / p.beta;
  const double log_z1 = (shape - 1.0) * std::log(p.beta) + std::lgamma(shape);
  const long long chunk = 10000;
  const long long chunks = (cfg.mc_samples + chunk - 1) / chunk;
  struct Sums {
    double w = 0.0;
    double w2 = 0.0;
    long long n = 0;
  };
  const auto sums = replicate<Sums>(static_cast<int>(chunks), 1, opt, [&](long long c, RngStream& rng) {
    Sums out;
    const long long n = std::min(chunk, cfg.mc_samples - c * chunk);
    ScaledPoint w;
    w.v.resize(k);
    for (long long t = 0; t < n; ++t) {
      sample_in_ball(rng, k, ball_r, w.v.data());
      const double r = sample_radius(rng, d, alpha_q, p.beta);
      w.h = s.height_scale() * (1.0 - r / R);
      const double log_q = log_uniform + (alpha_q + d - 1) * std::log(r) -
                           std::pow(r, p.beta) / p.beta - log_z1 + (1.0 - p.beta) * std::log(R);
      const double weight = std::exp(s.log_rescaled_intensity(w) - log_q);
      out.w += weight;
      out.w2 += weight * weight;
      ++out.n;
    }
    return out;
  });
  Sums all;
  for (const auto& x : sums) {
    all.w += x.w;
    all.w2 += x.w2;
    all.n += x.n;
  }
  const double mc_mean = all.w / all.n;
  const double mc_se = std::sqrt(std::max(0.0, all.w2 / all.n - mc_mean * mc_mean) / all.n);

  auto agg = record("intensity", p, opt.seed, -1);
  agg.metrics["max_rel_error_exact"] = max_rel_exact;
  agg.metrics["max_rel_error_limit"] = max_rel_limit;
  agg.metrics["chi_square"] = chi2;
  agg.metrics["bins_used"] = used;
  agg.metrics["limit_gap_small"] = gap_small;
  agg.metrics["limit_gap_large"] = gap_large;
  agg.metrics["mc_mass_ratio"] = mc_mean / p.lambda;
  agg.metrics["mc_mass_se"] = mc_se / p.lambda;
  for (int b = 0; b < cfg.h_bins; ++b) {
    agg.metrics["exact_mass_bin_" + std::to_string(b)] = exact[b];
    agg.metrics["limit_mass_bin_" + std::to_string(b)] = limit[b];
  }
  res.records.push_back(std::move(agg));

  res.checks.push_back(check("intensity mass integral", std::abs(mc_mean / p.lambda - 1.0) < cfg.mass_tolerance,
                             "estimate/lambda=" + num(mc_mean / p.lambda) + " se=" + num(mc_se / p.lambda) +
                                 " samples=" + std::to_string(all.n)));
  res.checks.push_back(check("intensity binned counts vs exact", used > 0 && max_rel_exact < cfg.max_rel_error,
                             "max relative error=" + num(max_rel_exact) + " over " + std::to_string(used) +
                                 " bins, chi2=" + num(chi2) + " (df " + std::to_string(cfg.h_bins) + ")"));
  res.checks.push_back(check("intensity limit gap shrinks", gap_large < gap_small,
                             "max |exact/limit - 1| at lambda=" + num(cfg.limit_lambda_small) + ": " +
                                 num(gap_small) + ", at lambda=" + num(cfg.limit_lambda_large) + ": " +
                                 num(gap_large)));
  res.checks.push_back(info("intensity binned counts vs limit", "max relative error=" + num(max_rel_limit)));
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_scaling_limit(const ScalingLimitConfig& cfg, const RunOptions& opt) {
  require(cfg.L > 0.0 && cfg.L <= 2.0, "L must be in (0, 2]");
  require(cfg.reps >= 2 && cfg.grid_n >= 2, "reps and grid_n must be >= 2");
  require(!cfg.shapes.empty() && cfg.lambdas.size() >= 2, "need shapes and at least two lambdas");
  ExperimentResult res;
  for (std::size_t gs = 0; gs < cfg.shapes.size(); ++gs) {
    const auto [alpha, beta] = cfg.shapes[gs];
    std::vector<double> medians;
    std::vector<Interval> cis;
    for (std::size_t gl = 0; gl < cfg.lambdas.size(); ++gl) {
      const ModelParams p = validate_params(cfg.d, alpha, beta, cfg.lambdas[gl]);
      const Scaling s(p);
      const auto grid = ball_grid(cfg.d - 1, cfg.L, cfg.grid_n);
      const std::uint64_t group = 16 * gs + gl;
      const auto sup = replicate<double>(cfg.reps, group, opt, [&](long long, RngStream& rng) {
        HullSample hs = sample_hull(rng, p, cfg.h_cut);
        std::vector<ScaledPoint> scaled;
        const Festoon f = exact_festoon(rng, p, s, hs, scaled);
        if (!hs.hull || !contains_origin_interior(*hs.hull)) {
          throw Error(ErrorCode::DegenerateInput, "sample hull does not contain the origin");
        }
        double best = 0.0;
        for (const auto& v : grid) {
          best = std::max(best, std::abs(rescaled_hull_boundary(*hs.hull, v, s) - f.phi(v)));
        }
        return best;
      });
      for (int r = 0; r < cfg.reps; ++r) {
        auto rec = record("scaling_limit", p, opt.seed, r);
        rec.metrics["sup_distance"] = sup[r];
        res.records.push_back(std::move(rec));
      }
      RngStream boot(opt.seed, stream_id(kBootstrapGroup + group, 0));
      medians.push_back(median(sup));
      cis.push_back(bootstrap_median_ci(sup, cfg.bootstrap, boot));
      auto agg = record("scaling_limit", p, opt.seed, -1);
      agg.metrics["median_sup_distance"] = medians.back();
      agg.metrics["median_ci_lo"] = cis.back().lo;
      agg.metrics["median_ci_hi"] = cis.back().hi;
      res.records.push_back(std::move(agg));
    }
    const bool endpoints = cis.back().hi < cis.front().lo;
    const std::string label = "scaling limit (alpha=" + num(alpha) + ", beta=" + num(beta) + ")";
    res.checks.push_back(check(label + " medians strictly decreasing", strictly_decreasing(medians),
                               "medians over lambda: " + join(medians)));
    res.checks.push_back(check(label + " endpoint CIs separated", endpoints,
                               "first CI [" + num(cis.front().lo) + ", " + num(cis.front().hi) + "], last CI [" +
                                   num(cis.back().lo) + ", " + num(cis.back().hi) + "]"));
  }
  return res;
}

// ---------------------------------------------------------------------------

namespace {

Functionals sample_functionals(RngStream& rng, const ModelParams& p, double h_cut, int kubota_dirs) {
  const HullSample hs = sample_hull(rng, p, h_cut);
  return polytope_functionals(hs.points, hs.hull, kubota_dirs, rng);
}

}  // namespace

ExperimentResult run_moments(const MomentsConfig& cfg, const RunOptions& opt) {
  require(cfg.reps >= 2, "moments needs reps >= 2");
  require(cfg.lambdas.size() >= 2, "moments needs at least two lambdas");
  const int d = cfg.d;
  const int ri = cfg.ratio_index == 0 ? d : cfg.ratio_index;
  require(ri >= 1 && ri <= d, "ratio_index out of range");
  ExperimentResult res;

  std::vector<double> x;
  std::vector<std::vector<double>> mean_f(d), var_f(d), var_v(d + 1);
  std::vector<double> ratio, ratio_half;
  for (std::size_t g = 0; g < cfg.lambdas.size(); ++g) {
    const ModelParams p = validate_params(d, cfg.alpha, cfg.beta, cfg.lambdas[g]);
    const auto fs = replicate<Functionals>(cfg.reps, g, opt, [&](long long, RngStream& rng) {
      return sample_functionals(rng, p, cfg.h_cut, cfg.kubota_dirs);
    });
    auto agg = record("moments", p, opt.seed, -1);
    for (int r = 0; r < cfg.reps; ++r) {
      auto rec = record("moments", p, opt.seed, r);
      for (int i = 1; i <= d; ++i) rec.metrics["V_" + std::to_string(i)] = fs[r].V[i];
      for (int j = 0; j < d; ++j) rec.metrics["f_" + std::to_string(j)] = static_cast<double>(fs[r].f[j]);
      res.records.push_back(std::move(rec));
    }
    x.push_back(std::log(cfg.beta * std::log(p.lambda)));
    for (int i = 1; i <= d; ++i) {
      std::vector<double> v(cfg.reps);
      for (int r = 0; r < cfg.reps; ++r) v[r] = fs[r].V[i];
      const auto st = summarize(v);
      const double norm = volume_normalizer(d, i, cfg.beta, p.lambda);
      agg.metrics["mean_V_" + std::to_string(i)] = st.mean;
      agg.metrics["var_V_" + std::to_string(i)] = st.variance;
      agg.metrics["ratio_V_" + std::to_string(i)] = st.mean / norm;
      var_v[i].push_back(st.variance);
      if (i == ri) {
        ratio.push_back(st.mean / norm);
        ratio_half.push_back(st.mean_ci95 / norm);
      }
    }
    for (int j = 0; j < d; ++j) {
      std::vector<double> v(cfg.reps);
      for (int r = 0; r < cfg.reps; ++r) v[r] = static_cast<double>(fs[r].f[j]);
      const auto st = summarize(v);
      agg.metrics["mean_f_" + std::to_string(j)] = st.mean;
      agg.metrics["var_f_" + std::to_string(j)] = st.variance;
      mean_f[j].push_back(st.mean);
      var_f[j].push_back(st.variance);
    }
    res.records.push_back(std::move(agg));
  }

  auto log_of = [](const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::log(v[i]);
    return out;
  };
  const double f_target = (d - 1) / 2.0;
  const ModelParams run_params{d, cfg.alpha, cfg.beta, 0.0};
  auto slopes = record("moments", run_params, opt.seed, -1);
  for (int j = 0; j < d; ++j) {
    const auto fm = linear_fit(x, log_of(mean_f[j]));
    const auto fv = linear_fit(x, log_of(var_f[j]));
    slopes.metrics["slope_mean_f_" + std::to_string(j)] = fm.slope;
    slopes.metrics["slope_var_f_" + std::to_string(j)] = fv.slope;
    if (j == 0) {
      res.checks.push_back(check("moments E[f_0] log-log slope",
                                 std::abs(fm.slope - f_target) <= cfg.f_slope_tolerance,
                                 "slope=" + num(fm.slope) + " (se " + num(fm.slope_se) + ") target=" +
                                     num(f_target) + " +/- " + num(cfg.f_slope_tolerance)));
      res.checks.push_back(check("moments var[f_0] log-log slope",
                                 std::abs(fv.slope - f_target) <= cfg.var_slope_tolerance,
                                 "slope=" + num(fv.slope) + " (se " + num(fv.slope_se) + ") target=" +
                                     num(f_target) + " +/- " + num(cfg.var_slope_tolerance)));
    } else {
      res.checks.push_back(info("moments E[f_" + std::to_string(j) + "] slope",
                                "slope=" + num(fm.slope) + " var slope=" + num(fv.slope) +
                                    " target=" + num(f_target)));
    }
  }
  for (int i = 1; i <= d; ++i) {
    const auto fv = linear_fit(x, log_of(var_v[i]));
    const double target = (4.0 * i - cfg.beta * (d + 3)) / (2.0 * cfg.beta);
    slopes.metrics["slope_var_V_" + std::to_string(i)] = fv.slope;
    res.checks.push_back(info("moments var[V_" + std::to_string(i) + "] slope",
                              "slope=" + num(fv.slope) + " (se " + num(fv.slope_se) + ") asymptotic exponent=" +
                                  num(target)));
  }
  res.records.push_back(std::move(slopes));

  const std::string vi = "V_" + std::to_string(ri);
  const double last = ratio.back();
  res.checks.push_back(check("moments E[" + vi + "] ratio band at largest lambda",
                             last >= cfg.ratio_lo && last <= cfg.ratio_hi,
                             "ratio=" + num(last) + " +/- " + num(ratio_half.back()) + " band [" +
                                 num(cfg.ratio_lo) + ", " + num(cfg.ratio_hi) + "]"));
  const bool separated = ratio.back() - ratio_half.back() > ratio.front() + ratio_half.front();
  res.checks.push_back(check("moments E[" + vi + "] ratio increasing", separated,
                             "endpoint 95% intervals: [" + num(ratio.front() - ratio_half.front()) + ", " +
                                 num(ratio.front() + ratio_half.front()) + "] -> [" +
                                 num(ratio.back() - ratio_half.back()) + ", " +
                                 num(ratio.back() + ratio_half.back()) + "]"));
  res.checks.push_back(info("moments E[" + vi + "] ratio path",
                            join(ratio) + (strictly_increasing(ratio) ? " (strictly increasing)"
                                                                      : " (not strictly increasing)")));
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_clt(const CltConfig& cfg, const RunOptions& opt) {
  require(cfg.reps >= 1000, "clt needs reps >= 1000");
  const ModelParams p = validate_params(cfg.params.d, cfg.params.alpha, cfg.params.beta, cfg.params.lambda);
  const int d = p.d;
  const auto fs = replicate<Functionals>(cfg.reps, 0, opt, [&](long long, RngStream& rng) {
    return sample_functionals(rng, p, cfg.h_cut, cfg.kubota_dirs);
  });
  ExperimentResult res;
  struct Metric {
    std::string name;
    bool integer;
    bool checked;
    std::vector<double> values;
  };
  std::vector<Metric> metrics;
  metrics.push_back({"f_0", true, true, {}});
  if (d - 1 != 0) metrics.push_back({"f_" + std::to_string(d - 1), true, false, {}});
  metrics.push_back({"V_1", false, d == 1, {}});
  if (d != 1) metrics.push_back({"V_" + std::to_string(d), false, true, {}});
  for (auto& m : metrics) m.values.resize(cfg.reps);
  for (int r = 0; r < cfg.reps; ++r) {
    auto rec = record("clt", p, opt.seed, r);
    for (auto& m : metrics) {
      const int idx = std::stoi(m.name.substr(2));
      m.values[r] = m.name[0] == 'f' ? static_cast<double>(fs[r].f[idx]) : fs[r].V[idx];
      rec.metrics[m.name] = m.values[r];
    }
    res.records.push_back(std::move(rec));
  }
  auto agg = record("clt", p, opt.seed, -1);
  for (const auto& m : metrics) {
    const auto st = summarize(m.values);
    const double sd = std::sqrt(st.variance);
    double ks = st.ks_normal;
    if (m.integer && sd > 0.0) {
      ks = ks_lattice(m.values, [&](double t) { return standard_normal_cdf((t - st.mean) / sd); });
    }
    agg.metrics["skewness_" + m.name] = st.skewness;
    agg.metrics["excess_kurtosis_" + m.name] = st.excess_kurtosis;
    agg.metrics["ks_" + m.name] = ks;
    agg.metrics["ks_raw_" + m.name] = st.ks_normal;
    const std::string detail = "skewness=" + num(st.skewness) + " excess kurtosis=" + num(st.excess_kurtosis) +
                               " ks=" + num(ks) + (m.integer ? " (lattice-corrected; raw " + num(st.ks_normal) + ")" : "");
    if (m.checked) {
      const bool ok = std::abs(st.skewness) < cfg.max_abs_skewness &&
                      std::abs(st.excess_kurtosis) < cfg.max_abs_excess_kurtosis && ks < cfg.max_ks;
      res.checks.push_back(check("clt " + m.name, ok, detail));
    } else {
      res.checks.push_back(info("clt " + m.name, detail));
    }
  }
  res.records.push_back(std::move(agg));
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_tails(const TailsConfig& cfg, const RunOptions& opt) {
  require(cfg.reps >= 500, "tails needs reps >= 500");
  require(cfg.M > 0.0 && cfg.grid_n >= 2, "tails needs M > 0 and grid_n >= 2");
  require(cfg.t_grid.size() >= 2, "tails needs at least two t values");
  const ModelParams p = validate_params(cfg.params.d, cfg.params.alpha, cfg.params.beta, cfg.params.lambda);
  const Scaling s(p);
  const auto grid = ball_grid(p.d - 1, cfg.M, cfg.grid_n);
  const auto sups = replicate<double>(cfg.reps, 0, opt, [&](long long, RngStream& rng) {
    HullSample hs = sample_hull(rng, p, cfg.h_cut);
    // Skipped points sit above the cut, so their quasi-grains stay above it too:
    // the envelope is exact wherever it is below the cut.
    for (int attempt = 0; attempt < 2; ++attempt) {
      const auto scaled = rescale_all(s, hs.points);
      if (scaled.empty()) {
        add_inner_points(rng, p, hs);
        continue;
      }
      double best = 0.0;
      double top = -std::numeric_limits<double>::infinity();
      for (const auto& v : grid) {
        const double psi = psi_lambda_boundary(scaled, v, p, s.r_lambda());
        best = std::max(best, std::abs(psi));
        top = std::max(top, psi);
      }
      if (top < skipped_height(s, hs)) return best;
      add_inner_points(rng, p, hs);
    }
    throw Error(ErrorCode::DegenerateInput, "tails: envelope undefined");
  });
  ExperimentResult res;
  for (int r = 0; r < cfg.reps; ++r) {
    auto rec = record("tails", p, opt.seed, r);
    rec.metrics["sup_abs_psi"] = sups[r];
    res.records.push_back(std::move(rec));
  }
  std::vector<double> probs;
  auto agg = record("tails", p, opt.seed, -1);
  for (double t : cfg.t_grid) {
    const auto hits = std::count_if(sups.begin(), sups.end(), [&](double x) { return x >= t; });
    probs.push_back(static_cast<double>(hits) / cfg.reps);
    agg.metrics["tail_prob_t_" + num(t)] = probs.back();
  }
  bool monotone = true;
  for (std::size_t i = 1; i < probs.size(); ++i) monotone = monotone && probs[i] <= probs[i - 1];
  res.checks.push_back(check("tails probabilities monotone in t", monotone, "P(sup >= t): " + join(probs)));
  const bool positive = std::all_of(probs.begin(), probs.end(), [](double q) { return q > 0.0; });
  if (positive) {
    std::vector<double> lp;
    for (double q : probs) lp.push_back(std::log(q));
    const auto fit = linear_fit(cfg.t_grid, lp);
    agg.metrics["fit_slope"] = fit.slope;
    agg.metrics["fit_r2"] = fit.r2;
    res.checks.push_back(check("tails exponential decay", fit.slope < 0.0 && fit.r2 > cfg.min_r2,
                               "slope=" + num(fit.slope) + " r2=" + num(fit.r2) + " (min " + num(cfg.min_r2) + ")"));
  } else {
    res.checks.push_back(check("tails exponential decay", false,
                               "some tail probability is 0; increase reps or lower t"));
  }
  res.records.push_back(std::move(agg));
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_slln(const SllnConfig& cfg, const RunOptions& opt) {
  require(cfg.a > 1.0, "slln needs a > 1");
  require(cfg.k_max >= 4, "slln needs k_max >= 4");
  require(cfg.i >= 1 && cfg.i <= cfg.d, "slln index i out of range");
  require(cfg.reps >= 2, "slln needs reps >= 2");
  const double p_min = (4.0 * cfg.i - cfg.beta * (cfg.d + 3)) / (4.0 * cfg.i);
  require(cfg.p > p_min, "slln needs p > (4i - beta(d+3))/(4i)");
  ExperimentResult res;
  std::vector<double> medians;
  std::vector<Interval> cis;
  for (int k = 1; k <= cfg.k_max; ++k) {
    const ModelParams p = validate_params(cfg.d, cfg.alpha, cfg.beta, std::pow(cfg.a, k));
    const auto vs = replicate<double>(cfg.reps, k, opt, [&](long long, RngStream& rng) {
      return sample_functionals(rng, p, 6.0, cfg.kubota_dirs).V[cfg.i];
    });
    const double mean = summarize(vs).mean;
    const double norm = std::pow(std::log(p.lambda), cfg.p * cfg.i / cfg.beta);
    std::vector<double> dev(cfg.reps);
    for (int r = 0; r < cfg.reps; ++r) {
      dev[r] = std::abs(vs[r] - mean) / norm;
      auto rec = record("slln", p, opt.seed, r);
      rec.metrics["V_" + std::to_string(cfg.i)] = vs[r];
      rec.metrics["normalized_deviation"] = dev[r];
      res.records.push_back(std::move(rec));
    }
    RngStream boot(opt.seed, stream_id(kBootstrapGroup + k, 0));
    medians.push_back(median(dev));
    cis.push_back(bootstrap_median_ci(dev, cfg.bootstrap, boot));
    auto agg = record("slln", p, opt.seed, -1);
    agg.metrics["median_normalized_deviation"] = medians.back();
    agg.metrics["median_ci_lo"] = cis.back().lo;
    agg.metrics["median_ci_hi"] = cis.back().hi;
    res.records.push_back(std::move(agg));
  }
  res.checks.push_back(check("slln normalized deviations decrease", cis.back().hi < cis.front().lo,
                             "median CI at k=1 [" + num(cis.front().lo) + ", " + num(cis.front().hi) +
                                 "], at k=" + std::to_string(cfg.k_max) + " [" + num(cis.back().lo) + ", " +
                                 num(cis.back().hi) + "]"));
  res.checks.push_back(info("slln medians", join(medians) + (strictly_decreasing(medians)
                                                                 ? " (strictly decreasing)"
                                                                 : " (not strictly decreasing)")));
  return res;
}

// ---------------------------------------------------------------------------

double concentration_bound(int d, int i, double y) {
  return std::min(1.0, 2.0 * std::exp(-y * y / std::pow(2.0, 2 * d + i + 7)));
}

ExperimentResult run_concentration(const ConcentrationConfig& cfg, const RunOptions& opt) {
  require(cfg.reps >= 2000, "concentration needs reps >= 2000");
  const ModelParams p = validate_params(cfg.params.d, cfg.params.alpha, cfg.params.beta, cfg.params.lambda);
  require(cfg.i >= 1 && cfg.i <= p.d, "concentration index i out of range");
  require(!cfg.y_grid.empty(), "concentration needs a y grid");
  const auto vs = replicate<double>(cfg.reps, 0, opt, [&](long long, RngStream& rng) {
    return sample_functionals(rng, p, cfg.h_cut, cfg.kubota_dirs).V[cfg.i];
  });
  ExperimentResult res;
  const std::string vi = "V_" + std::to_string(cfg.i);
  for (int r = 0; r < cfg.reps; ++r) {
    auto rec = record("concentration", p, opt.seed, r);
    rec.metrics[vi] = vs[r];
    res.records.push_back(std::move(rec));
  }
  const auto st = summarize(vs);
  const double sd = std::sqrt(st.variance);
  auto agg = record("concentration", p, opt.seed, -1);
  std::vector<double> probs;
  bool ok = true;
  std::string detail;
  for (double y : cfg.y_grid) {
    const auto hits = std::count_if(vs.begin(), vs.end(), [&](double v) { return std::abs(v - st.mean) >= y * sd; });
    const double emp = static_cast<double>(hits) / cfg.reps;
    const double bound = concentration_bound(p.d, cfg.i, y);
    const double se = std::sqrt(bound * (1.0 - bound) / cfg.reps);
    ok = ok && emp <= bound + 3.0 * se;
    probs.push_back(emp);
    agg.metrics["empirical_y_" + num(y)] = emp;
    agg.metrics["bound_y_" + num(y)] = bound;
    detail += (detail.empty() ? "" : "; ") + ("y=" + num(y) + ": " + num(emp) + " <= " + num(bound));
  }
  bool monotone = true;
  for (std::size_t k = 1; k < probs.size(); ++k) monotone = monotone && probs[k] <= probs[k - 1];
  res.records.push_back(std::move(agg));
  res.checks.push_back(check("concentration bound not exceeded", ok, detail));
  res.checks.push_back(check("concentration probabilities monotone in y", monotone, join(probs)));
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult run_vertex_correspondence(const VertexCorrespondenceConfig& cfg,
                                           const RunOptions& opt) {
  require(cfg.reps >= 1 && cfg.L > 0.0, "vertex correspondence needs reps >= 1 and L > 0");
  const ModelParams p = validate_params(cfg.params.d, cfg.params.alpha, cfg.params.beta, cfg.params.lambda);
  const Scaling s(p);
  struct Counts {
    double hull = 0;
    double ext = 0;
    double common = 0;
  };
  const auto counts = replicate<Counts>(cfg.reps, 0, opt, [&](long long, RngStream& rng) {
    HullSample hs = sample_hull(rng, p, cfg.h_cut);
    std::vector<ScaledPoint> scaled;
    const Festoon f = exact_festoon(rng, p, s, hs, scaled);
    if (!hs.hull) throw Error(ErrorCode::DegenerateInput, "degenerate sample hull");
    auto inside = [&](std::size_t i) {
      double n2 = 0.0;
      for (double x : scaled[i].v) n2 += x * x;
      return n2 <= cfg.L * cfg.L;
    };
    std::vector<std::size_t> a;
    for (std::size_t i : hs.hull->source_index) {
      if (inside(i)) a.push_back(i);
    }
    std::sort(a.begin(), a.end());
    std::vector<std::size_t> b;
    for (std::size_t i : f.extreme_indices()) {
      if (inside(i)) b.push_back(i);
    }
    std::vector<std::size_t> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    return Counts{static_cast<double>(a.size()), static_cast<double>(b.size()), static_cast<double>(both.size())};
  });
  ExperimentResult res;
  double common = 0.0;
  double uni = 0.0;
  for (int r = 0; r < cfg.reps; ++r) {
    auto rec = record("vertex_correspondence", p, opt.seed, r);
    rec.metrics["hull_vertices"] = counts[r].hull;
    rec.metrics["extreme_points"] = counts[r].ext;
    rec.metrics["common"] = counts[r].common;
    res.records.push_back(std::move(rec));
    common += counts[r].common;
    uni += counts[r].hull + counts[r].ext - counts[r].common;
  }
  const double match = uni > 0.0 ? common / uni : 1.0;
  auto agg = record("vertex_correspondence", p, opt.seed, -1);
  agg.metrics["match_fraction"] = match;
  agg.metrics["mismatches"] = uni - common;
  res.records.push_back(std::move(agg));
  res.checks.push_back(check("vertex correspondence", match >= cfg.min_match,
                             "matched " + num(common) + " of " + num(uni) + " (" + num(match) + ", min " +
                                 num(cfg.min_match) + ")"));
  return res;
}

}  // namespace ggp
