#include "ggp/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "ggp/error.hpp"
#include "ggp/parallel.hpp"

namespace ggp::cli {

namespace {

using json = nlohmann::json;
using Table = std::map<std::string, std::function<void(const json&)>>;

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ValidationError, field + ": " + why);
}

double read_number(const json& v, const std::string& key) {
  if (!v.is_number()) invalid(key, "expected a number");
  return v.get<double>();
}

long long read_integer(const json& v, const std::string& key) {
  const double x = read_number(v, key);
  if (std::floor(x) != x || std::abs(x) > 9.0e15) invalid(key, "expected an integer");
  return v.is_number_integer() ? v.get<long long>() : static_cast<long long>(x);
}

void read(const json& v, const std::string& key, double& out) { out = read_number(v, key); }

void read(const json& v, const std::string& key, int& out) {
  const long long x = read_integer(v, key);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) invalid(key, "out of range");
  out = static_cast<int>(x);
}

void read(const json& v, const std::string& key, long long& out) { out = read_integer(v, key); }

template <class T>
void read(const json& v, const std::string& key, std::vector<T>& out) {
  out.clear();
  if (!v.is_array()) {
    out.emplace_back();
    read(v, key, out.back());
    return;
  }
  if (v.empty()) invalid(key, "expected a non-empty list");
  for (const auto& x : v) {
    out.emplace_back();
    read(x, key, out.back());
  }
}

void read(const json& v, const std::string& key, std::vector<std::pair<double, double>>& out) {
  out.clear();
  if (!v.is_array() || v.empty()) invalid(key, "expected a non-empty list of [alpha, beta] pairs");
  for (const auto& x : v) {
    if (!x.is_array() || x.size() != 2) invalid(key, "expected [alpha, beta] pairs");
    out.emplace_back(read_number(x[0], key), read_number(x[1], key));
  }
}

template <class T>
void bind_key(Table& t, const std::string& key, T& target) {
  t[key] = [&target, key](const json& v) { read(v, key, target); };
}

void bind_shape(Table& t, int& d, double& alpha, double& beta) {
  bind_key(t, "d", d);
  bind_key(t, "alpha", alpha);
  bind_key(t, "beta", beta);
}

void bind_params(Table& t, ModelParams& p) {
  bind_shape(t, p.d, p.alpha, p.beta);
  bind_key(t, "lambda", p.lambda);
}

void check_shape(int d, double alpha, double beta) {
  if (d < 2) invalid("d", "must be >= 2");
  if (!(alpha > -1.0) || !std::isfinite(alpha)) invalid("alpha", "must be > -1");
  if (!(beta >= 1.0) || !std::isfinite(beta)) invalid("beta", "must be >= 1");
}

void check_lambda(double lambda, const char* key = "lambda") {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) invalid(key, "must be > 0");
}

void check_params(const ModelParams& p) {
  check_shape(p.d, p.alpha, p.beta);
  check_lambda(p.lambda);
}

void check_min(double x, double lo, const char* key) {
  if (!(x >= lo)) invalid(key, "must be >= " + format_number(lo));
}

void check_positive(double x, const char* key) {
  if (!(x > 0.0) || !std::isfinite(x)) invalid(key, "must be > 0");
}

// Binds the experiment-specific keys; the returned function validates after binding.
std::function<void()> bind_experiment(const std::string& name, ExperimentConfig& cfg, Table& t) {
  if (name == "gumbel") {
    auto& c = cfg.emplace<GumbelConfig>();
    bind_key(t, "alpha", c.alpha);
    bind_key(t, "beta", c.beta);
    bind_key(t, "n", c.n_values);
    bind_key(t, "reps", c.reps);
    bind_key(t, "ks_threshold", c.ks_threshold);
    bind_key(t, "trend_runs", c.trend_runs);
    return [&c] {
      check_shape(2, c.alpha, c.beta);
      for (long long n : c.n_values) check_min(static_cast<double>(n), 1, "n");
      check_min(c.reps, 1, "reps");
      check_min(c.trend_runs, 0, "trend_runs");
    };
  }
  if (name == "intensity") {
    auto& c = cfg.emplace<IntensityConfig>();
    bind_params(t, c.params);
    bind_key(t, "spatial_radius", c.spatial_radius);
    bind_key(t, "h_min", c.h_min);
    bind_key(t, "h_max", c.h_max);
    bind_key(t, "h_bins", c.h_bins);
    bind_key(t, "reps", c.reps);
    bind_key(t, "min_expected", c.min_expected);
    bind_key(t, "max_rel_error", c.max_rel_error);
    bind_key(t, "mc_samples", c.mc_samples);
    bind_key(t, "mass_tolerance", c.mass_tolerance);
    bind_key(t, "limit_lambda_small", c.limit_lambda_small);
    bind_key(t, "limit_lambda_large", c.limit_lambda_large);
    return [&c] {
      check_params(c.params);
      check_positive(c.spatial_radius, "spatial_radius");
      if (!(c.h_min < c.h_max)) invalid("h_min", "must be finite and below h_max");
      check_min(c.h_bins, 1, "h_bins");
      check_min(c.reps, 1, "reps");
      check_min(static_cast<double>(c.mc_samples), 1000, "mc_samples");
      check_lambda(c.limit_lambda_small, "limit_lambda_small");
      check_lambda(c.limit_lambda_large, "limit_lambda_large");
    };
  }
  if (name == "scaling_limit") {
    auto& c = cfg.emplace<ScalingLimitConfig>();
    bind_key(t, "d", c.d);
    bind_key(t, "shapes", c.shapes);
    bind_key(t, "lambdas", c.lambdas);
    bind_key(t, "L", c.L);
    bind_key(t, "grid_n", c.grid_n);
    bind_key(t, "reps", c.reps);
    bind_key(t, "h_cut", c.h_cut);
    bind_key(t, "bootstrap", c.bootstrap);
    return [&c] {
      for (const auto& [a, b] : c.shapes) check_shape(c.d, a, b);
      for (double l : c.lambdas) check_lambda(l, "lambdas");
      if (!(c.L > 0.0 && c.L <= 2.0)) invalid("L", "must be in (0, 2]");
      check_min(c.grid_n, 2, "grid_n");
      check_min(c.reps, 1, "reps");
      check_min(c.bootstrap, 1, "bootstrap");
    };
  }
  if (name == "moments") {
    auto& c = cfg.emplace<MomentsConfig>();
    bind_shape(t, c.d, c.alpha, c.beta);
    bind_key(t, "lambdas", c.lambdas);
    bind_key(t, "reps", c.reps);
    bind_key(t, "ratio_index", c.ratio_index);
    bind_key(t, "ratio_lo", c.ratio_lo);
    bind_key(t, "ratio_hi", c.ratio_hi);
    bind_key(t, "f_slope_tolerance", c.f_slope_tolerance);
    bind_key(t, "var_slope_tolerance", c.var_slope_tolerance);
    bind_key(t, "kubota_dirs", c.kubota_dirs);
    bind_key(t, "h_cut", c.h_cut);
    return [&c] {
      check_shape(c.d, c.alpha, c.beta);
      for (double l : c.lambdas) check_lambda(l, "lambdas");
      check_min(c.reps, 1, "reps");
      if (c.ratio_index < 0 || c.ratio_index > c.d) invalid("ratio_index", "must be in [0, d]");
      check_min(c.kubota_dirs, 1, "kubota_dirs");
    };
  }
  if (name == "clt") {
    auto& c = cfg.emplace<CltConfig>();
    bind_params(t, c.params);
    bind_key(t, "reps", c.reps);
    bind_key(t, "max_abs_skewness", c.max_abs_skewness);
    bind_key(t, "max_abs_excess_kurtosis", c.max_abs_excess_kurtosis);
    bind_key(t, "max_ks", c.max_ks);
    bind_key(t, "kubota_dirs", c.kubota_dirs);
    bind_key(t, "h_cut", c.h_cut);
    return [&c] {
      check_params(c.params);
      check_min(c.reps, 1, "reps");
      check_min(c.kubota_dirs, 1, "kubota_dirs");
    };
  }
  if (name == "tails") {
    auto& c = cfg.emplace<TailsConfig>();
    bind_params(t, c.params);
    bind_key(t, "M", c.M);
    bind_key(t, "t_grid", c.t_grid);
    bind_key(t, "reps", c.reps);
    bind_key(t, "grid_n", c.grid_n);
    bind_key(t, "min_r2", c.min_r2);
    bind_key(t, "h_cut", c.h_cut);
    return [&c] {
      check_params(c.params);
      check_positive(c.M, "M");
      check_min(c.reps, 1, "reps");
      check_min(c.grid_n, 2, "grid_n");
    };
  }
  if (name == "slln") {
    auto& c = cfg.emplace<SllnConfig>();
    bind_shape(t, c.d, c.alpha, c.beta);
    bind_key(t, "i", c.i);
    bind_key(t, "a", c.a);
    bind_key(t, "k_max", c.k_max);
    bind_key(t, "p", c.p);
    bind_key(t, "reps", c.reps);
    bind_key(t, "bootstrap", c.bootstrap);
    bind_key(t, "kubota_dirs", c.kubota_dirs);
    return [&c] {
      check_shape(c.d, c.alpha, c.beta);
      if (c.i < 1 || c.i > c.d) invalid("i", "must be in [1, d]");
      if (!(c.a > 1.0)) invalid("a", "must be > 1");
      check_min(c.k_max, 4, "k_max");
      check_min(c.reps, 1, "reps");
      check_min(c.bootstrap, 1, "bootstrap");
    };
  }
  if (name == "concentration") {
    auto& c = cfg.emplace<ConcentrationConfig>();
    bind_params(t, c.params);
    bind_key(t, "i", c.i);
    bind_key(t, "y_grid", c.y_grid);
    bind_key(t, "reps", c.reps);
    bind_key(t, "kubota_dirs", c.kubota_dirs);
    bind_key(t, "h_cut", c.h_cut);
    return [&c] {
      check_params(c.params);
      if (c.i < 1 || c.i > c.params.d) invalid("i", "must be in [1, d]");
      for (double y : c.y_grid) check_min(y, 0.0, "y_grid");
      check_min(c.reps, 1, "reps");
    };
  }
  if (name == "vertex_correspondence") {
    auto& c = cfg.emplace<VertexCorrespondenceConfig>();
    bind_params(t, c.params);
    bind_key(t, "L", c.L);
    bind_key(t, "reps", c.reps);
    bind_key(t, "min_match", c.min_match);
    bind_key(t, "h_cut", c.h_cut);
    return [&c] {
      check_params(c.params);
      check_positive(c.L, "L");
      check_min(c.reps, 1, "reps");
    };
  }
  invalid("experiment", "unknown experiment \"" + name + "\"");
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r') {
      continue;
    } else if (c == '\n') {
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
      ++line;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::ParseError, "unterminated quote at line " + std::to_string(line));
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
T parse_value(const std::string& s, std::size_t line, const char* column) {
  T out{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": bad " + column + " value \"" + s + "\"");
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view source) {
  json j;
  try {
    j = json::parse(source.begin(), source.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, source.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (source[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) invalid("config", "expected a JSON object");
  if (!j.contains("experiment") || !j["experiment"].is_string()) invalid("experiment", "missing or not a string");

  RunConfig rc;
  rc.experiment = j["experiment"].get<std::string>();
  rc.options.workers = default_workers();
  Table t;
  const auto validate = bind_experiment(rc.experiment, rc.config, t);
  t["experiment"] = [](const json&) {};
  t["seed"] = [&rc](const json& v) {
    const long long s = read_integer(v, "seed");
    if (s < 0) invalid("seed", "must be >= 0");
    rc.options.seed = static_cast<std::uint64_t>(s);
  };
  bind_key(t, "workers", rc.options.workers);
  t["output_path"] = [&rc](const json& v) {
    if (!v.is_string()) invalid("output_path", "expected a string");
    rc.output_path = v.get<std::string>();
  };
  t["output_format"] = [&rc](const json& v) {
    if (v == "csv") rc.format = OutputFormat::csv;
    else if (v == "json") rc.format = OutputFormat::json;
    else invalid("output_format", "expected \"csv\" or \"json\"");
  };
  for (const auto& [key, value] : j.items()) {
    const auto it = t.find(key);
    if (it == t.end()) invalid("unknown key", "\"" + key + "\"");
    it->second(value);
  }
  if (rc.options.workers < 1) invalid("workers", "must be >= 1");
  validate();
  return rc;
}

ExperimentResult execute(const RunConfig& config) {
  return std::visit(
      [&](const auto& c) -> ExperimentResult {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, GumbelConfig>) return run_gumbel(c, config.options);
        if constexpr (std::is_same_v<T, IntensityConfig>) return run_intensity(c, config.options);
        if constexpr (std::is_same_v<T, ScalingLimitConfig>) return run_scaling_limit(c, config.options);
        if constexpr (std::is_same_v<T, MomentsConfig>) return run_moments(c, config.options);
        if constexpr (std::is_same_v<T, CltConfig>) return run_clt(c, config.options);
        if constexpr (std::is_same_v<T, TailsConfig>) return run_tails(c, config.options);
        if constexpr (std::is_same_v<T, SllnConfig>) return run_slln(c, config.options);
        if constexpr (std::is_same_v<T, ConcentrationConfig>) return run_concentration(c, config.options);
        if constexpr (std::is_same_v<T, VertexCorrespondenceConfig>)
          return run_vertex_correspondence(c, config.options);
      },
      config.config);
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<RecordRow> to_rows(const std::vector<ExperimentRecord>& records) {
  std::vector<RecordRow> rows;
  for (const auto& r : records) {
    for (const auto& [metric, value] : r.metrics) {
      rows.push_back({r.experiment, r.params.lambda, r.params.d, r.params.alpha, r.params.beta, r.seed,
                      r.replication, metric, value});
    }
  }
  return rows;
}

std::string records_csv(const std::vector<ExperimentRecord>& records) {
  std::string out(kRecordsHeader);
  out += '\n';
  for (const auto& r : to_rows(records)) {
    out += csv_field(r.experiment) + ',' + format_number(r.lambda) + ',' + std::to_string(r.d) + ',' +
           format_number(r.alpha) + ',' + format_number(r.beta) + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.replication) + ',' + csv_field(r.metric) + ',' + format_number(r.value) + '\n';
  }
  return out;
}

std::string records_json(const std::vector<ExperimentRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    json m = json::object();
    for (const auto& [k, v] : r.metrics) m[k] = v;
    arr.push_back({{"experiment", r.experiment},
                   {"lambda", r.params.lambda},
                   {"d", r.params.d},
                   {"alpha", r.params.alpha},
                   {"beta", r.params.beta},
                   {"seed", r.seed},
                   {"replication", r.replication},
                   {"metrics", m}});
  }
  json doc = {{"schema_version", kRecordsSchemaVersion}, {"records", arr}};
  return doc.dump(1) + "\n";
}

std::vector<RecordRow> parse_records_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "records file is empty");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
  if (header != kRecordsHeader) throw Error(ErrorCode::ParseError, "line 1: unexpected header \"" + header + "\"");
  std::vector<RecordRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    const std::size_t line = i + 1;
    if (f.size() != 9) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": expected 9 fields");
    }
    RecordRow r;
    r.experiment = f[0];
    r.lambda = parse_value<double>(f[1], line, "lambda");
    r.d = parse_value<int>(f[2], line, "d");
    r.alpha = parse_value<double>(f[3], line, "alpha");
    r.beta = parse_value<double>(f[4], line, "beta");
    r.seed = parse_value<std::uint64_t>(f[5], line, "seed");
    r.replication = parse_value<long long>(f[6], line, "replication");
    r.metric = f[7];
    r.value = parse_value<double>(f[8], line, "value");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SummaryRow> summarize_records(const std::vector<RecordRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "no records to summarize");
  std::map<std::string, std::size_t> order;
  for (const auto& r : rows) order.emplace(r.experiment, order.size());
  std::map<std::tuple<std::size_t, double, std::string>, std::vector<double>> groups;
  for (const auto& r : rows) groups[{order[r.experiment], r.lambda, r.metric}].push_back(r.value);
  std::vector<std::string> names(order.size());
  for (const auto& [name, idx] : order) names[idx] = name;

  std::vector<SummaryRow> out;
  for (const auto& [key, values] : groups) {
    SummaryRow s;
    s.experiment = names[std::get<0>(key)];
    s.lambda = std::get<1>(key);
    s.metric = std::get<2>(key);
    s.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / s.n;
    if (s.n < 2) {
      s.var = std::numeric_limits<double>::quiet_NaN();
      s.ci95 = std::numeric_limits<double>::quiet_NaN();
    } else {
      double ss = 0.0;
      for (double v : values) ss += (v - s.mean) * (v - s.mean);
      s.var = ss / (s.n - 1);
      s.ci95 = 1.96 * std::sqrt(s.var / s.n);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out(kSummaryHeader);
  out += '\n';
  for (const auto& s : rows) {
    out += csv_field(s.experiment) + ',' + format_number(s.lambda) + ',' + csv_field(s.metric) + ',' +
           std::to_string(s.n) + ',' + format_number(s.mean) + ',' +
           (std::isnan(s.var) ? std::string() : format_number(s.var)) + ',' +
           (std::isnan(s.ci95) ? std::string() : format_number(s.ci95)) + '\n';
  }
  return out;
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open \"" + path + "\" for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw Error(ErrorCode::IoError, "failed writing \"" + path + "\"");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace ggp::cli
