#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "ggp/cli.hpp"
#include "ggp/error.hpp"

namespace {

using namespace ggp;

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                std::optional<int> workers, std::optional<std::string> out) {
  cli::RunConfig rc = cli::parse_config(cli::read_file(config_path));
  if (seed) rc.options.seed = *seed;
  if (workers) {
    if (*workers < 1) throw Error(ErrorCode::ValidationError, "workers: must be >= 1");
    rc.options.workers = *workers;
  }
  if (out) rc.output_path = *out;

  const ExperimentResult res = cli::execute(rc);
  const std::filesystem::path dir(rc.output_path);
  const bool json = rc.format == cli::OutputFormat::json;
  const std::string records_path = (dir / (rc.experiment + "_records" + (json ? ".json" : ".csv"))).string();
  const std::string summary_path = (dir / (rc.experiment + "_summary.csv")).string();
  cli::write_file(records_path, json ? cli::records_json(res.records) : cli::records_csv(res.records));
  cli::write_file(summary_path, cli::summary_csv(cli::summarize_records(cli::to_rows(res.records))));

  for (const auto& c : res.checks) {
    std::cout << to_string(c.verdict) << "  " << c.name << ": " << c.detail << "\n";
  }
  std::cout << "records: " << records_path << "\nsummary: " << summary_path << "\n";
  return res.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex hulls of Poisson processes with generalized gamma densities"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;
  auto* run = app.add_subcommand("run", "Run an experiment");
  run->add_option("--config", config_path, "JSON config")->required();
  run->add_option("--seed", seed, "Override the seed");
  run->add_option("--workers", workers, "Worker threads (default: GGP_WORKERS or all cores)");
  run->add_option("--out", out, "Output directory");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("--config", validate_path, "JSON config")->required();

  std::string records_path;
  std::optional<std::string> summary_out;
  auto* summarize = app.add_subcommand("summarize", "Summarize a records CSV");
  summarize->add_option("records", records_path, "Records CSV")->required();
  summarize->add_option("--out", summary_out, "Write the summary here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config_path, seed, workers, out);
    if (*validate) {
      const auto rc = cli::parse_config(cli::read_file(validate_path));
      std::cout << "ok: " << rc.experiment << "\n";
      return 0;
    }
    if (*summarize) {
      const auto rows = cli::parse_records_csv(cli::read_file(records_path));
      const std::string text = cli::summary_csv(cli::summarize_records(rows));
      if (summary_out) cli::write_file(*summary_out, text);
      else std::cout << text;
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
