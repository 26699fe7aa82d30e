// Command line front end: run beta0 sweeps on the pendulum task, emit
// update-weight contour fields, summarize finished sweeps, and run the
// numeric selftest.

#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "wfl/harness/config.hpp"
#include "wfl/harness/contour.hpp"
#include "wfl/harness/csv.hpp"
#include "wfl/harness/selftest.hpp"
#include "wfl/harness/svg.hpp"
#include "wfl/harness/sweep.hpp"

namespace fs = std::filesystem;
using namespace wfl;

namespace {

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const std::string& seeds, int episodes, int jobs) {
  std::vector<harness::ExperimentConfig> configs = harness::load_config_file(config_path);
  for (auto& cfg : configs) {
    if (!seeds.empty()) cfg.seeds = harness::parse_seed_spec(seeds);
    if (episodes > 0) cfg.episodes = episodes;
  }
  const harness::SweepResult result = harness::run_sweep(configs, out_dir, jobs);
  int failed = 0;
  for (const auto& co : result.configs) {
    int ok = 0;
    for (const auto& so : co.seeds) {
      ok += so.ok;
      failed += !so.ok;
    }
    std::cout << co.config.name << ": " << ok << "/" << co.seeds.size() << " seeds completed";
    if (!co.aggregate_csv_path.empty()) std::cout << " -> " << co.aggregate_csv_path;
    std::cout << '\n';
  }
  std::cout << "manifest: " << result.manifest_path << '\n';
  return failed == 0 ? 0 : 1;
}

int cmd_contour(const std::vector<double>& lambdas, const std::string& bound_kind,
                double bound_value, int grid, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const BoundConvention bound = bound_kind == "lower" ? BoundConvention::lower(bound_value)
                                                      : BoundConvention::upper(bound_value);
  for (double lambda : lambdas) {
    const harness::ContourField field =
        harness::emit_contour_field(lambda, bound, grid, -1.0, 1.0);
    const std::string stem =
        "contour_" + bound_kind + "_lambda" + harness::format_double(lambda);
    const std::string csv_path = (fs::path(out_dir) / (stem + ".csv")).string();
    const std::string svg_path = (fs::path(out_dir) / (stem + ".svg")).string();
    harness::write_text_file(csv_path, harness::contour_csv_text(field));
    harness::write_text_file(
        svg_path, harness::contour_svg("update weight, lambda=" +
                                           harness::format_double(lambda) + ", " + bound_kind +
                                           " bound",
                                       field));
    std::cout << csv_path << '\n' << svg_path << '\n';
  }
  return 0;
}

int cmd_summarize(const std::string& sweep_dir, int window, double threshold) {
  const std::string manifest_text =
      harness::read_text_file((fs::path(sweep_dir) / "manifest.json").string());
  const nlohmann::json manifest = nlohmann::json::parse(manifest_text);

  std::vector<harness::ConfigSummary> rows;
  for (const auto& mc : manifest.at("configs")) {
    std::vector<harness::LearningCurve> curves;
    for (const auto& ms : mc.at("seeds")) {
      if (ms.at("status") != "ok") continue;
      const std::string csv =
          (fs::path(sweep_dir) / ms.at("csv").get<std::string>()).string();
      curves.push_back(harness::parse_seed_csv(harness::read_text_file(csv)));
    }
    if (curves.empty()) continue;
    const std::uint64_t hash =
        std::stoull(mc.at("config_hash").get<std::string>(), nullptr, 16);
    rows.push_back(harness::summarize_config(mc.at("name").get<std::string>(), hash, curves,
                                             window, threshold));
  }
  const std::string table = harness::summary_table(rows);
  std::cout << table;
  const std::string out_csv = (fs::path(sweep_dir) / "summary.csv").string();
  harness::write_text_file(out_csv, table);
  std::cout << "written: " << out_csv << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weber-Fechner TD actor-critic experiment driver"};
  app.require_subcommand(1);

  // sweep
  std::string config_path;
  std::string out_dir = "out";
  std::string seeds;
  int episodes = 0;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  CLI::App* sweep = app.add_subcommand("sweep", "Train configs from a config file");
  sweep->add_option("--config", config_path, "config file path")->required();
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--seeds", seeds, "override seeds, e.g. 0..9 or 1,2,3");
  sweep->add_option("--episodes", episodes, "override episode count");
  sweep->add_option("--jobs", jobs, "parallel workers");

  // contour
  std::vector<double> lambdas = {0.1, 0.5, 0.9};
  std::string bound_kind = "upper";
  double bound_value = std::numeric_limits<double>::quiet_NaN();
  int grid = 201;
  std::string contour_out = "out";
  CLI::App* contour = app.add_subcommand("contour", "Emit update-weight contour fields");
  contour->add_option("--lambda", lambdas, "lambda values in (0,1)");
  contour->add_option("--bound", bound_kind, "upper or lower")
      ->check(CLI::IsMember({"upper", "lower"}));
  contour->add_option("--bound-value", bound_value, "bound location (default +1 upper/-1 lower)");
  contour->add_option("--grid", grid, "grid resolution");
  contour->add_option("--out", contour_out, "output directory");

  // summarize
  std::string sweep_dir;
  int window = 20;
  double threshold = 1.5;
  CLI::App* summarize = app.add_subcommand("summarize", "Metrics table for a finished sweep");
  summarize->add_option("--out", sweep_dir, "sweep output directory")->required();
  summarize->add_option("--window", window, "final-window length in episodes");
  summarize->add_option("--threshold", threshold, "episodic mean reward threshold");

  CLI::App* selftest = app.add_subcommand("selftest", "Run built-in numeric checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir, seeds, episodes, jobs);
    if (contour->parsed()) {
      if (std::isnan(bound_value)) bound_value = bound_kind == "lower" ? -1.0 : 1.0;
      return cmd_contour(lambdas, bound_kind, bound_value, grid, contour_out);
    }
    if (summarize->parsed()) return cmd_summarize(sweep_dir, window, threshold);
    if (selftest->parsed()) return harness::selftest(std::cout) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
