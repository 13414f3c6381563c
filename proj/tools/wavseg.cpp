// wavseg: multiscale wavelet-periodogram breakpoint detection.
//
//   wavseg segment   --input series.csv [--output result.json] [--periodogram-csv rows.csv]
//   wavseg simulate  --model B --reps 100 --seed 1 --output report.json
//   wavseg calibrate --T 1024 --reps 250 --seed 1 --output tau.json
//
// Exit status: 0 on success, 2 on usage or input errors.

#include "wavseg/calibrate.hpp"
#include "wavseg/harness.hpp"
#include "wavseg/io.hpp"
#include "wavseg/log.hpp"
#include "wavseg/multiscale.hpp"
#include "wavseg/parallel.hpp"
#include "wavseg/wavelet.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

namespace {

constexpr int kUsageError = 2;

struct ParamFlags {
  std::optional<double> theta;
  std::optional<wavseg::Index> delta;
  std::optional<double> balance_c;
  std::optional<wavseg::Index> lambda;
  std::string tau_table;
  std::string boundary = "reflect";
  std::string step4 = "max";

  void add_to(CLI::App& app) {
    app.add_option("--theta", theta, "Threshold exponent in (0.25, 0.5)");
    app.add_option("--delta", delta, "Minimum child length for recursion (default floor(sqrt(T)))");
    app.add_option("--balance-c", balance_c, "Balance constant c >= 1 (default 3)");
    app.add_option("--lambda", lambda, "Across-scale grouping radius (default floor(sqrt(T) ln T / 2), <= T/8)");
    app.add_option("--tau-table", tau_table, "Threshold table JSON from `wavseg calibrate`")->check(CLI::ExistingFile);
    app.add_option("--boundary", boundary, "Transform boundary rule")->check(CLI::IsMember({"periodic", "reflect"}));
    app.add_option("--step4", step4, "Recursion stop rule on child lengths")->check(CLI::IsMember({"max", "min"}));
  }

  wavseg::SegmentationSettings settings() const {
    wavseg::SegmentationSettings s;
    if (theta) s.theta = *theta;
    if (balance_c) s.balance_c = *balance_c;
    s.delta_T = delta;
    s.lambda_T = lambda;
    if (!tau_table.empty()) s.taus = wavseg::io::tau_table_from_json(wavseg::io::read_json(tau_table));
    s.boundary = boundary == "reflect" ? wavseg::Boundary::reflect : wavseg::Boundary::periodic;
    s.stop_rule = step4 == "min" ? wavseg::StopRule::min_child : wavseg::StopRule::max_child;
    return s;
  }
};

void require_parent_dir(const std::string& path) {
  if (path.empty()) return;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw wavseg::io::InputError("output directory does not exist: " + parent.string());
  }
}

std::string sibling(const std::string& path, const std::string& suffix) {
  auto p = std::filesystem::path(path);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

int run_segment(const std::string& input, const std::string& output, const std::string& periodogram_path, int column,
                bool one_based, const ParamFlags& flags) {
  require_parent_dir(output);
  require_parent_dir(periodogram_path);
  const auto values = wavseg::io::read_csv_column(input, column);
  if (values.size() < 16) {
    throw wavseg::io::InputError("series has " + std::to_string(values.size()) + " values; need at least 16");
  }
  const auto series = wavseg::TimeSeriesd::from(values);
  const wavseg::SegmentationParams params(series.size(), flags.settings());
  const auto result = wavseg::segment_lsw_detailed(series, params);
  const auto doc = wavseg::io::to_json(result, one_based).dump(2) + "\n";
  if (output.empty()) {
    std::cout << doc;
  } else {
    wavseg::io::write_text(output, doc);
  }
  if (!periodogram_path.empty()) {
    const auto stack = wavseg::wavelet_periodogram(series, result.i_star_final, params.boundary());
    wavseg::io::write_text(periodogram_path, wavseg::io::periodogram_csv(stack, result.breakpoints, one_based));
  }
  return 0;
}

int run_simulate(const std::string& model, const std::string& spec_path, double model_a, wavseg::Index length,
                 int reps, std::uint64_t seed, const std::string& output, bool timing, const ParamFlags& flags) {
  require_parent_dir(output);
  auto spec = spec_path.empty() ? wavseg::model_preset(model, model_a)
                                : wavseg::io::model_spec_from_json(wavseg::io::read_json(spec_path));
  if (length > 0) spec = spec.rescaled(length);
  auto report = wavseg::run_replications(spec, reps, flags.settings(), seed, wavseg::default_thread_count());
  if (spec_path.empty() && model == "A") report.model = "A(a=" + CLI::detail::to_string(model_a) + ")";

  std::cout << wavseg::summarize(std::vector<wavseg::ReplicationReport>{report}).text;
  if (!output.empty()) {
    wavseg::io::write_text(output, wavseg::io::to_json(report, timing).dump(2) + "\n");
    wavseg::io::write_text(sibling(output, ".csv"), wavseg::io::outcomes_csv(report));
    if (reps == 1) {
      std::mt19937_64 rng(wavseg::derive_seed(seed, 0));
      wavseg::io::write_series_csv(sibling(output, ".series.csv"), wavseg::generate(spec, rng).values());
    }
  }
  return 0;
}

int run_calibrate(wavseg::Index length, int reps, int scales, std::uint64_t seed, double theta,
                  const std::string& boundary, const std::string& output) {
  require_parent_dir(output);
  if (length < 64) throw wavseg::io::InputError("--T must be at least 64");
  wavseg::CalibrationOptions options;
  options.length = length;
  options.reps_per_combo = reps;
  options.scales = scales;
  options.seed = seed;
  options.theta = theta;
  options.threads = wavseg::default_thread_count();
  options.boundary = boundary == "reflect" ? wavseg::Boundary::reflect : wavseg::Boundary::periodic;
  const auto doc = wavseg::io::to_json(wavseg::calibrate_tau(options)).dump(2) + "\n";
  if (output.empty()) {
    std::cout << doc;
  } else {
    wavseg::io::write_text(output, doc);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Breakpoint detection in the second-order structure of piecewise-stationary time series"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;

  auto* segment = app.add_subcommand("segment", "Segment a numeric CSV series");
  std::string input, output, periodogram_path;
  int column = 0;
  bool one_based = false;
  ParamFlags segment_flags;
  segment->add_option("--input", input, "Headerless CSV input")->required();
  segment->add_option("--output", output, "Result JSON (stdout when omitted)");
  segment->add_option("--periodogram-csv", periodogram_path, "Write periodogram rows and breakpoint markers");
  segment->add_option("--column", column, "0-based column to read")->check(CLI::NonNegativeNumber);
  segment->add_flag("--one-based", one_based, "Report 1-based indices");
  segment->add_option("--seed", seed, "Random seed (segmentation itself is deterministic)");
  segment_flags.add_to(*segment);

  auto* simulate = app.add_subcommand("simulate", "Run replications of a simulation model");
  std::string model = "B", spec_path, sim_output;
  double model_a = 0.7;
  wavseg::Index sim_length = 0;
  int sim_reps = 100;
  bool timing = false;
  ParamFlags simulate_flags;
  simulate->add_option("--model", model, "Preset model A-G")->check(CLI::IsMember({"A", "B", "C", "D", "E", "F", "G"}));
  simulate->add_option("--model-spec", spec_path, "Piecewise model JSON (overrides --model)")->check(CLI::ExistingFile);
  simulate->add_option("--a", model_a, "AR(1) coefficient for model A");
  simulate->add_option("--length", sim_length, "Rescale the model to this length");
  simulate->add_option("--reps", sim_reps, "Number of replicates")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Random seed");
  simulate->add_option("--output", sim_output, "Report JSON; outcomes CSV is written alongside");
  simulate->add_flag("--timing", timing, "Include wall-clock runtime in the report");
  simulate_flags.add_to(*simulate);

  auto* calibrate = app.add_subcommand("calibrate", "Monte-Carlo threshold calibration under the null");
  wavseg::Index cal_length = 1024;
  int cal_reps = 250;
  int cal_scales = 4;
  double cal_theta = 0.251;
  std::string cal_boundary = "reflect", cal_output;
  calibrate->add_option("--T", cal_length, "Series length");
  calibrate->add_option("--reps", cal_reps, "Draws per correlation level (>= 100)");
  calibrate->add_option("--scales", cal_scales, "Calibrate scales -1 ... -scales")->check(CLI::PositiveNumber);
  calibrate->add_option("--seed", seed, "Random seed");
  calibrate->add_option("--theta", cal_theta, "Threshold exponent");
  calibrate->add_option("--boundary", cal_boundary)->check(CLI::IsMember({"periodic", "reflect"}));
  calibrate->add_option("--output", cal_output, "Tau table JSON (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*segment) return run_segment(input, output, periodogram_path, column, one_based, segment_flags);
    if (*simulate) {
      return run_simulate(model, spec_path, model_a, sim_length, sim_reps, seed, sim_output, timing, simulate_flags);
    }
    return run_calibrate(cal_length, cal_reps, cal_scales, seed, cal_theta, cal_boundary, cal_output);
  } catch (const wavseg::io::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}
