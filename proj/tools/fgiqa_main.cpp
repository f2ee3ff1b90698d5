// fgiqa: batch scoring, evaluation and inspection front end.
//
// Exit codes: 0 success, 2 partial failure (some rows failed), 1 fatal error.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fgiqa/cli/batch.hpp"
#include "fgiqa/cli/config.hpp"
#include "fgiqa/cli/csv.hpp"
#include "fgiqa/cli/filter_dump.hpp"
#include "fgiqa/cli/image_io.hpp"
#include "fgiqa/cli/manifest.hpp"
#include "fgiqa/cli/report.hpp"
#include "fgiqa/cli/sweep.hpp"
#include "fgiqa/errors.hpp"
#include "fgiqa/kernels.hpp"

namespace {

using namespace fgiqa;
using namespace fgiqa::cli;

struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::optional<double> c1, c2, f0, sigma_theta, alpha, beta, std_floor;
  std::optional<std::string> sobel;
  std::optional<std::string> texture_normalize;
  unsigned workers = 1;
  std::string format = "csv";
  std::optional<std::string> out;
  bool fit_plcc = false;
  bool pooled_plcc = false;
};

MetricConfig effective_config(const Overrides& o) {
  MetricConfig cfg;
  std::optional<std::filesystem::path> flag;
  if (o.config_path) flag = *o.config_path;
  if (auto path = resolve_config_path(flag)) cfg = load_config_file(*path, cfg);
  if (o.preset) apply_preset(cfg, parse_preset(*o.preset));
  if (o.c1) cfg.c1 = *o.c1;
  if (o.c2) cfg.texture.c2 = *o.c2;
  if (o.f0) cfg.texture.f0 = *o.f0;
  if (o.sigma_theta) cfg.texture.sigma_theta = *o.sigma_theta;
  if (o.alpha) cfg.alpha = *o.alpha;
  if (o.beta) cfg.beta = *o.beta;
  if (o.std_floor) cfg.std_floor = *o.std_floor;
  if (o.sobel) cfg.sobel = *o.sobel == "verbatim" ? SobelForm::kVerbatim : SobelForm::kStandard;
  if (o.texture_normalize) cfg.texture.normalize = *o.texture_normalize == "on";
  return cfg;
}

RunConfig run_config(const Overrides& o) {
  return {effective_config(o), o.workers, {o.fit_plcc, o.pooled_plcc}};
}

// Writes to --out when given, stdout otherwise.
template <typename Fn>
void emit(const Overrides& o, Fn&& write, bool binary = false) {
  if (o.out) {
    std::ofstream f(*o.out, binary ? std::ios::binary : std::ios::out);
    if (!f) throw InvalidInput(*o.out + ": cannot open for writing");
    write(f);
  } else {
    write(std::cout);
  }
}

bool looks_like_scores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(path.string() + ": cannot open");
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty() || line.front() == '#') continue;
    const auto f = split_csv_line(line);
    return f.size() > 4 && trim(f[4]) == "q";
  }
  return false;
}

int cmd_score(const Overrides& o, const std::string& ref_path, const std::string& dist_path) {
  const MetricConfig cfg = effective_config(o);
  const RgbImage ref = load_image(ref_path);
  const RgbImage dis = load_image(dist_path);
  ScoreRecord rec{ref_path, dist_path, "", "", std::nullopt, score_pair(ref, dis, cfg),
                  psnr(ref, dis)};
  nlohmann::json j = score_to_json(rec);
  j.erase("group");
  j.erase("bitrate");
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_batch(const Overrides& o, const std::string& manifest_path) {
  const Manifest m = load_manifest(manifest_path);
  const BatchResult result = run_batch(m, run_config(o));
  emit(o, [&](std::ostream& out) {
    if (o.format == "json") {
      write_scores_json(out, result);
    } else {
      write_scores_csv(out, result);
    }
  });
  for (const auto& f : result.failures) {
    std::cerr << "line " << f.line << ": " << f.message << '\n';
  }
  return result.failures.empty() ? 0 : 2;
}

int cmd_eval(const Overrides& o, const std::string& input) {
  const RunConfig cfg = run_config(o);
  std::vector<ScoreRecord> records;
  int status = 0;
  if (looks_like_scores(input)) {
    std::ifstream in(input);
    records = read_scores_csv(in);
  } else {
    const Manifest m = load_manifest(input);
    if (!m.has_ground_truth) throw InvalidInput(input + ": manifest has no gt column");
    BatchResult result = run_batch(m, cfg);
    for (const auto& f : result.failures) std::cerr << "line " << f.line << ": " << f.message << '\n';
    if (!result.failures.empty()) status = 2;
    records = std::move(result.records);
  }
  const CorrelationReport report = evaluate_groups(to_eval_records(records), cfg.eval);
  emit(o, [&](std::ostream& out) {
    if (o.format == "json") {
      out << report_to_json(report).dump(2) << '\n';
    } else {
      write_report_csv(out, report);
    }
  });
  return status;
}

int cmd_sweep(const Overrides& o, const std::string& input, const std::string& alpha_range,
              const std::string& beta_range) {
  const RunConfig cfg = run_config(o);
  std::ifstream in(input);
  if (!in) throw InvalidInput(input + ": cannot open");
  const auto records = read_scores_csv(in);
  const SweepGrid grid =
      run_sweep(records, cfg.metric, parse_range(alpha_range), parse_range(beta_range), cfg.eval);
  emit(o, [&](std::ostream& out) { write_sweep_csv(out, grid); });
  return 0;
}

int cmd_dump_filters(const Overrides& o, std::size_t width, std::size_t height) {
  const MetricConfig cfg = effective_config(o);
  const LogGaborBank bank = build_bank(width, height, cfg.texture);
  if (!o.out) throw InvalidInput("dump-filters writes binary data; pass --out <file>");
  emit(o, [&](std::ostream& out) { write_filter_dump(out, bank); }, true);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-reference quality metric for fine-grained compressed images"};
  app.require_subcommand(1);
  Overrides o;

  const auto add_common = [&](CLI::App* cmd, bool exponents = true) {
    cmd->add_option("--config", o.config_path, "JSON config (default: $FGIQA_CONFIG)");
    cmd->add_option("--preset", o.preset, "Ablation preset G1..G9 or custom");
    cmd->add_option("--c1", o.c1, "Gradient similarity constant");
    cmd->add_option("--c2", o.c2, "Texture similarity constant");
    cmd->add_option("--f0", o.f0, "Log-Gabor base frequency (cycles/pixel)");
    cmd->add_option("--sigma-theta", o.sigma_theta, "Angular width (radians)");
    if (exponents) {
      cmd->add_option("--alpha", o.alpha, "Gradient exponent");
      cmd->add_option("--beta", o.beta, "Texture exponent");
    }
    cmd->add_option("--std-floor", o.std_floor, "Lower clamp for pooled std");
    cmd->add_option("--sobel", o.sobel, "standard | verbatim")
        ->check(CLI::IsMember({"standard", "verbatim"}));
    cmd->add_option("--texture-normalize", o.texture_normalize, "on | off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--workers", o.workers, "Scoring threads")->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "Output file (default: stdout)");
    cmd->add_flag("--fit-plcc", o.fit_plcc, "Logistic fit before PLCC (cells with >= 5 points)");
    cmd->add_flag("--pooled-plcc", o.pooled_plcc, "PLCC pooled over each bitrate");
  };

  std::string ref, dist, input;
  auto* score = app.add_subcommand("score", "Score one pair; JSON to stdout");
  score->add_option("ref", ref)->required();
  score->add_option("dist", dist)->required();
  add_common(score);

  auto* batch = app.add_subcommand("batch", "Score every row of a manifest");
  batch->add_option("manifest", input)->required();
  add_common(batch);

  auto* eval = app.add_subcommand("eval", "Correlation report from a scores CSV or gt manifest");
  eval->add_option("input", input)->required();
  add_common(eval);

  std::string alpha_range = "0.1:1.0:0.1";
  std::string beta_range = "0.1:1.0:0.1";
  auto* sweep = app.add_subcommand("sweep", "Average SRCC over an (alpha, beta) grid");
  sweep->add_option("scores", input)->required();
  sweep->add_option("--alpha", alpha_range, "start:stop:step");
  sweep->add_option("--beta", beta_range, "start:stop:step");
  add_common(sweep, false);

  std::size_t width = 0, height = 0;
  auto* dump = app.add_subcommand("dump-filters", "Write the Log-Gabor gains as binary records");
  dump->add_option("--width", width)->required();
  dump->add_option("--height", height)->required();
  add_common(dump);

  auto* show = app.add_subcommand("show-config", "Print the effective configuration");
  add_common(show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors are fatal (1); --help exits cleanly.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*score) return cmd_score(o, ref, dist);
    if (*batch) return cmd_batch(o, input);
    if (*eval) return cmd_eval(o, input);
    if (*sweep) return cmd_sweep(o, input, alpha_range, beta_range);
    if (*dump) return cmd_dump_filters(o, width, height);
    if (*show) {
      nlohmann::json j = config_to_json(effective_config(o));
      j["kernels"] = std::string(kernels::active().name);
      std::cout << j.dump(2) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
