#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fgiqa/cli/config.hpp"
#include "fgiqa/cli/manifest.hpp"
#include "fgiqa/evaluation.hpp"
#include "fgiqa/fusion.hpp"

namespace fgiqa::cli {

struct RunConfig {
  MetricConfig metric;
  unsigned workers = 1;
  EvalOptions eval;
};

struct ScoreRecord {
  std::string ref;
  std::string dist;
  std::string group;
  std::string bitrate;
  std::optional<double> ground_truth;
  QualityScore score;
  double psnr_db = 0.0;

  friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

struct RowFailure {
  std::size_t line = 0;
  std::string ref;
  std::string dist;
  std::string message;
};

struct BatchResult {
  std::vector<ScoreRecord> records;  // manifest order
  std::vector<RowFailure> failures;  // manifest order
};

// Scores every row on `cfg.workers` threads. A failing row is reported and
// the rest of the batch continues.
BatchResult run_batch(const Manifest& m, const RunConfig& cfg);

// Records with ground truth become evaluation input (predicted = q).
std::vector<EvalRecord> to_eval_records(const std::vector<ScoreRecord>& records);

}  // namespace fgiqa::cli
