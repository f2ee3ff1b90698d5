#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fgiqa {

// Correlations return std::nullopt when undefined (a constant side).
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

// Pearson correlation of average-tie (fractional) ranks.
std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys);

// Tau-b over all pairs.
std::optional<double> kendall(std::span<const double> xs, std::span<const double> ys);

// 1-based fractional ranks; tied values share the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> xs);

// V(q) = t1 * (1/2 - 1 / (1 + exp(t2 (q - t3)))) + t4 q + t5
struct LogisticFit {
  std::array<double, 5> tau{0.0, 0.0, 0.0, 1.0, 0.0};
  std::vector<double> fitted;
  bool converged = false;
  double initial_rss = 0.0;
  double rss = 0.0;
  int iterations = 0;
};

double logistic_value(const std::array<double, 5>& tau, double q);

// Least squares from the start t1 = range(gt), t2 = 1/std(q), t3 = mean(q),
// t4 = 0, t5 = mean(gt). Levenberg-Marquardt moves (t2, t3) while t1, t4, t5
// are solved exactly at every step. initial_rss is measured at the start.
// Fewer than 5 points or constant predictions skip fitting: fitted = preds,
// converged = false.
LogisticFit logistic_fit(std::span<const double> preds, std::span<const double> gts);

struct EvalRecord {
  std::string group_id;
  std::string bitrate_id;
  double predicted = 0.0;
  double ground_truth = 0.0;
};

struct CorrelationTriple {
  std::optional<double> srcc;
  std::optional<double> krcc;
  std::optional<double> plcc;

  friend bool operator==(const CorrelationTriple&, const CorrelationTriple&) = default;
};

struct BitrateSummary {
  std::size_t n_groups = 0;
  std::size_t n_excluded = 0;
  CorrelationTriple mean;

  friend bool operator==(const BitrateSummary&, const BitrateSummary&) = default;
};

struct CorrelationReport {
  std::map<std::string, BitrateSummary> per_bitrate;
  BitrateSummary overall;

  friend bool operator==(const CorrelationReport&, const CorrelationReport&) = default;
};

struct EvalOptions {
  // Fit the logistic before PLCC in cells with >= 5 points.
  bool fit_before_plcc = false;
  // PLCC over all records of a bitrate instead of averaging cells.
  bool pooled_plcc = false;
};

// Per (bitrate, group) cell: SRCC and KRCC on raw scores, PLCC as configured.
// Cells with any undefined coefficient are excluded and counted. Cell means
// per bitrate, then the mean over bitrates for the overall row.
CorrelationReport evaluate_groups(std::span<const EvalRecord> records,
                                  const EvalOptions& opts = {});

}  // namespace fgiqa
