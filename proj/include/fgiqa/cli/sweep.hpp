#pragma once

#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "fgiqa/cli/batch.hpp"

namespace fgiqa::cli {

// "start:stop:step", inclusive of stop; values are rounded to 12 decimals.
std::vector<double> parse_range(std::string_view spec);

struct SweepGrid {
  std::vector<double> alphas;
  std::vector<double> betas;
  // srcc[i][j] is the overall average SRCC for (alphas[i], betas[j]).
  std::vector<std::vector<std::optional<double>>> srcc;
};

// Re-fuses cached features at every (alpha, beta) and evaluates each grid
// point. Records must carry ground truth.
SweepGrid run_sweep(const std::vector<ScoreRecord>& records, const MetricConfig& base,
                    const std::vector<double>& alphas, const std::vector<double>& betas,
                    const EvalOptions& opts = {});

// Rows are alpha values, columns beta values.
void write_sweep_csv(std::ostream& out, const SweepGrid& grid);

}  // namespace fgiqa::cli
