#include "fgiqa/cli/sweep.hpp"

#include <cmath>
#include <string>

#include "fgiqa/cli/csv.hpp"
#include "fgiqa/errors.hpp"

namespace fgiqa::cli {

std::vector<double> parse_range(std::string_view spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string_view::npos ? first : spec.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw InvalidConfig("range must look like start:stop:step");
  }
  const auto start = parse_number(spec.substr(0, first));
  const auto stop = parse_number(spec.substr(first + 1, second - first - 1));
  const auto step = parse_number(spec.substr(second + 1));
  if (!start || !stop || !step || !std::isfinite(*start) || !std::isfinite(*stop) ||
      !(*step > 0.0) || *stop < *start) {
    throw InvalidConfig("invalid range '" + std::string(spec) + "'");
  }
  const auto count = static_cast<std::size_t>(std::floor((*stop - *start) / *step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double v = *start + static_cast<double>(i) * *step;
    values.push_back(std::round(v * 1e12) / 1e12);
  }
  return values;
}

SweepGrid run_sweep(const std::vector<ScoreRecord>& records, const MetricConfig& base,
                    const std::vector<double>& alphas, const std::vector<double>& betas,
                    const EvalOptions& opts) {
  if (records.empty()) throw InvalidInput("no cached features to sweep");
  SweepGrid grid{alphas, betas, {}};
  std::vector<EvalRecord> eval = to_eval_records(records);
  for (double a : alphas) {
    auto& row = grid.srcc.emplace_back();
    for (double b : betas) {
      MetricConfig cfg = base;
      cfg.alpha = a;
      cfg.beta = b;
      for (std::size_t i = 0; i < records.size(); ++i) {
        const QualityScore& s = records[i].score;
        eval[i].predicted = fuse({s.e_g, s.std_g}, {s.e_t, s.std_t}, cfg).q;
      }
      row.push_back(evaluate_groups(eval, opts).overall.mean.srcc);
    }
  }
  return grid;
}

void write_sweep_csv(std::ostream& out, const SweepGrid& grid) {
  out << "alpha\\beta";
  for (double b : grid.betas) out << ',' << format_number(b);
  out << '\n';
  for (std::size_t i = 0; i < grid.alphas.size(); ++i) {
    out << format_number(grid.alphas[i]);
    for (const auto& v : grid.srcc[i]) out << ',' << (v ? format_number(*v) : "undefined");
    out << '\n';
  }
}

}  // namespace fgiqa::cli
