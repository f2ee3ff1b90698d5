#include "fgiqa/evaluation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "fgiqa/errors.hpp"

namespace fgiqa {
namespace {

void check_lists(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidInput("correlation inputs differ in length");
  if (xs.size() < 2) throw InvalidInput("correlation needs at least two samples");
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Logistic 1 / (1 + exp(-z)) without overflow for large |z|.
double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double rss_of(const std::array<double, 5>& tau, std::span<const double> q,
              std::span<const double> gt) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double r = logistic_value(tau, q[i]) - gt[i];
    s += r * r;
  }
  return s;
}

std::optional<double> mean_defined(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> plcc_for(std::span<const double> preds, std::span<const double> gts,
                               bool fit) {
  if (fit && preds.size() >= 5) {
    const LogisticFit f = logistic_fit(preds, gts);
    return pearson(f.fitted, gts);
  }
  return pearson(preds, gts);
}

struct Cell {
  std::vector<double> preds;
  std::vector<double> gts;
};

// Sorted by (prediction, ground truth) so results do not depend on input order.
Cell make_cell(std::vector<std::pair<double, double>> rows) {
  std::sort(rows.begin(), rows.end());
  Cell c;
  for (const auto& [p, g] : rows) {
    c.preds.push_back(p);
    c.gts.push_back(g);
  }
  return c;
}

}  // namespace

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  check_lists(xs, ys);
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    // positions i..j (0-based) share rank mean(i+1..j+1)
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys) {
  check_lists(xs, ys);
  const auto rx = fractional_ranks(xs);
  const auto ry = fractional_ranks(ys);
  return pearson(rx, ry);
}

std::optional<double> kendall(std::span<const double> xs, std::span<const double> ys) {
  check_lists(xs, ys);
  const std::size_t n = xs.size();
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int sx = sign(xs[i] - xs[j]);
      const int sy = sign(ys[i] - ys[j]);
      if (sx == 0) ++ties_x;
      if (sy == 0) ++ties_y;
      if (sx * sy > 0) ++concordant;
      if (sx * sy < 0) ++discordant;
    }
  }
  const auto pairs = static_cast<long long>(n * (n - 1) / 2);
  const long long untied_x = pairs - ties_x;
  const long long untied_y = pairs - ties_y;
  if (untied_x == 0 || untied_y == 0) return std::nullopt;
  const double tau = static_cast<double>(concordant - discordant) /
                     std::sqrt(static_cast<double>(untied_x) * static_cast<double>(untied_y));
  return std::clamp(tau, -1.0, 1.0);
}

double logistic_value(const std::array<double, 5>& tau, double q) {
  // 1/2 - 1/(1 + e^z) = sigmoid(z) - 1/2
  const double z = tau[1] * (q - tau[2]);
  return tau[0] * (sigmoid(z) - 0.5) + tau[3] * q + tau[4];
}

LogisticFit logistic_fit(std::span<const double> preds, std::span<const double> gts) {
  if (preds.size() != gts.size()) throw InvalidInput("fit inputs differ in length");
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (!std::isfinite(preds[i]) || !std::isfinite(gts[i])) {
      throw InvalidInput("fit inputs must be finite");
    }
  }

  LogisticFit fit;
  fit.fitted.assign(preds.begin(), preds.end());
  const std::size_t n = preds.size();
  if (n < 5) return fit;

  const double mq = mean_of(preds);
  double var = 0.0;
  for (double q : preds) var += (q - mq) * (q - mq);
  const double sd = std::sqrt(var / static_cast<double>(n));
  if (sd == 0.0) return fit;

  const auto [gmin, gmax] = std::minmax_element(gts.begin(), gts.end());
  const std::array<double, 5> start{*gmax - *gmin, 1.0 / sd, mq, 0.0, mean_of(gts)};
  fit.initial_rss = rss_of(start, preds, gts);

  // t1, t4 and t5 enter V linearly, so for every (t2, t3) they are solved
  // exactly and Levenberg-Marquardt only moves (t2, t3). This avoids the
  // slow valley where a flat sigmoid mimics the linear term.
  const Eigen::Map<const Eigen::VectorXd> y(gts.data(), static_cast<Eigen::Index>(n));
  auto project = [&](double t2, double t3, std::array<double, 5>& tau_out) {
    Eigen::MatrixXd basis(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      basis(row, 0) = sigmoid(t2 * (preds[i] - t3)) - 0.5;
      basis(row, 1) = preds[i];
      basis(row, 2) = 1.0;
    }
    const Eigen::VectorXd c = basis.colPivHouseholderQr().solve(y);
    tau_out = {c(0), t2, t3, c(1), c(2)};
    Eigen::VectorXd r = basis * c - y;
    return r;
  };

  constexpr int kMaxIterations = 2000;
  constexpr double kRelativeTolerance = 1e-10;
  const double floor_rss = 1e-28 * std::max(y.squaredNorm(), 1e-300);
  std::array<double, 2> p{start[1], start[2]};
  const std::array<double, 2> scale{1.0 / sd, sd};
  std::array<double, 5> tau = start;
  Eigen::VectorXd residual = project(p[0], p[1], tau);
  double rss = residual.squaredNorm();
  if (!(rss <= fit.initial_rss)) {
    tau = start;
    rss = fit.initial_rss;
  }
  double lambda = 1e-3;
  bool converged = false;
  int iter = 0;

  Eigen::MatrixXd jac(n, 2);
  for (; iter < kMaxIterations && !converged; ++iter) {
    if (rss <= floor_rss) {
      converged = true;
      break;
    }
    // Central differences of the projected residual.
    std::array<double, 5> scratch{};
    for (int k = 0; k < 2; ++k) {
      const double h = 1e-6 * std::max(std::abs(p[k]), scale[k]);
      std::array<double, 2> hi = p, lo = p;
      hi[k] += h;
      lo[k] -= h;
      jac.col(k) = (project(hi[0], hi[1], scratch) - project(lo[0], lo[1], scratch)) / (2 * h);
    }
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d jtr = jac.transpose() * residual;
    const double diag_floor = 1e-12 * std::max(jtj.diagonal().maxCoeff(), 1e-300);

    // Raise damping until a step lowers the residual or damping saturates.
    bool accepted = false;
    while (!accepted) {
      Eigen::Matrix2d damped = jtj;
      for (int k = 0; k < 2; ++k) damped(k, k) += lambda * std::max(jtj(k, k), diag_floor);
      const Eigen::Vector2d step = damped.ldlt().solve(-jtr);
      std::array<double, 5> trial_tau{};
      const Eigen::VectorXd trial_res = project(p[0] + step(0), p[1] + step(1), trial_tau);
      const double trial_rss = trial_res.squaredNorm();
      if (std::isfinite(trial_rss) && trial_rss < rss) {
        const double improvement = (rss - trial_rss) / rss;
        p = {p[0] + step(0), p[1] + step(1)};
        tau = trial_tau;
        residual = trial_res;
        rss = trial_rss;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (improvement < kRelativeTolerance) converged = true;
      } else {
        lambda *= 10.0;
        if (lambda > 1e16) {
          // No descent direction left at working precision.
          converged = true;
          break;
        }
      }
    }
  }

  // Report the residual of the curve actually returned.
  rss = rss_of(tau, preds, gts);
  if (!(rss <= fit.initial_rss)) {
    tau = start;
    rss = fit.initial_rss;
  }
  fit.tau = tau;
  fit.rss = rss;
  fit.iterations = iter;
  fit.converged = converged;
  for (std::size_t i = 0; i < n; ++i) fit.fitted[i] = logistic_value(tau, preds[i]);
  return fit;
}

CorrelationReport evaluate_groups(std::span<const EvalRecord> records, const EvalOptions& opts) {
  if (records.empty()) throw InvalidInput("no records to evaluate");

  std::map<std::string, std::map<std::string, std::vector<std::pair<double, double>>>> cells;
  for (const auto& r : records) {
    if (!std::isfinite(r.predicted) || !std::isfinite(r.ground_truth)) {
      throw InvalidInput("record for group " + r.group_id + " has a non-finite value");
    }
    cells[r.bitrate_id][r.group_id].emplace_back(r.predicted, r.ground_truth);
  }

  CorrelationReport report;
  std::vector<std::optional<double>> srcc_by_rate, krcc_by_rate, plcc_by_rate;
  for (auto& [bitrate, groups] : cells) {
    BitrateSummary summary;
    std::vector<std::optional<double>> srccs, krccs, plccs;
    std::vector<double> pooled_preds, pooled_gts;
    for (auto& [group, rows] : groups) {
      ++summary.n_groups;
      const Cell cell = make_cell(std::move(rows));
      if (cell.preds.size() < 2) {
        ++summary.n_excluded;
        continue;
      }
      const auto s = spearman(cell.preds, cell.gts);
      const auto k = kendall(cell.preds, cell.gts);
      std::optional<double> p;
      if (!opts.pooled_plcc) p = plcc_for(cell.preds, cell.gts, opts.fit_before_plcc);
      if (!s || !k || (!opts.pooled_plcc && !p)) {
        ++summary.n_excluded;
        continue;
      }
      srccs.push_back(s);
      krccs.push_back(k);
      plccs.push_back(p);
      pooled_preds.insert(pooled_preds.end(), cell.preds.begin(), cell.preds.end());
      pooled_gts.insert(pooled_gts.end(), cell.gts.begin(), cell.gts.end());
    }
    summary.mean.srcc = mean_defined(srccs);
    summary.mean.krcc = mean_defined(krccs);
    if (opts.pooled_plcc) {
      if (pooled_preds.size() >= 2) {
        summary.mean.plcc = plcc_for(pooled_preds, pooled_gts, opts.fit_before_plcc);
      }
    } else {
      summary.mean.plcc = mean_defined(plccs);
    }
    report.overall.n_groups += summary.n_groups;
    report.overall.n_excluded += summary.n_excluded;
    srcc_by_rate.push_back(summary.mean.srcc);
    krcc_by_rate.push_back(summary.mean.krcc);
    plcc_by_rate.push_back(summary.mean.plcc);
    report.per_bitrate.emplace(bitrate, summary);
  }
  report.overall.mean = {mean_defined(srcc_by_rate), mean_defined(krcc_by_rate),
                         mean_defined(plcc_by_rate)};
  return report;
}

}  // namespace fgiqa
