#include "fgiqa/cli/batch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <variant>

#include "fgiqa/cli/image_io.hpp"
#include "fgiqa/errors.hpp"

namespace fgiqa::cli {

BatchResult run_batch(const Manifest& m, const RunConfig& cfg) {
  cfg.metric.validate();
  const std::size_t n = m.rows.size();
  std::vector<std::variant<std::monostate, ScoreRecord, RowFailure>> slots(n);

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const ManifestRow& row = m.rows[i];
      try {
        const RgbImage ref = load_image(row.ref_path);
        const RgbImage dis = load_image(row.dist_path);
        ScoreRecord rec{row.ref, row.dist, row.group, row.bitrate, row.ground_truth,
                        score_pair(ref, dis, cfg.metric), psnr(ref, dis)};
        slots[i] = std::move(rec);
      } catch (const std::exception& e) {
        slots[i] = RowFailure{row.line, row.ref, row.dist, e.what()};
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(cfg.workers, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  BatchResult out;
  for (auto& slot : slots) {
    if (auto* rec = std::get_if<ScoreRecord>(&slot)) out.records.push_back(std::move(*rec));
    if (auto* fail = std::get_if<RowFailure>(&slot)) out.failures.push_back(std::move(*fail));
  }
  return out;
}

std::vector<EvalRecord> to_eval_records(const std::vector<ScoreRecord>& records) {
  std::vector<EvalRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (!r.ground_truth) {
      throw InvalidInput("score record " + r.dist + " has no ground truth");
    }
    out.push_back({r.group, r.bitrate, r.score.q, *r.ground_truth});
  }
  return out;
}

}  // namespace fgiqa::cli
