#include "fgiqa/gradient.hpp"

#include <algorithm>
#include <numeric>

#include "fgiqa/errors.hpp"

namespace fgiqa {
namespace {

void check_pair(const GradientPair& g) {
  if (!g.ref.same_shape(g.dis)) throw InvalidInput("gradient planes differ in size");
  if (g.ref.empty()) throw InvalidInput("gradient planes are empty");
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Copies row `y` of `src` into `dst` with one replicated sample on each side.
void pad_row(const Plane& src, std::size_t y, std::vector<double>& dst) {
  const std::size_t w = src.width();
  const double* row = src.row(y);
  dst[0] = row[0];
  std::copy(row, row + w, dst.begin() + 1);
  dst[w + 1] = row[w - 1];
}

}  // namespace

Plane sobel_magnitude(const Plane& y, SobelForm form) {
  if (y.width() < 3 || y.height() < 3) {
    throw InvalidInput("plane smaller than the 3x3 Sobel kernel");
  }
  const std::size_t w = y.width();
  const std::size_t h = y.height();
  Plane out(w, h);
  std::vector<double> above(w + 2), row(w + 2), below(w + 2);
  const auto& k = kernels::active();
  for (std::size_t j = 0; j < h; ++j) {
    pad_row(y, j == 0 ? 0 : j - 1, above);
    pad_row(y, j, row);
    pad_row(y, std::min(j + 1, h - 1), below);
    k.sobel_row(above.data(), row.data(), below.data(), out.row(j), w, form);
  }
  return out;
}

Plane gradient_similarity(const GradientPair& g, double c1) {
  check_pair(g);
  if (!(c1 > 0.0)) throw InvalidConfig("c1 must be positive");
  Plane out(g.ref.width(), g.ref.height());
  kernels::active().similarity(g.ref.values().data(), g.dis.values().data(), c1,
                               out.values().data(), out.size());
  return out;
}

RegionMask region_mask(const GradientPair& g) {
  check_pair(g);
  const auto ref = g.ref.values();
  const auto dis = g.dis.values();
  const std::size_t n = ref.size();

  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = dis[i] - ref[i];
  const double mean_ref = mean_of(ref);
  const double mean_dis = mean_of(dis);
  const double mean_diff = mean_of(diff);

  RegionMask m;
  m.width = g.ref.width();
  m.height = g.ref.height();
  m.high_frequency.resize(n);
  m.over_growth.resize(n);
  m.mask.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool high = ref[i] > mean_ref || dis[i] > mean_dis;
    const bool grown = diff[i] > mean_diff && ref[i] < mean_ref;
    m.high_frequency[i] = high;
    m.over_growth[i] = grown;
    m.mask[i] = high || grown;
    m.count += m.mask[i];
  }
  return m;
}

PooledStats masked_stats(const Plane& sim, const RegionMask& mask) {
  if (sim.width() != mask.width || sim.height() != mask.height) {
    throw InvalidInput("mask dimensions do not match the similarity map");
  }
  if (mask.count == 0) return pool_stats(sim.values());
  return pool_stats(sim.values(), mask.mask);
}

PooledStats gradient_features(const Plane& y_ref, const Plane& y_dis,
                              const GradientOptions& opts) {
  if (!y_ref.same_shape(y_dis)) throw InvalidInput("luminance planes differ in size");
  GradientPair g{sobel_magnitude(y_ref, opts.sobel), sobel_magnitude(y_dis, opts.sobel)};
  const Plane sim = gradient_similarity(g, opts.c1);
  if (!opts.use_region) return pool_stats(sim.values());
  return masked_stats(sim, region_mask(g));
}

}  // namespace fgiqa
