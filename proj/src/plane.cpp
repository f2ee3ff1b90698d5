#include "fgiqa/plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "fgiqa/errors.hpp"

namespace fgiqa {

Plane::Plane(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), values_(width * height, fill) {}

Plane::Plane(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (values_.size() != width * height) {
    throw InvalidInput("plane value count does not match width*height");
  }
}

PooledStats pool_stats(std::span<const double> values, std::span<const std::uint8_t> select) {
  if (!select.empty() && select.size() != values.size()) {
    throw InvalidInput("selection mask size does not match plane size");
  }
  const auto chosen = [&](std::size_t i) { return select.empty() || select[i] != 0; };

  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::size_t count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!chosen(i)) continue;
    sum += values[i];
    lo = std::min(lo, values[i]);
    hi = std::max(hi, values[i]);
    ++count;
  }
  if (count == 0) {
    throw InvalidInput("cannot pool an empty selection");
  }
  const double mean = std::clamp(sum / static_cast<double>(count), lo, hi);

  double sq = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!chosen(i)) continue;
    const double d = values[i] - mean;
    sq += d * d;
  }
  return {mean, std::sqrt(sq / static_cast<double>(count))};
}

}  // namespace fgiqa
