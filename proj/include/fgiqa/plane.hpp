#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fgiqa {

// Row-major 2-D array of doubles. Carries every intermediate map in the
// metric: colour channels, gradient magnitudes, filter gains, similarity maps.
class Plane {
 public:
  Plane() = default;
  Plane(std::size_t width, std::size_t height, double fill = 0.0);
  Plane(std::size_t width, std::size_t height, std::vector<double> values);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator()(std::size_t x, std::size_t y) { return values_[y * width_ + x]; }
  double operator()(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }

  double* row(std::size_t y) { return values_.data() + y * width_; }
  const double* row(std::size_t y) const { return values_.data() + y * width_; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool same_shape(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> values_;
};

// Population mean and standard deviation of a pooled similarity map.
struct PooledStats {
  double mean = 0.0;
  double std = 0.0;
};

// Pools the selected values. The mean is clamped into [min, max] of the
// pooled values so a constant input reports its value and a zero deviation
// exactly. `select` may be empty, meaning every value.
PooledStats pool_stats(std::span<const double> values, std::span<const std::uint8_t> select = {});

}  // namespace fgiqa
