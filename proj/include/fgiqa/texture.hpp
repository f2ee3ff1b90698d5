#pragma once

// Log-Gabor texture features: a 5-scale x 4-orientation frequency-domain
// filter bank applied to all three YCbCr channels of both images, reduced to
// a weighted amplitude-similarity map per channel and then one texture map.

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

#include "fgiqa/colorspace.hpp"
#include "fgiqa/plane.hpp"

namespace fgiqa {

inline constexpr std::size_t kScales = 5;
inline constexpr std::size_t kOrientations = 4;
inline constexpr std::size_t kFilters = kScales * kOrientations;

using ScaleMask = std::array<bool, kScales>;
inline constexpr ScaleMask kAllScales{true, true, true, true, true};

struct TextureConfig {
  // Base frequency in cycles/pixel; scale s is centred at f0 * scale_multipliers[s].
  double f0 = 0.147;
  std::array<double, kScales> scale_multipliers{2.0 / 3.0, 4.0 / 3.0, 2.0, 8.0 / 3.0,
                                                10.0 / 3.0};
  std::array<double, kOrientations> orientations{0.0, std::numbers::pi / 4,
                                                 std::numbers::pi / 2,
                                                 3 * std::numbers::pi / 4};
  // sigma_f / f_s, shared by every scale.
  double sigma_f_ratio = 0.598;
  double sigma_theta = std::numbers::pi / 8;
  std::array<double, kScales> scale_weights{0.5, 0.75, 1.0, 5.0, 6.0};
  double w_y = 1.0;
  double w_cb = 0.25;
  double w_cr = 0.25;
  double c2 = 100.0;
  // Divide the per-channel weighted sum by 4 * (sum of enabled weights).
  bool normalize = true;

  double center_frequency(std::size_t scale) const { return f0 * scale_multipliers[scale]; }

  // Throws InvalidConfig.
  void validate() const;
};

class LogGaborBank {
 public:
  // Gains are sampled on the unshifted DFT grid: column u maps to u/W, or
  // (u - W)/W above W/2; rows likewise. The DC gain is exactly zero.
  LogGaborBank(std::size_t width, std::size_t height, const TextureConfig& cfg);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  const TextureConfig& config() const { return config_; }

  // Zero-based scale and orientation.
  const Plane& gain(std::size_t scale, std::size_t orientation) const {
    return gains_[scale * kOrientations + orientation];
  }

 private:
  std::size_t width_;
  std::size_t height_;
  TextureConfig config_;
  std::vector<Plane> gains_;
};

LogGaborBank build_bank(std::size_t width, std::size_t height, const TextureConfig& cfg);

// Shared, build-once bank for (width, height, cfg). Safe for concurrent callers.
std::shared_ptr<const LogGaborBank> cached_bank(std::size_t width, std::size_t height,
                                                const TextureConfig& cfg);

enum class Channel { kY, kCb, kCr };

struct AmplitudeSet {
  Channel channel = Channel::kY;
  // Indexed scale * kOrientations + orientation; disabled scales stay empty.
  std::array<Plane, kFilters> amps;

  const Plane& at(std::size_t scale, std::size_t orientation) const {
    return amps[scale * kOrientations + orientation];
  }
};

// |IDFT(DFT(p) * gain)| for every enabled filter.
AmplitudeSet filter_amplitude(const Plane& p, const LogGaborBank& bank,
                              Channel channel = Channel::kY,
                              const ScaleMask& enabled = kAllScales);

Plane channel_texture_similarity(const AmplitudeSet& ref, const AmplitudeSet& dis,
                                 const TextureConfig& cfg,
                                 const ScaleMask& enabled = kAllScales);

// sqrt(W_Y T_Y^2 + W_Cb T_Cb^2 / 4 + W_Cr T_Cr^2 / 4)
Plane combine_channels(const Plane& t_y, const Plane& t_cb, const Plane& t_cr,
                       const TextureConfig& cfg);

PooledStats texture_stats(const Plane& s_t);

PooledStats texture_features(const YcbcrImage& ref, const YcbcrImage& dis,
                             const TextureConfig& cfg, const ScaleMask& enabled = kAllScales);

}  // namespace fgiqa
