#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fgiqa/kernels.hpp"
#include "fgiqa/plane.hpp"

namespace fgiqa {

using kernels::SobelForm;

// Gradient magnitudes of the reference and distorted luminance.
struct GradientPair {
  Plane ref;
  Plane dis;
};

// Distortion-sensitive pixels: high-gradient pixels of either image, plus
// flat reference pixels whose gradient grew more than average.
struct RegionMask {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> high_frequency;  // phi1
  std::vector<std::uint8_t> over_growth;     // phi2
  std::vector<std::uint8_t> mask;            // phi1 | phi2
  std::size_t count = 0;
};

// sqrt(gx^2 + gy^2) with 3x3 Sobel kernels weighted (1/4, 1/2, 1/4) and
// replicate-edge padding. Output has the input's dimensions.
Plane sobel_magnitude(const Plane& y, SobelForm form = SobelForm::kStandard);

// (2 Gr Gd + c1) / (Gr^2 + Gd^2 + c1), per pixel.
Plane gradient_similarity(const GradientPair& g, double c1);

// Strict comparisons against whole-plane means.
RegionMask region_mask(const GradientPair& g);

// Population statistics over the masked pixels. An empty mask falls back to
// pooling every pixel.
PooledStats masked_stats(const Plane& sim, const RegionMask& mask);

struct GradientOptions {
  double c1 = 170.0;
  bool use_region = true;
  SobelForm sobel = SobelForm::kStandard;
};

PooledStats gradient_features(const Plane& y_ref, const Plane& y_dis,
                              const GradientOptions& opts = {});

}  // namespace fgiqa
