#pragma once

#include "fgiqa/colorspace.hpp"
#include "fgiqa/gradient.hpp"
#include "fgiqa/plane.hpp"
#include "fgiqa/texture.hpp"

namespace fgiqa {

struct MetricConfig {
  double c1 = 170.0;
  SobelForm sobel = SobelForm::kStandard;
  TextureConfig texture;
  double alpha = 0.1;
  double beta = 0.6;
  double std_floor = 1e-6;
  bool use_gradient = true;
  bool use_gradient_region = true;
  bool use_texture = true;
  ScaleMask scale_toggles = kAllScales;

  // Full consistency check for a scoring run; throws InvalidConfig.
  void validate() const;
};

// Q and the pooled statistics it was fused from. A disabled feature group
// is recorded as mean 1, std 1, so its factor in Q is exactly 1.
struct QualityScore {
  double q = 0.0;
  double e_g = 1.0;
  double std_g = 1.0;
  double e_t = 1.0;
  double std_t = 1.0;

  friend bool operator==(const QualityScore&, const QualityScore&) = default;
};

//   Q = E_g^alpha * E_t^beta / (max(Std_g, eps)^alpha * max(Std_t, eps)^beta)
// Groups switched off in `cfg` contribute a factor of 1.
QualityScore fuse(const PooledStats& grad, const PooledStats& tex, const MetricConfig& cfg);

QualityScore score_pair(const RgbImage& ref, const RgbImage& dis, const MetricConfig& cfg);

// Over all three RGB channels; +infinity for identical images.
double psnr(const RgbImage& ref, const RgbImage& dis);

}  // namespace fgiqa
