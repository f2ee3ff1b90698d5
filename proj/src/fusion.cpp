#include "fgiqa/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fgiqa/errors.hpp"

namespace fgiqa {

void MetricConfig::validate() const {
  if (!(c1 > 0.0)) throw InvalidConfig("c1 must be positive");
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw InvalidConfig("alpha and beta must be >= 0");
  if (!(std_floor > 0.0)) throw InvalidConfig("std_floor must be positive");
  if ((use_gradient || use_texture) && !(alpha + beta > 0.0)) {
    throw InvalidConfig("alpha + beta must be positive");
  }
  if (use_texture) {
    texture.validate();
    if (std::none_of(scale_toggles.begin(), scale_toggles.end(), [](bool b) { return b; })) {
      throw InvalidConfig("at least one texture scale must be enabled");
    }
  }
}

QualityScore fuse(const PooledStats& grad, const PooledStats& tex, const MetricConfig& cfg) {
  if (!(cfg.alpha >= 0.0) || !(cfg.beta >= 0.0)) {
    throw InvalidConfig("alpha and beta must be >= 0");
  }
  if (!(cfg.std_floor > 0.0)) throw InvalidConfig("std_floor must be positive");

  QualityScore out;
  double q = 1.0;
  if (cfg.use_gradient) {
    out.e_g = grad.mean;
    out.std_g = grad.std;
    q *= std::pow(grad.mean, cfg.alpha) / std::pow(std::max(grad.std, cfg.std_floor), cfg.alpha);
  }
  if (cfg.use_texture) {
    out.e_t = tex.mean;
    out.std_t = tex.std;
    q *= std::pow(tex.mean, cfg.beta) / std::pow(std::max(tex.std, cfg.std_floor), cfg.beta);
  }
  out.q = q;
  return out;
}

QualityScore score_pair(const RgbImage& ref, const RgbImage& dis, const MetricConfig& cfg) {
  ref.validate();
  dis.validate();
  if (ref.width() != dis.width() || ref.height() != dis.height()) {
    throw InvalidInput("reference and distorted images differ in size");
  }
  cfg.validate();
  const YcbcrImage a = rgb_to_ycbcr(ref);
  const YcbcrImage b = rgb_to_ycbcr(dis);

  PooledStats grad{1.0, 1.0};
  PooledStats tex{1.0, 1.0};
  if (cfg.use_gradient) {
    grad = gradient_features(a.y, b.y, {cfg.c1, cfg.use_gradient_region, cfg.sobel});
  }
  if (cfg.use_texture) {
    tex = texture_features(a, b, cfg.texture, cfg.scale_toggles);
  }
  return fuse(grad, tex, cfg);
}

double psnr(const RgbImage& ref, const RgbImage& dis) {
  if (ref.r.empty() || !ref.r.same_shape(ref.g) || !ref.r.same_shape(ref.b) ||
      !dis.r.same_shape(dis.g) || !dis.r.same_shape(dis.b)) {
    throw InvalidInput("image planes are empty or differ in size");
  }
  if (ref.width() != dis.width() || ref.height() != dis.height()) {
    throw InvalidInput("reference and distorted images differ in size");
  }
  double sse = 0.0;
  for (const auto& [a, b] : {std::pair{&ref.r, &dis.r}, {&ref.g, &dis.g}, {&ref.b, &dis.b}}) {
    const auto va = a->values();
    const auto vb = b->values();
    for (std::size_t i = 0; i < va.size(); ++i) {
      const double d = va[i] - vb[i];
      sse += d * d;
    }
  }
  const double mse = sse / static_cast<double>(3 * ref.r.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace fgiqa
