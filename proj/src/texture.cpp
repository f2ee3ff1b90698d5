#include "fgiqa/texture.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "fgiqa/errors.hpp"
#include "fgiqa/fft.hpp"
#include "fgiqa/kernels.hpp"

namespace fgiqa {
namespace {

double bin_frequency(std::size_t index, std::size_t extent) {
  const auto i = static_cast<double>(index);
  const auto n = static_cast<double>(extent);
  return 2 * index > extent ? (i - n) / n : i / n;
}

double enabled_weight_sum(const TextureConfig& cfg, const ScaleMask& enabled) {
  double norm = 0.0;
  for (std::size_t s = 0; s < kScales; ++s) {
    if (enabled[s]) norm += cfg.scale_weights[s] * static_cast<double>(kOrientations);
  }
  return norm;
}

bool any_enabled(const ScaleMask& enabled) {
  for (bool e : enabled) {
    if (e) return true;
  }
  return false;
}

}  // namespace

void TextureConfig::validate() const {
  if (!(f0 > 0.0)) throw InvalidConfig("f0 must be positive");
  for (std::size_t s = 1; s < kScales; ++s) {
    if (!(scale_multipliers[s] > scale_multipliers[s - 1])) {
      throw InvalidConfig("scale multipliers must be strictly increasing");
    }
  }
  if (!(scale_multipliers[0] > 0.0)) throw InvalidConfig("scale multipliers must be positive");
  if (center_frequency(kScales - 1) > 0.5) {
    throw InvalidConfig("highest scale centre " + std::to_string(center_frequency(kScales - 1)) +
                        " exceeds the Nyquist frequency 0.5");
  }
  if (!(sigma_f_ratio > 0.0 && sigma_f_ratio < 1.0)) {
    throw InvalidConfig("sigma_f_ratio must lie in (0, 1)");
  }
  if (!(sigma_theta > 0.0)) throw InvalidConfig("sigma_theta must be positive");
  for (double w : scale_weights) {
    if (!(w >= 0.0)) throw InvalidConfig("scale weights must be non-negative");
  }
  if (!(w_y >= 0.0 && w_cb >= 0.0 && w_cr >= 0.0)) {
    throw InvalidConfig("channel weights must be non-negative");
  }
  if (!(c2 > 0.0)) throw InvalidConfig("c2 must be positive");
}

LogGaborBank::LogGaborBank(std::size_t width, std::size_t height, const TextureConfig& cfg)
    : width_(width), height_(height), config_(cfg) {
  if (width < 8 || height < 8) throw InvalidInput("filter bank needs at least 8x8 samples");
  cfg.validate();

  const std::size_t n = width * height;
  std::vector<double> radius(n), angle(n);
  for (std::size_t v = 0; v < height; ++v) {
    const double fy = bin_frequency(v, height);
    for (std::size_t u = 0; u < width; ++u) {
      const double fx = bin_frequency(u, width);
      radius[v * width + u] = std::hypot(fx, fy);
      angle[v * width + u] = std::atan2(fy, fx);
    }
  }

  const double log_ratio = std::log(cfg.sigma_f_ratio);
  const double radial_denom = 2.0 * log_ratio * log_ratio;
  const double angular_denom = 2.0 * cfg.sigma_theta * cfg.sigma_theta;
  gains_.reserve(kFilters);
  for (std::size_t s = 0; s < kScales; ++s) {
    const double centre = cfg.center_frequency(s);
    for (std::size_t o = 0; o < kOrientations; ++o) {
      Plane gain(width, height);
      auto g = gain.values();
      for (std::size_t i = 1; i < n; ++i) {
        const double lr = std::log(radius[i] / centre);
        // Orientation, not direction: the angular distance has period pi.
        const double dtheta = std::remainder(angle[i] - cfg.orientations[o], std::numbers::pi);
        g[i] = std::exp(-(lr * lr) / radial_denom) * std::exp(-(dtheta * dtheta) / angular_denom);
      }
      g[0] = 0.0;
      gains_.push_back(std::move(gain));
    }
  }
}

LogGaborBank build_bank(std::size_t width, std::size_t height, const TextureConfig& cfg) {
  return LogGaborBank(width, height, cfg);
}

std::shared_ptr<const LogGaborBank> cached_bank(std::size_t width, std::size_t height,
                                                const TextureConfig& cfg) {
  // Keyed on every parameter the gains depend on.
  using Key = std::tuple<std::size_t, std::size_t, double, std::array<double, kScales>,
                         std::array<double, kOrientations>, double, double>;
  struct Entry {
    std::once_flag once;
    std::shared_ptr<const LogGaborBank> bank;
  };
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<Entry>> entries;

  const Key key{width,           height,           cfg.f0, cfg.scale_multipliers,
                cfg.orientations, cfg.sigma_f_ratio, cfg.sigma_theta};
  std::shared_ptr<Entry> entry;
  {
    std::lock_guard lock(mu);
    auto& slot = entries[key];
    if (!slot) slot = std::make_shared<Entry>();
    entry = slot;
  }
  std::call_once(entry->once, [&] {
    entry->bank = std::make_shared<const LogGaborBank>(width, height, cfg);
  });
  return entry->bank;
}

AmplitudeSet filter_amplitude(const Plane& p, const LogGaborBank& bank, Channel channel,
                              const ScaleMask& enabled) {
  if (p.width() != bank.width() || p.height() != bank.height()) {
    throw InvalidInput("plane and filter bank differ in size");
  }
  const std::size_t w = p.width();
  const std::size_t h = p.height();
  const std::size_t n = w * h;

  std::vector<std::complex<double>> spectrum(p.values().begin(), p.values().end());
  fft::forward(w, h, spectrum);

  const auto& k = kernels::active();
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<std::complex<double>> band(n);
  AmplitudeSet out;
  out.channel = channel;
  for (std::size_t s = 0; s < kScales; ++s) {
    if (!enabled[s]) continue;
    for (std::size_t o = 0; o < kOrientations; ++o) {
      k.modulate(spectrum.data(), bank.gain(s, o).values().data(), band.data(), n);
      fft::inverse(w, h, band);
      Plane amp(w, h);
      k.modulus(band.data(), scale, amp.values().data(), n);
      out.amps[s * kOrientations + o] = std::move(amp);
    }
  }
  return out;
}

Plane channel_texture_similarity(const AmplitudeSet& ref, const AmplitudeSet& dis,
                                 const TextureConfig& cfg, const ScaleMask& enabled) {
  if (ref.channel != dis.channel) throw InvalidInput("amplitude sets carry different channels");
  if (!any_enabled(enabled)) throw InvalidConfig("at least one scale must be enabled");
  if (!(cfg.c2 > 0.0)) throw InvalidConfig("c2 must be positive");

  const Plane* first = nullptr;
  for (std::size_t s = 0; s < kScales && first == nullptr; ++s) {
    if (enabled[s]) first = &ref.at(s, 0);
  }
  const std::size_t w = first->width();
  const std::size_t h = first->height();
  const std::size_t n = w * h;
  for (std::size_t s = 0; s < kScales; ++s) {
    if (!enabled[s]) continue;
    for (std::size_t o = 0; o < kOrientations; ++o) {
      const Plane& a = ref.at(s, o);
      const Plane& b = dis.at(s, o);
      if (a.empty() || b.empty()) throw InvalidInput("amplitude map missing for enabled scale");
      if (a.width() != w || a.height() != h || !a.same_shape(b)) {
        throw InvalidInput("amplitude maps differ in size");
      }
    }
  }

  const auto& k = kernels::active();
  Plane acc(w, h);
  std::vector<double> inner(n);
  for (std::size_t s = 0; s < kScales; ++s) {
    if (!enabled[s]) continue;
    k.similarity(ref.at(s, 0).values().data(), dis.at(s, 0).values().data(), cfg.c2,
                 inner.data(), n);
    for (std::size_t o = 1; o < kOrientations; ++o) {
      k.accumulate_similarity(ref.at(s, o).values().data(), dis.at(s, o).values().data(),
                              cfg.c2, inner.data(), n);
    }
    k.scale_add(inner.data(), cfg.scale_weights[s], acc.values().data(), n);
  }

  if (cfg.normalize) {
    // Same summation order as the accumulation, so identical inputs give exactly 1.
    const double norm = enabled_weight_sum(cfg, enabled);
    if (!(norm > 0.0)) throw InvalidConfig("enabled scale weights sum to zero");
    for (double& v : acc.values()) v /= norm;
  }
  return acc;
}

Plane combine_channels(const Plane& t_y, const Plane& t_cb, const Plane& t_cr,
                       const TextureConfig& cfg) {
  if (!t_y.same_shape(t_cb) || !t_y.same_shape(t_cr)) {
    throw InvalidInput("channel similarity maps differ in size");
  }
  Plane out(t_y.width(), t_y.height());
  kernels::active().combine_channels(t_y.values().data(), t_cb.values().data(),
                                     t_cr.values().data(), cfg.w_y, cfg.w_cb * 0.25,
                                     cfg.w_cr * 0.25, out.values().data(), out.size());
  return out;
}

PooledStats texture_stats(const Plane& s_t) {
  if (s_t.empty()) throw InvalidInput("texture map is empty");
  return pool_stats(s_t.values());
}

PooledStats texture_features(const YcbcrImage& ref, const YcbcrImage& dis,
                             const TextureConfig& cfg, const ScaleMask& enabled) {
  if (!any_enabled(enabled)) throw InvalidConfig("at least one scale must be enabled");
  if (!ref.y.same_shape(dis.y)) throw InvalidInput("images differ in size");
  const auto bank = cached_bank(ref.width(), ref.height(), cfg);

  const auto channel_map = [&](const Plane& a, const Plane& b, Channel c) {
    return channel_texture_similarity(filter_amplitude(a, *bank, c, enabled),
                                      filter_amplitude(b, *bank, c, enabled), cfg, enabled);
  };
  const Plane t_y = channel_map(ref.y, dis.y, Channel::kY);
  const Plane t_cb = channel_map(ref.cb, dis.cb, Channel::kCb);
  const Plane t_cr = channel_map(ref.cr, dis.cr, Channel::kCr);
  return texture_stats(combine_channels(t_y, t_cb, t_cr, cfg));
}

}  // namespace fgiqa
