#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fgiqa/colorspace.hpp"
#include "fgiqa/plane.hpp"
#include "oracles/oracles.hpp"

namespace fgiqa::testing {

inline std::filesystem::path data_dir() { return FGIQA_TEST_DATA_DIR; }

inline const std::vector<std::string>& photo_names() {
  static const std::vector<std::string> names{"astronaut", "chelsea", "coffee", "rocket",
                                              "motorcycle", "hubble", "ihc", "camera",
                                              "brick", "gravel"};
  return names;
}

inline Plane random_plane(std::size_t w, std::size_t h, std::mt19937_64& rng, double lo = 0.0,
                          double hi = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Plane p(w, h);
  for (double& v : p.values()) v = dist(rng);
  return p;
}

inline RgbImage random_rgb(std::size_t w, std::size_t h, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, 255);
  RgbImage img{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (Plane* p : {&img.r, &img.g, &img.b}) {
    for (double& v : p->values()) v = dist(rng);
  }
  return img;
}

inline RgbImage crop(const RgbImage& img, std::size_t x0, std::size_t y0, std::size_t w,
                     std::size_t h) {
  RgbImage out{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      out.r(x, y) = img.r(x0 + x, y0 + y);
      out.g(x, y) = img.g(x0 + x, y0 + y);
      out.b(x, y) = img.b(x0 + x, y0 + y);
    }
  }
  return out;
}

// 3x3 box blur with edge clamping, rounded back to integers.
inline RgbImage box_blur(const RgbImage& img) {
  RgbImage out = img;
  const auto w = static_cast<long>(img.width());
  const auto h = static_cast<long>(img.height());
  for (auto [src, dst] : {std::pair{&img.r, &out.r}, {&img.g, &out.g}, {&img.b, &out.b}}) {
    for (long y = 0; y < h; ++y) {
      for (long x = 0; x < w; ++x) {
        double s = 0;
        for (long j = -1; j <= 1; ++j) {
          for (long i = -1; i <= 1; ++i) {
            s += (*src)(static_cast<std::size_t>(std::clamp(x + i, 0L, w - 1)),
                        static_cast<std::size_t>(std::clamp(y + j, 0L, h - 1)));
          }
        }
        (*dst)(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = std::round(s / 9);
      }
    }
  }
  return out;
}

inline RgbImage add_noise(const RgbImage& img, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, sigma);
  RgbImage out = img;
  for (Plane* p : {&out.r, &out.g, &out.b}) {
    for (double& v : p->values()) v = std::clamp(std::round(v + n(rng)), 0.0, 255.0);
  }
  return out;
}

inline oracle::Image to_oracle(const Plane& p) {
  return {p.width(), p.height(), std::vector<double>(p.values().begin(), p.values().end())};
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace fgiqa::testing
