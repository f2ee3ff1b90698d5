#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "fgiqa/plane.hpp"

namespace fgiqa {

// Three equally sized channels holding values on the 8-bit scale [0, 255].
// Integer-valued for 8-bit sources; 16-bit sources are rescaled to reals.
struct RgbImage {
  Plane r;
  Plane g;
  Plane b;

  std::size_t width() const { return r.width(); }
  std::size_t height() const { return r.height(); }

  // Throws InvalidInput on mismatched channels or a side shorter than 3.
  void validate() const;

  // Builds from interleaved samples with `channels` per pixel (1 = gray,
  // 3 = RGB, 4 = RGBA with alpha dropped).
  static RgbImage from_interleaved(std::size_t width, std::size_t height, int channels,
                                   std::span<const std::uint8_t> samples);
  // Constant-colour image.
  static RgbImage filled(std::size_t width, std::size_t height, double r, double g, double b);
};

struct YcbcrImage {
  Plane y;
  Plane cb;
  Plane cr;

  std::size_t width() const { return y.width(); }
  std::size_t height() const { return y.height(); }
};

// Affine conversion in full double precision with no rounding or clamping:
//   Y  =  0.257 R + 0.564 G + 0.098 B +  16
//   Cb = -0.148 R - 0.291 G + 0.439 B + 128
//   Cr =  0.439 R - 0.368 G - 0.071 B + 128
YcbcrImage rgb_to_ycbcr(const RgbImage& img);

}  // namespace fgiqa
