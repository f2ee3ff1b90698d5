#include "fgiqa/colorspace.hpp"

#include "fgiqa/errors.hpp"
#include "fgiqa/kernels.hpp"

namespace fgiqa {

void RgbImage::validate() const {
  if (!r.same_shape(g) || !r.same_shape(b)) {
    throw InvalidInput("RGB channels differ in size");
  }
  if (r.width() < 3 || r.height() < 3) {
    throw InvalidInput("image must be at least 3x3");
  }
}

RgbImage RgbImage::from_interleaved(std::size_t width, std::size_t height, int channels,
                                    std::span<const std::uint8_t> samples) {
  if (channels != 1 && channels != 3 && channels != 4) {
    throw InvalidInput("unsupported channel count");
  }
  const auto stride = static_cast<std::size_t>(channels);
  if (samples.size() != width * height * stride) {
    throw InvalidInput("sample count does not match image size");
  }
  RgbImage img{Plane(width, height), Plane(width, height), Plane(width, height)};
  auto r = img.r.values();
  auto g = img.g.values();
  auto b = img.b.values();
  for (std::size_t i = 0; i < width * height; ++i) {
    const std::uint8_t* px = samples.data() + i * stride;
    if (channels == 1) {
      r[i] = g[i] = b[i] = px[0];
    } else {
      r[i] = px[0];
      g[i] = px[1];
      b[i] = px[2];
    }
  }
  return img;
}

RgbImage RgbImage::filled(std::size_t width, std::size_t height, double r, double g, double b) {
  return {Plane(width, height, r), Plane(width, height, g), Plane(width, height, b)};
}

YcbcrImage rgb_to_ycbcr(const RgbImage& img) {
  img.validate();
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  YcbcrImage out{Plane(w, h), Plane(w, h), Plane(w, h)};
  kernels::active().rgb_to_ycbcr(img.r.values().data(), img.g.values().data(),
                                 img.b.values().data(), out.y.values().data(),
                                 out.cb.values().data(), out.cr.values().data(), w * h);
  return out;
}

}  // namespace fgiqa
