#pragma once

#include <filesystem>

#include "fgiqa/colorspace.hpp"

namespace fgiqa::cli {

// Decodes a lossless image (.png, .bmp, .ppm, .pgm, .pnm). Gray is expanded
// to RGB, alpha is dropped, 16-bit samples are rescaled to [0, 255].
// Throws InvalidInput with the path in the message.
RgbImage load_image(const std::filesystem::path& path);

// Writes 8-bit samples (rounded, clamped). Format follows the extension.
void save_image(const std::filesystem::path& path, const RgbImage& img);

// Encodes as baseline JPEG at `quality` (1..100) and decodes again.
RgbImage jpeg_recompress(const RgbImage& img, int quality);

}  // namespace fgiqa::cli
