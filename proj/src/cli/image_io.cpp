#include "fgiqa/cli/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "fgiqa/errors.hpp"

namespace fgiqa::cli {
namespace {

bool lossless_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  static constexpr std::array<const char*, 5> kAllowed{".png", ".bmp", ".ppm", ".pgm", ".pnm"};
  return std::any_of(kAllowed.begin(), kAllowed.end(), [&](const char* e) { return ext == e; });
}

RgbImage from_mat(const cv::Mat& mat) {
  if (mat.depth() != CV_8U && mat.depth() != CV_16U) {
    throw InvalidInput("unsupported sample depth");
  }
  const int channels = mat.channels();
  if (channels != 1 && channels != 3 && channels != 4) {
    throw InvalidInput("unsupported channel count " + std::to_string(channels));
  }
  const auto w = static_cast<std::size_t>(mat.cols);
  const auto h = static_cast<std::size_t>(mat.rows);
  RgbImage img{Plane(w, h), Plane(w, h), Plane(w, h)};
  const double scale = mat.depth() == CV_16U ? 255.0 / 65535.0 : 1.0;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      std::array<double, 4> px{};
      for (int c = 0; c < channels; ++c) {
        const auto col = static_cast<int>(x) * channels + c;
        px[static_cast<std::size_t>(c)] =
            mat.depth() == CV_8U ? mat.ptr<std::uint8_t>(static_cast<int>(y))[col]
                                 : mat.ptr<std::uint16_t>(static_cast<int>(y))[col] * scale;
      }
      if (channels == 1) {
        img.r(x, y) = img.g(x, y) = img.b(x, y) = px[0];
      } else {
        // OpenCV orders colour samples B, G, R(, A).
        img.b(x, y) = px[0];
        img.g(x, y) = px[1];
        img.r(x, y) = px[2];
      }
    }
  }
  return img;
}

cv::Mat to_mat(const RgbImage& img) {
  img.validate();
  cv::Mat mat(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_8UC3);
  const auto to8 = [](double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
  };
  for (std::size_t y = 0; y < img.height(); ++y) {
    auto* row = mat.ptr<std::uint8_t>(static_cast<int>(y));
    for (std::size_t x = 0; x < img.width(); ++x) {
      row[3 * x + 0] = to8(img.b(x, y));
      row[3 * x + 1] = to8(img.g(x, y));
      row[3 * x + 2] = to8(img.r(x, y));
    }
  }
  return mat;
}

}  // namespace

RgbImage load_image(const std::filesystem::path& path) {
  if (!lossless_extension(path)) {
    throw InvalidInput(path.string() + ": only PNG, BMP and PPM/PGM images are accepted");
  }
  if (!std::filesystem::exists(path)) throw InvalidInput(path.string() + ": file not found");
  const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED | cv::IMREAD_ANYDEPTH);
  if (mat.empty()) throw InvalidInput(path.string() + ": could not decode image");
  try {
    RgbImage img = from_mat(mat);
    img.validate();
    return img;
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void save_image(const std::filesystem::path& path, const RgbImage& img) {
  if (!cv::imwrite(path.string(), to_mat(img))) {
    throw InvalidInput(path.string() + ": could not write image");
  }
}

RgbImage jpeg_recompress(const RgbImage& img, int quality) {
  std::vector<std::uint8_t> bytes;
  if (!cv::imencode(".jpg", to_mat(img), bytes, {cv::IMWRITE_JPEG_QUALITY, quality})) {
    throw InvalidInput("JPEG encoding failed");
  }
  return from_mat(cv::imdecode(bytes, cv::IMREAD_COLOR));
}

}  // namespace fgiqa::cli
