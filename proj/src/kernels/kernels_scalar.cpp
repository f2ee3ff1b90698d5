#include <algorithm>
#include <cmath>

#include "fgiqa/kernels.hpp"

namespace fgiqa::kernels {
namespace {

void rgb_to_ycbcr(const double* r, const double* g, const double* b, double* y, double* cb,
                  double* cr, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = 0.257 * r[i] + 0.564 * g[i] + 0.098 * b[i] + 16.0;
    cb[i] = -0.148 * r[i] - 0.291 * g[i] + 0.439 * b[i] + 128.0;
    cr[i] = 0.439 * r[i] - 0.368 * g[i] - 0.071 * b[i] + 128.0;
  }
}

void sobel_row(const double* above, const double* row, const double* below, double* out,
               std::size_t width, SobelForm form) {
  if (form == SobelForm::kStandard) {
    for (std::size_t x = 0; x < width; ++x) {
      const double gx = 0.25 * (above[x + 2] - above[x]) + 0.5 * (row[x + 2] - row[x]) +
                        0.25 * (below[x + 2] - below[x]);
      const double gy = 0.25 * (below[x] - above[x]) + 0.5 * (below[x + 1] - above[x + 1]) +
                        0.25 * (below[x + 2] - above[x + 2]);
      out[x] = std::sqrt(gx * gx + gy * gy);
    }
  } else {
    for (std::size_t x = 0; x < width; ++x) {
      const double gx = 0.25 * (above[x + 2] + above[x]) + 0.5 * (row[x + 2] + row[x]) +
                        0.25 * (below[x + 2] + below[x]);
      const double gy = 0.25 * (below[x] + above[x]) + 0.5 * (below[x + 1] + above[x + 1]) +
                        0.25 * (below[x + 2] + above[x + 2]);
      out[x] = std::sqrt(gx * gx + gy * gy);
    }
  }
}

inline double ratio(double a, double b, double c) {
  const double num = 2.0 * (a * b) + c;
  const double den = (a * a + b * b) + c;
  return std::min(num / den, 1.0);
}

void similarity(const double* a, const double* b, double c, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = ratio(a[i], b[i], c);
}

void accumulate_similarity(const double* a, const double* b, double c, double* acc,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += ratio(a[i], b[i], c);
}

void scale_add(const double* src, double weight, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += weight * src[i];
}

void modulate(const std::complex<double>* spectrum, const double* gain,
              std::complex<double>* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {spectrum[i].real() * gain[i], spectrum[i].imag() * gain[i]};
  }
}

void modulus(const std::complex<double>* in, double scale, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = in[i].real();
    const double im = in[i].imag();
    out[i] = std::sqrt(re * re + im * im) * scale;
  }
}

void combine_channels(const double* ty, const double* tcb, const double* tcr, double wy,
                      double wcb, double wcr, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::sqrt(wy * (ty[i] * ty[i]) + wcb * (tcb[i] * tcb[i]) + wcr * (tcr[i] * tcr[i]));
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      "scalar",         rgb_to_ycbcr, sobel_row, similarity, accumulate_similarity,
      scale_add,        modulate,     modulus,   combine_channels,
  };
  return table;
}

}  // namespace fgiqa::kernels
