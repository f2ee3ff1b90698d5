#pragma once

// Per-pixel inner loops of the metric. Every kernel has a scalar reference
// implementation; SIMD variants perform the same IEEE operations in the same
// order, so all tables produce bit-identical output.

#include <complex>
#include <cstddef>
#include <string_view>

namespace fgiqa::kernels {

enum class SobelForm {
  kStandard,  // antisymmetric derivative kernels
  kVerbatim,  // both outer columns (rows) negative, as sometimes printed
};

struct KernelTable {
  std::string_view name;

  // Y/Cb/Cr from R/G/B, n samples.
  void (*rgb_to_ycbcr)(const double* r, const double* g, const double* b,
                       double* y, double* cb, double* cr, std::size_t n);

  // Gradient magnitude for one output row. `above`, `row`, `below` are
  // edge-padded rows of width + 2 samples; `out` receives `width` samples.
  void (*sobel_row)(const double* above, const double* row, const double* below,
                    double* out, std::size_t width, SobelForm form);

  // out = min(1, (2ab + c) / (a^2 + b^2 + c))
  void (*similarity)(const double* a, const double* b, double c, double* out, std::size_t n);

  // acc += min(1, (2ab + c) / (a^2 + b^2 + c))
  void (*accumulate_similarity)(const double* a, const double* b, double c, double* acc,
                                std::size_t n);

  // acc += weight * src
  void (*scale_add)(const double* src, double weight, double* acc, std::size_t n);

  // out = spectrum * gain
  void (*modulate)(const std::complex<double>* spectrum, const double* gain,
                   std::complex<double>* out, std::size_t n);

  // out = |in| * scale, with |z| = sqrt(re^2 + im^2)
  void (*modulus)(const std::complex<double>* in, double scale, double* out, std::size_t n);

  // out = sqrt(wy*ty^2 + wcb*tcb^2 + wcr*tcr^2)
  void (*combine_channels)(const double* ty, const double* tcb, const double* tcr, double wy,
                           double wcb, double wcr, double* out, std::size_t n);
};

const KernelTable& scalar_table();

// Null when the build or the host CPU lacks AVX2.
const KernelTable* avx2_table();

// Table used by the library. Picks the widest supported variant once;
// FGIQA_KERNELS=scalar in the environment forces the reference path.
const KernelTable& active();

}  // namespace fgiqa::kernels
