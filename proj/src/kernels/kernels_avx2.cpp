// Compiled with -mavx2 only. FMA stays off so lanes round exactly like the
// scalar reference.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "fgiqa/kernels.hpp"

namespace fgiqa::kernels {
namespace {

constexpr std::size_t kLanes = 4;

void rgb_to_ycbcr(const double* r, const double* g, const double* b, double* y, double* cb,
                  double* cr, std::size_t n) {
  const __m256d ky_r = _mm256_set1_pd(0.257), ky_g = _mm256_set1_pd(0.564),
                ky_b = _mm256_set1_pd(0.098), k16 = _mm256_set1_pd(16.0);
  const __m256d kcb_r = _mm256_set1_pd(-0.148), kcb_g = _mm256_set1_pd(0.291),
                kcb_b = _mm256_set1_pd(0.439), k128 = _mm256_set1_pd(128.0);
  const __m256d kcr_r = _mm256_set1_pd(0.439), kcr_g = _mm256_set1_pd(0.368),
                kcr_b = _mm256_set1_pd(0.071);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vr = _mm256_loadu_pd(r + i);
    const __m256d vg = _mm256_loadu_pd(g + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    __m256d t = _mm256_add_pd(_mm256_mul_pd(ky_r, vr), _mm256_mul_pd(ky_g, vg));
    t = _mm256_add_pd(_mm256_add_pd(t, _mm256_mul_pd(ky_b, vb)), k16);
    _mm256_storeu_pd(y + i, t);
    t = _mm256_sub_pd(_mm256_mul_pd(kcb_r, vr), _mm256_mul_pd(kcb_g, vg));
    t = _mm256_add_pd(_mm256_add_pd(t, _mm256_mul_pd(kcb_b, vb)), k128);
    _mm256_storeu_pd(cb + i, t);
    t = _mm256_sub_pd(_mm256_mul_pd(kcr_r, vr), _mm256_mul_pd(kcr_g, vg));
    t = _mm256_add_pd(_mm256_sub_pd(t, _mm256_mul_pd(kcr_b, vb)), k128);
    _mm256_storeu_pd(cr + i, t);
  }
  scalar_table().rgb_to_ycbcr(r + i, g + i, b + i, y + i, cb + i, cr + i, n - i);
}

inline __m256d magnitude(__m256d gx, __m256d gy) {
  return _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(gx, gx), _mm256_mul_pd(gy, gy)));
}

void sobel_row(const double* above, const double* row, const double* below, double* out,
               std::size_t width, SobelForm form) {
  const __m256d quarter = _mm256_set1_pd(0.25);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t x = 0;
  if (form == SobelForm::kStandard) {
    for (; x + kLanes <= width; x += kLanes) {
      const __m256d a0 = _mm256_loadu_pd(above + x), a1 = _mm256_loadu_pd(above + x + 1),
                    a2 = _mm256_loadu_pd(above + x + 2);
      const __m256d r0 = _mm256_loadu_pd(row + x), r2 = _mm256_loadu_pd(row + x + 2);
      const __m256d b0 = _mm256_loadu_pd(below + x), b1 = _mm256_loadu_pd(below + x + 1),
                    b2 = _mm256_loadu_pd(below + x + 2);
      __m256d gx = _mm256_add_pd(_mm256_mul_pd(quarter, _mm256_sub_pd(a2, a0)),
                                 _mm256_mul_pd(half, _mm256_sub_pd(r2, r0)));
      gx = _mm256_add_pd(gx, _mm256_mul_pd(quarter, _mm256_sub_pd(b2, b0)));
      __m256d gy = _mm256_add_pd(_mm256_mul_pd(quarter, _mm256_sub_pd(b0, a0)),
                                 _mm256_mul_pd(half, _mm256_sub_pd(b1, a1)));
      gy = _mm256_add_pd(gy, _mm256_mul_pd(quarter, _mm256_sub_pd(b2, a2)));
      _mm256_storeu_pd(out + x, magnitude(gx, gy));
    }
  } else {
    for (; x + kLanes <= width; x += kLanes) {
      const __m256d a0 = _mm256_loadu_pd(above + x), a1 = _mm256_loadu_pd(above + x + 1),
                    a2 = _mm256_loadu_pd(above + x + 2);
      const __m256d r0 = _mm256_loadu_pd(row + x), r2 = _mm256_loadu_pd(row + x + 2);
      const __m256d b0 = _mm256_loadu_pd(below + x), b1 = _mm256_loadu_pd(below + x + 1),
                    b2 = _mm256_loadu_pd(below + x + 2);
      __m256d gx = _mm256_add_pd(_mm256_mul_pd(quarter, _mm256_add_pd(a2, a0)),
                                 _mm256_mul_pd(half, _mm256_add_pd(r2, r0)));
      gx = _mm256_add_pd(gx, _mm256_mul_pd(quarter, _mm256_add_pd(b2, b0)));
      __m256d gy = _mm256_add_pd(_mm256_mul_pd(quarter, _mm256_add_pd(b0, a0)),
                                 _mm256_mul_pd(half, _mm256_add_pd(b1, a1)));
      gy = _mm256_add_pd(gy, _mm256_mul_pd(quarter, _mm256_add_pd(b2, a2)));
      _mm256_storeu_pd(out + x, magnitude(gx, gy));
    }
  }
  if (x < width) {
    scalar_table().sobel_row(above + x, row + x, below + x, out + x, width - x, form);
  }
}

inline __m256d ratio(__m256d a, __m256d b, __m256d c) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d num = _mm256_add_pd(_mm256_mul_pd(two, _mm256_mul_pd(a, b)), c);
  const __m256d den =
      _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b)), c);
  return _mm256_min_pd(_mm256_div_pd(num, den), one);
}

void similarity(const double* a, const double* b, double c, double* out, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(out + i, ratio(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), vc));
  }
  scalar_table().similarity(a + i, b + i, c, out + i, n - i);
}

void accumulate_similarity(const double* a, const double* b, double c, double* acc,
                           std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d s = ratio(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), vc);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), s));
  }
  scalar_table().accumulate_similarity(a + i, b + i, c, acc + i, n - i);
}

void scale_add(const double* src, double weight, double* acc, std::size_t n) {
  const __m256d w = _mm256_set1_pd(weight);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d t = _mm256_mul_pd(w, _mm256_loadu_pd(src + i));
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), t));
  }
  scalar_table().scale_add(src + i, weight, acc + i, n - i);
}

// std::complex<double> is layout-compatible with double[2].
void modulate(const std::complex<double>* spectrum, const double* gain,
              std::complex<double>* out, std::size_t n) {
  const double* in = reinterpret_cast<const double*>(spectrum);
  double* dst = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // (g0, g0, g1, g1) against (re0, im0, re1, im1)
    const __m128d g = _mm_loadu_pd(gain + i);
    const __m256d gg = _mm256_permute4x64_pd(_mm256_castpd128_pd256(g), 0x50);
    _mm256_storeu_pd(dst + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(in + 2 * i), gg));
  }
  scalar_table().modulate(spectrum + i, gain + i, out + i, n - i);
}

void modulus(const std::complex<double>* in, double scale, double* out, std::size_t n) {
  const double* src = reinterpret_cast<const double*>(in);
  const __m256d vs = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d lo = _mm256_loadu_pd(src + 2 * i);      // re0 im0 re1 im1
    const __m256d hi = _mm256_loadu_pd(src + 2 * i + 4);  // re2 im2 re3 im3
    const __m256d sq_lo = _mm256_mul_pd(lo, lo);
    const __m256d sq_hi = _mm256_mul_pd(hi, hi);
    // hadd gives (re0^2+im0^2, re2^2+im2^2, re1^2+im1^2, re3^2+im3^2)
    const __m256d sums = _mm256_hadd_pd(sq_lo, sq_hi);
    const __m256d ordered = _mm256_permute4x64_pd(sums, 0xD8);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sqrt_pd(ordered), vs));
  }
  scalar_table().modulus(in + i, scale, out + i, n - i);
}

void combine_channels(const double* ty, const double* tcb, const double* tcr, double wy,
                      double wcb, double wcr, double* out, std::size_t n) {
  const __m256d vy = _mm256_set1_pd(wy), vcb = _mm256_set1_pd(wcb), vcr = _mm256_set1_pd(wcr);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d a = _mm256_loadu_pd(ty + i);
    const __m256d b = _mm256_loadu_pd(tcb + i);
    const __m256d c = _mm256_loadu_pd(tcr + i);
    __m256d s = _mm256_add_pd(_mm256_mul_pd(vy, _mm256_mul_pd(a, a)),
                              _mm256_mul_pd(vcb, _mm256_mul_pd(b, b)));
    s = _mm256_add_pd(s, _mm256_mul_pd(vcr, _mm256_mul_pd(c, c)));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(s));
  }
  scalar_table().combine_channels(ty + i, tcb + i, tcr + i, wy, wcb, wcr, out + i, n - i);
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{
      "avx2",    rgb_to_ycbcr, sobel_row, similarity, accumulate_similarity,
      scale_add, modulate,     modulus,   combine_channels,
  };
  return table;
}

}  // namespace fgiqa::kernels
