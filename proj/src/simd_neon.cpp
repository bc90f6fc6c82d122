// NEON kernel variants for aarch64 builds. Compiled unconditionally there;
// float64x2 is baseline on that architecture so no runtime gate is needed.
#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

namespace argmin::simd::neon {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double r = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

double sum(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double r = vaddvq_f64(acc);
  for (; i < n; ++i) r += a[i];
  return r;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    m = vmaxq_f64(m, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::max(r, std::fabs(a[i] - b[i]));
  return r;
}

void scale(double* a, std::size_t n, double c) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(a + i, vmulq_f64(vld1q_f64(a + i), vc));
  for (; i < n; ++i) a[i] *= c;
}

}  // namespace argmin::simd::neon

#endif  // __aarch64__
