#include "argmin/simd.hpp"

#include <cstddef>

#if defined(ARGMIN_BUILD_AVX2)
namespace argmin::simd::avx2 {
double dot(const double*, const double*, std::size_t);
double sum(const double*, std::size_t);
double max_abs_diff(const double*, const double*, std::size_t);
void scale(double*, std::size_t, double);
}  // namespace argmin::simd::avx2
#endif

#if defined(__aarch64__)
namespace argmin::simd::neon {
double dot(const double*, const double*, std::size_t);
double sum(const double*, std::size_t);
double max_abs_diff(const double*, const double*, std::size_t);
void scale(double*, std::size_t, double);
}  // namespace argmin::simd::neon
#endif

namespace argmin::simd {
namespace {

struct Backend {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*max_abs_diff)(const double*, const double*, std::size_t);
  void (*scale)(double*, std::size_t, double);
  const char* name;
};

Backend pick_backend() {
  Backend b{&scalar::dot, &scalar::sum, &scalar::max_abs_diff, &scalar::scale,
            "scalar"};
#if defined(ARGMIN_BUILD_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    b = Backend{&avx2::dot, &avx2::sum, &avx2::max_abs_diff, &avx2::scale,
                "avx2"};
  }
#elif defined(__aarch64__)
  b = Backend{&neon::dot, &neon::sum, &neon::max_abs_diff, &neon::scale,
              "neon"};
#endif
  return b;
}

const Backend& backend() {
  static const Backend b = pick_backend();
  return b;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  return backend().dot(a, b, n);
}

double sum(const double* a, std::size_t n) { return backend().sum(a, n); }

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  return backend().max_abs_diff(a, b, n);
}

void scale(double* a, std::size_t n, double c) { backend().scale(a, n, c); }

const char* active_backend() { return backend().name; }

}  // namespace argmin::simd
