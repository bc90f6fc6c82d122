// Runtime-dispatched double-precision array kernels.
//
// The dispatched entry points pick the widest ISA available on the running
// machine (AVX2+FMA on x86-64, NEON on aarch64) the first time any kernel is
// called; the scalar reference implementations stay callable directly so the
// variants can be equivalence-tested against each other.
#pragma once

#include <cstddef>

namespace argmin::simd {

// Dispatched kernels. dot/sum accumulate in a fixed lane order, so results are
// reproducible run-to-run on the same machine, but may differ from the scalar
// reference by floating-point reassociation.
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
void scale(double* a, std::size_t n, double c);

// Name of the active backend: "scalar", "avx2", or "neon".
const char* active_backend();

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
void scale(double* a, std::size_t n, double c);
}  // namespace scalar

}  // namespace argmin::simd
