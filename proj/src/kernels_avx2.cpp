// AVX2 variants of the numeric inner loops. Built with -mavx2 only (no
// -mfma): scalar and vector paths must round identically, and sqrt/div
// are correctly rounded in both, so results match the scalar backend
// bit for bit. Vectorization is across output elements; accumulation
// order per element is unchanged.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "pncf/kernels.hpp"

namespace pncf::kernels {
namespace {

void v_matmul_accum(double* out, const double* x, const double* w,
                    std::size_t rows, std::size_t inner, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* xr = x + i * inner;
    double* outr = out + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const __m256d xv = _mm256_set1_pd(xr[k]);
      const double* wr = w + k * cols;
      std::size_t j = 0;
      for (; j + 4 <= cols; j += 4) {
        __m256d acc = _mm256_loadu_pd(outr + j);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(xv, _mm256_loadu_pd(wr + j)));
        _mm256_storeu_pd(outr + j, acc);
      }
      for (; j < cols; ++j) {
        outr[j] += xr[k] * wr[j];
      }
    }
  }
}

void v_relu(const double* x, double* value, double* deriv, std::size_t len) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d pos = _mm256_cmp_pd(xv, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(value + i, _mm256_and_pd(pos, xv));
    _mm256_storeu_pd(deriv + i, _mm256_and_pd(pos, one));
  }
  for (; i < len; ++i) {
    value[i] = x[i] > 0.0 ? x[i] : 0.0;
    deriv[i] = x[i] > 0.0 ? 1.0 : 0.0;
  }
}

void v_mul_inplace(double* a, const double* b, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(a + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                          _mm256_loadu_pd(b + i)));
  }
  for (; i < len; ++i) {
    a[i] *= b[i];
  }
}

void v_adam_update(double* p, const double* g, double* m, double* v,
                   std::size_t len, double lr, double beta1, double beta2,
                   double eps, double bias1, double bias2) {
  const __m256d vb1 = _mm256_set1_pd(beta1);
  const __m256d vc1 = _mm256_set1_pd(1.0 - beta1);
  const __m256d vb2 = _mm256_set1_pd(beta2);
  const __m256d vc2 = _mm256_set1_pd(1.0 - beta2);
  const __m256d vlr = _mm256_set1_pd(lr);
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d vbias1 = _mm256_set1_pd(bias1);
  const __m256d vbias2 = _mm256_set1_pd(bias2);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d gv = _mm256_loadu_pd(g + i);
    __m256d mv = _mm256_loadu_pd(m + i);
    __m256d vv = _mm256_loadu_pd(v + i);
    mv = _mm256_add_pd(_mm256_mul_pd(vb1, mv), _mm256_mul_pd(vc1, gv));
    vv = _mm256_add_pd(_mm256_mul_pd(vb2, vv),
                       _mm256_mul_pd(vc2, _mm256_mul_pd(gv, gv)));
    _mm256_storeu_pd(m + i, mv);
    _mm256_storeu_pd(v + i, vv);
    const __m256d mhat = _mm256_mul_pd(mv, vbias1);
    const __m256d denom =
        _mm256_add_pd(_mm256_sqrt_pd(_mm256_mul_pd(vv, vbias2)), veps);
    const __m256d step = _mm256_div_pd(_mm256_mul_pd(vlr, mhat), denom);
    _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), step));
  }
  for (; i < len; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * (g[i] * g[i]);
    p[i] -= lr * (m[i] * bias1) / (std::sqrt(v[i] * bias2) + eps);
  }
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend backend{"avx2", v_matmul_accum, v_relu, v_mul_inplace,
                               v_adam_update};
  return backend;
}

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

}  // namespace pncf::kernels

#endif  // x86_64
