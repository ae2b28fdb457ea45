// NEON variants for aarch64, where NEON is baseline. Same contract as the
// AVX2 file: unfused multiply-add only, bit-identical to scalar.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

#include "pncf/kernels.hpp"

namespace pncf::kernels {
namespace {

void n_matmul_accum(double* out, const double* x, const double* w,
                    std::size_t rows, std::size_t inner, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* xr = x + i * inner;
    double* outr = out + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const float64x2_t xv = vdupq_n_f64(xr[k]);
      const double* wr = w + k * cols;
      std::size_t j = 0;
      for (; j + 2 <= cols; j += 2) {
        float64x2_t acc = vld1q_f64(outr + j);
        acc = vaddq_f64(acc, vmulq_f64(xv, vld1q_f64(wr + j)));
        vst1q_f64(outr + j, acc);
      }
      for (; j < cols; ++j) {
        outr[j] += xr[k] * wr[j];
      }
    }
  }
}

void n_relu(const double* x, double* value, double* deriv, std::size_t len) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const float64x2_t xv = vld1q_f64(x + i);
    const uint64x2_t pos = vcgtq_f64(xv, zero);
    vst1q_f64(value + i,
              vreinterpretq_f64_u64(vandq_u64(pos, vreinterpretq_u64_f64(xv))));
    vst1q_f64(deriv + i,
              vreinterpretq_f64_u64(vandq_u64(pos, vreinterpretq_u64_f64(one))));
  }
  for (; i < len; ++i) {
    value[i] = x[i] > 0.0 ? x[i] : 0.0;
    deriv[i] = x[i] > 0.0 ? 1.0 : 0.0;
  }
}

void n_mul_inplace(double* a, const double* b, std::size_t len) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    vst1q_f64(a + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  for (; i < len; ++i) {
    a[i] *= b[i];
  }
}

void n_adam_update(double* p, const double* g, double* m, double* v,
                   std::size_t len, double lr, double beta1, double beta2,
                   double eps, double bias1, double bias2) {
  const float64x2_t vb1 = vdupq_n_f64(beta1);
  const float64x2_t vc1 = vdupq_n_f64(1.0 - beta1);
  const float64x2_t vb2 = vdupq_n_f64(beta2);
  const float64x2_t vc2 = vdupq_n_f64(1.0 - beta2);
  const float64x2_t vlr = vdupq_n_f64(lr);
  const float64x2_t veps = vdupq_n_f64(eps);
  const float64x2_t vbias1 = vdupq_n_f64(bias1);
  const float64x2_t vbias2 = vdupq_n_f64(bias2);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const float64x2_t gv = vld1q_f64(g + i);
    float64x2_t mv = vld1q_f64(m + i);
    float64x2_t vv = vld1q_f64(v + i);
    mv = vaddq_f64(vmulq_f64(vb1, mv), vmulq_f64(vc1, gv));
    vv = vaddq_f64(vmulq_f64(vb2, vv), vmulq_f64(vc2, vmulq_f64(gv, gv)));
    vst1q_f64(m + i, mv);
    vst1q_f64(v + i, vv);
    const float64x2_t mhat = vmulq_f64(mv, vbias1);
    const float64x2_t denom = vaddq_f64(vsqrtq_f64(vmulq_f64(vv, vbias2)), veps);
    const float64x2_t step = vdivq_f64(vmulq_f64(vlr, mhat), denom);
    vst1q_f64(p + i, vsubq_f64(vld1q_f64(p + i), step));
  }
  for (; i < len; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * (g[i] * g[i]);
    p[i] -= lr * (m[i] * bias1) / (std::sqrt(v[i] * bias2) + eps);
  }
}

}  // namespace

const Backend& neon_backend() {
  static const Backend backend{"neon", n_matmul_accum, n_relu, n_mul_inplace,
                               n_adam_update};
  return backend;
}

}  // namespace pncf::kernels

#endif  // __aarch64__
