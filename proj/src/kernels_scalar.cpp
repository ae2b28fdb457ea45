#include <cmath>
#include <cstddef>

#include "pncf/kernels.hpp"

namespace pncf::kernels {
namespace {

void sc_matmul_accum(double* out, const double* x, const double* w,
                     std::size_t rows, std::size_t inner, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* xr = x + i * inner;
    double* outr = out + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const double xv = xr[k];
      const double* wr = w + k * cols;
      for (std::size_t j = 0; j < cols; ++j) {
        outr[j] += xv * wr[j];
      }
    }
  }
}

void sc_relu(const double* x, double* value, double* deriv, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    value[i] = x[i] > 0.0 ? x[i] : 0.0;
    deriv[i] = x[i] > 0.0 ? 1.0 : 0.0;
  }
}

void sc_mul_inplace(double* a, const double* b, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    a[i] *= b[i];
  }
}

void sc_adam_update(double* p, const double* g, double* m, double* v,
                    std::size_t len, double lr, double beta1, double beta2,
                    double eps, double bias1, double bias2) {
  for (std::size_t i = 0; i < len; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * (g[i] * g[i]);
    p[i] -= lr * (m[i] * bias1) / (std::sqrt(v[i] * bias2) + eps);
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{"scalar", sc_matmul_accum, sc_relu,
                               sc_mul_inplace, sc_adam_update};
  return backend;
}

}  // namespace pncf::kernels
