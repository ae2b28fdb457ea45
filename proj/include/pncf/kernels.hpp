#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace pncf::kernels {

// Data-parallel inner loops behind the numerics layer. Every backend must
// be bit-identical to the scalar reference: per output element, all
// variants perform the same IEEE operations in the same order (vector
// lanes run independent elements, accumulation stays sequential), and no
// backend uses fused multiply-add. Equivalence is enforced by tests with
// exact comparison, not tolerances.
struct Backend {
  const char* name;

  // out[i][j] += sum_k x[i][k] * w[k][j]
  // x is rows x inner, w is inner x cols, out is rows x cols and carries
  // its initial contents (bias or zeros). Accumulation order over k is
  // fixed per output element.
  void (*matmul_accum)(double* out, const double* x, const double* w,
                       std::size_t rows, std::size_t inner, std::size_t cols);

  // value[i] = max(0, x[i]); deriv[i] = x[i] > 0 ? 1 : 0
  void (*relu)(const double* x, double* value, double* deriv, std::size_t len);

  // a[i] *= b[i]
  void (*mul_inplace)(double* a, const double* b, std::size_t len);

  // Adam step with bias correction factors precomputed by the caller:
  //   m[i] = beta1*m[i] + (1-beta1)*g[i]
  //   v[i] = beta2*v[i] + (1-beta2)*g[i]*g[i]
  //   p[i] -= lr * (m[i]*bias1) / (sqrt(v[i]*bias2) + eps)
  void (*adam_update)(double* p, const double* g, double* m, double* v,
                      std::size_t len, double lr, double beta1, double beta2,
                      double eps, double bias1, double bias2);
};

const Backend& scalar_backend();

#if defined(__x86_64__) || defined(_M_X64)
const Backend& avx2_backend();
bool avx2_supported();
#endif

#if defined(__aarch64__)
const Backend& neon_backend();
#endif

/// Backend in use; chosen once at first call (best supported variant,
/// overridable with the PNCF_KERNELS environment variable).
const Backend& active();

/// Force a backend by name ("scalar", "avx2", "neon"). Returns false if
/// unknown or unsupported on this host.
bool select(std::string_view name);

/// Backends usable on this host, scalar first.
std::vector<const Backend*> available();

}  // namespace pncf::kernels
