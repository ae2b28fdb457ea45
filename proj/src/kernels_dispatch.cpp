#include <cstdlib>
#include <string_view>
#include <vector>

#include "pncf/kernels.hpp"

namespace pncf::kernels {
namespace {

const Backend* by_name(std::string_view name) {
  if (name == "scalar") return &scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2" && avx2_supported()) return &avx2_backend();
#endif
#if defined(__aarch64__)
  if (name == "neon") return &neon_backend();
#endif
  return nullptr;
}

const Backend* pick_default() {
  if (const char* env = std::getenv("PNCF_KERNELS")) {
    if (const Backend* b = by_name(env)) return b;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) return &avx2_backend();
#endif
#if defined(__aarch64__)
  return &neon_backend();
#endif
  return &scalar_backend();
}

const Backend*& active_slot() {
  static const Backend* slot = pick_default();
  return slot;
}

}  // namespace

const Backend& active() { return *active_slot(); }

bool select(std::string_view name) {
  if (const Backend* b = by_name(name)) {
    active_slot() = b;
    return true;
  }
  return false;
}

std::vector<const Backend*> available() {
  std::vector<const Backend*> out{&scalar_backend()};
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) out.push_back(&avx2_backend());
#endif
#if defined(__aarch64__)
  out.push_back(&neon_backend());
#endif
  return out;
}

}  // namespace pncf::kernels
