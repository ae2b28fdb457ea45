#include <doctest.h>

#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "pncf/kernels.hpp"
#include "pncf/rng.hpp"

using namespace pncf;

namespace {

std::vector<double> random_vec(std::size_t n, rng::Stream& s, double scale = 2.0) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * (s.next_double() - 0.5);
  return v;
}

}  // namespace

TEST_SUITE_BEGIN("kernels");

TEST_CASE("scalar backend is always available") {
  auto backends = kernels::available();
  REQUIRE(!backends.empty());
  CHECK(std::string(backends.front()->name) == "scalar");
}

// Every SIMD variant must agree with the scalar reference exactly, not to
// a tolerance: the kernels are designed so vector lanes hold independent
// output elements and per-element accumulation order never changes.
TEST_CASE("simd backends match scalar bit for bit") {
  const auto& ref = kernels::scalar_backend();
  rng::Stream s(rng::key(0xbeef));

  for (const kernels::Backend* b : kernels::available()) {
    CAPTURE(b->name);

    // matmul_accum across shapes incl. remainders not divisible by lane width
    for (auto [rows, inner, cols] :
         {std::tuple<std::size_t, std::size_t, std::size_t>{1, 1, 1},
          {3, 4, 2},
          {7, 37, 13},
          {16, 64, 33},
          {5, 8, 4}}) {
      const auto x = random_vec(rows * inner, s);
      const auto w = random_vec(inner * cols, s);
      auto out_ref = random_vec(rows * cols, s);
      auto out_b = out_ref;
      ref.matmul_accum(out_ref.data(), x.data(), w.data(), rows, inner, cols);
      b->matmul_accum(out_b.data(), x.data(), w.data(), rows, inner, cols);
      CHECK(out_ref == out_b);
    }

    // relu incl. exact zeros and negative zero
    std::vector<double> x = random_vec(133, s);
    x[0] = 0.0;
    x[1] = -0.0;
    x[2] = -3.0;
    std::vector<double> v1(x.size()), d1(x.size()), v2(x.size()), d2(x.size());
    ref.relu(x.data(), v1.data(), d1.data(), x.size());
    b->relu(x.data(), v2.data(), d2.data(), x.size());
    CHECK(v1 == v2);
    CHECK(d1 == d2);

    // mul_inplace
    auto a1 = random_vec(97, s);
    auto a2 = a1;
    const auto mul = random_vec(97, s);
    ref.mul_inplace(a1.data(), mul.data(), a1.size());
    b->mul_inplace(a2.data(), mul.data(), a2.size());
    CHECK(a1 == a2);

    // adam_update over a few steps
    const std::size_t n = 101;
    auto p1 = random_vec(n, s);
    auto p2 = p1;
    std::vector<double> m1(n, 0.0), v1a(n, 0.0), m2(n, 0.0), v2a(n, 0.0);
    for (int step = 1; step <= 3; ++step) {
      const auto g = random_vec(n, s);
      const double bias1 = 1.0 / (1.0 - std::pow(0.9, step));
      const double bias2 = 1.0 / (1.0 - std::pow(0.999, step));
      ref.adam_update(p1.data(), g.data(), m1.data(), v1a.data(), n, 1e-3, 0.9,
                      0.999, 1e-8, bias1, bias2);
      b->adam_update(p2.data(), g.data(), m2.data(), v2a.data(), n, 1e-3, 0.9,
                     0.999, 1e-8, bias1, bias2);
    }
    CHECK(p1 == p2);
    CHECK(m1 == m2);
    CHECK(v1a == v2a);
  }
}

TEST_CASE("backend selection") {
  const std::string before = kernels::active().name;
  CHECK(kernels::select("scalar"));
  CHECK(std::string(kernels::active().name) == "scalar");
  CHECK_FALSE(kernels::select("no-such-backend"));
  CHECK(std::string(kernels::active().name) == "scalar");
  // restore whatever the host picked
  kernels::select(before);
}

TEST_SUITE_END();
