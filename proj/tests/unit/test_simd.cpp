#include <doctest.h>

#include <cmath>
#include <cstring>

#include "kaddlab/simd/kernels.hpp"
#include "oracles.hpp"

using namespace kaddlab::simd;

namespace {

bool same_bits(const std::vector<double>& x, const std::vector<double>& y) {
  return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

std::vector<double> random_vec(std::mt19937_64& g, std::size_t n, double lo, double hi, bool integral) {
  std::vector<double> v(n);
  for (auto& x : v) x = integral ? std::nearbyint(oracle::uniform(g, lo, hi)) : oracle::uniform(g, lo, hi);
  return v;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  const auto b = available_backends();
  CHECK(b.front() == Backend::Scalar);
  CHECK(kernels_for(Backend::Scalar) == &scalar_kernels());
  CHECK(kernels_for(active_kernels().backend) == &active_kernels());
}

TEST_CASE("scalar kernels match direct formulas") {
  const auto& s = scalar_kernels();
  std::vector<double> n = {-2, 0, 3}, m = {4, 1, -1}, out(3);
  s.lattice_errors(std::log(0.3), std::log(0.7), 1.0, n.data(), m.data(), out.data(), 3);
  for (int i = 0; i < 3; ++i) CHECK(out[i] == std::fabs((n[i] * std::log(0.3) + m[i] * std::log(0.7)) - 1.0));
  std::vector<double> mo(3), eo(3), ns = {0.0, 1.0, 2.0};
  s.kronecker_errors(0.25, 0.0, ns.data(), mo.data(), eo.data(), 3);
  CHECK(mo == std::vector<double>{0.0, 0.0, 0.0});  // 0.5 rounds to even
  CHECK(eo == std::vector<double>{0.0, 0.25, 0.5});
  std::vector<double> x = {-1.0, 4.0}, r(2);
  s.two_slope_kadd(0.5, 2.0, x.data(), r.data(), 2);
  CHECK(r[0] == 1.5);
  s.two_slope_kadd(0.25, 0.75, x.data(), r.data(), 2);
  CHECK(r[1] == 0.0);
  s.two_slope_add(0.5, 3.0, x.data(), r.data(), 2);
  CHECK(r[0] == oracle::add(oracle::two_slope(0.5, 3.0), -1.0));
}

TEST_CASE("every backend is bit-identical to the scalar reference") {
  const auto& ref = scalar_kernels();
  auto g = oracle::rng(2024);
  for (Backend b : available_backends()) {
    CAPTURE(to_string(b));
    const KernelTable* k = kernels_for(b);
    REQUIRE(k != nullptr);
    for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 33u, 1000u, 1027u}) {
      const double la = std::log(oracle::uniform(g, 0.01, 0.99));
      const double lb = std::log(oracle::uniform(g, 0.01, 0.99));
      const double u = oracle::uniform(g, -10, 10);
      const auto n = random_vec(g, len, -1e6, 1e6, true);
      const auto m = random_vec(g, len, -1e6, 1e6, true);
      std::vector<double> o1(len), o2(len), m1(len), m2(len);
      ref.lattice_errors(la, lb, u, n.data(), m.data(), o1.data(), len);
      k->lattice_errors(la, lb, u, n.data(), m.data(), o2.data(), len);
      REQUIRE(same_bits(o1, o2));

      const double x0 = oracle::uniform(g, -10, 10), y0 = oracle::uniform(g, -10, 10);
      ref.kronecker_errors(x0, y0, n.data(), m1.data(), o1.data(), len);
      k->kronecker_errors(x0, y0, n.data(), m2.data(), o2.data(), len);
      REQUIRE(same_bits(m1, m2));
      REQUIRE(same_bits(o1, o2));

      auto xs = random_vec(g, len, -1e3, 1e3, false);
      if (len > 2) xs[1] = 0.0;
      const double a = oracle::uniform(g, -3, 3), c = oracle::uniform(g, -3, 3);
      ref.two_slope_kadd(a, c, xs.data(), o1.data(), len);
      k->two_slope_kadd(a, c, xs.data(), o2.data(), len);
      REQUIRE(same_bits(o1, o2));
      ref.two_slope_add(a, c, xs.data(), o1.data(), len);
      k->two_slope_add(a, c, xs.data(), o2.data(), len);
      REQUIRE(same_bits(o1, o2));
    }
  }
}

TEST_CASE("kronecker kernel rounds exact halves to even on every backend") {
  std::vector<double> n = {1, 3, 5, 7, 9}, m(5), e(5);
  for (Backend b : available_backends()) {
    kernels_for(b)->kronecker_errors(0.5, 0.0, n.data(), m.data(), e.data(), 5);
    CHECK(m == std::vector<double>{0, 2, 2, 4, 4});
  }
}
