#include <doctest.h>

#include <cmath>

#include "kaddlab/equations.hpp"
#include "kaddlab/error.hpp"
#include "oracles.hpp"

using namespace kaddlab;

namespace {

FunctionSpec half() { return make_log_periodic(1, 1, AbsSineShape{}).spec; }

}  // namespace

TEST_CASE("residual_kadd examples") {
  const auto s = FunctionSpec::two_slope(0.25, 0.75);
  CHECK(residual_kadd(s, 4.0) == 0.0);
  CHECK(oracle::two_slope(0.25, 0.75)(3.0) == 2.25);
  CHECK(residual_kadd(FunctionSpec::two_slope(0.5, 2.0), -1.0) == 1.5);

  const auto g = half();
  const auto og = oracle::abs_sine_log_periodic(0.5);
  CHECK(std::fabs(residual_kadd(g, 3.0)) <= 1e-12);
  CHECK(std::fabs(oracle::kadd(og, 3.0)) <= 1e-12);
  CHECK(og(og(-3.0) + 3.0) == doctest::Approx(1.4468827).epsilon(1e-7));
}

TEST_CASE("residual_add examples") {
  CHECK(residual_add(FunctionSpec::pure_linear(-2.0), 1.0) == 0.0);
  CHECK(oracle::two_slope(-2, -2)(oracle::two_slope(-2, -2)(1.0) + 1.0) == 2.0);
  CHECK(residual_add(FunctionSpec::two_slope(0.5, 3.0), 1.0) == 0.0);
  CHECK(oracle::two_slope(0.5, 3.0)(4.0) == 12.0);
  const double r = residual_add(FunctionSpec::two_slope(-0.5, 1.5), -2.0);
  CHECK(r != 0.0);
  CHECK(r == oracle::add(oracle::two_slope(-0.5, 1.5), -2.0));
}

TEST_CASE("bow_tie_margin examples") {
  const auto m = bow_tie_margin(FunctionSpec::two_slope(0.3, 0.7), -2.0);
  // f(-2) = -0.6, so the lower slack is -0.6 - (-2)
  CHECK(m.lower == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(m.upper == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(m.holds());
  const auto v = bow_tie_margin(FunctionSpec::two_slope(-0.5, 1.5), -2.0);
  CHECK(v.lower == 3.0);
  CHECK(v.upper == -1.0);
  CHECK_FALSE(v.holds());
  const auto z = bow_tie_margin(half(), 0.0);
  CHECK(z.lower == 0.0);
  CHECK(z.upper == 0.0);
}

TEST_CASE("homogeneity_residual examples") {
  CHECK(std::fabs(homogeneity_residual(half(), 0.5, std::sqrt(2.0))) <= 1e-12);
  auto g = oracle::rng(3);
  for (int i = 0; i < 200; ++i) {
    const double a = oracle::uniform(g, -3, 3), b = oracle::uniform(g, -3, 3);
    const double lam = oracle::uniform(g, 0.01, 10), x = oracle::uniform(g, 0, 100);
    const double r = homogeneity_residual(oracle::two_slope(a, b), lam, x);
    REQUIRE(std::fabs(r) <= 4 * std::numeric_limits<double>::epsilon() * std::fabs(b * lam * x));
  }
  CHECK(std::fabs(homogeneity_residual(half(), 0.3, 1.0)) > 1e-3);
  CHECK_THROWS_AS(homogeneity_residual(half(), 0.5, -1.0), InvalidArgument);
}

TEST_CASE("phi examples") {
  for (double t : {-5.0, 0.0, 2.5}) CHECK(phi(FunctionSpec::two_slope(-1.0, 0.7), t) == doctest::Approx(0.7));
  const auto g = half();
  const auto h = PeriodicProfile::abs_sine(std::log(2.0));
  for (double t = -20; t <= 20; t += 0.37) {
    CHECK(phi(g, t) == doctest::Approx(h(t)).epsilon(1e-12));
    CHECK(std::fabs(phi(g, t + std::log(0.5)) - phi(g, t)) <= 1e-12 * (1 + std::fabs(phi(g, t))));
  }
  CHECK_THROWS_AS(phi(g, 1000.0), RangeError);
}

TEST_CASE("verify_on_grid examples") {
  const auto grid = GridSpec::default_grid();
  const auto ok = verify_on_grid(FunctionSpec::two_slope(0.25, 0.75), Check::kadd(), grid, 1e-9);
  CHECK(ok.pass);
  CHECK(ok.point_count == grid.points().size());

  const auto bad = verify_on_grid(FunctionSpec::two_slope(0.5, 2.0), Check::kadd(), grid, 1e-9);
  CHECK_FALSE(bad.pass);
  CHECK(bad.argmax_x < 0);
  const auto pts = grid.points();
  CHECK(std::find(pts.begin(), pts.end(), bad.argmax_x) != pts.end());

  const auto band = verify_on_grid(half(), Check::bow_tie(), grid, 0.0);
  CHECK(band.pass);
  CHECK(band.max_abs_residual == 0.0);
}

TEST_CASE("report pass flag equals max <= tolerance") {
  const auto grid = GridSpec::parse("1e-3:1e2:8");
  for (const auto& s : {FunctionSpec::two_slope(0.5, 2.0), half(), FunctionSpec::two_slope(0.1, 0.2)}) {
    for (const char* c : {"kadd", "add", "bowtie", "homogeneity:0.5", "phi:0.5"}) {
      for (double tol : {0.0, 1e-12, 1e-3, 1.0}) {
        const auto r = verify_on_grid(s, Check::parse(c), grid, tol);
        CHECK(r.pass == (r.max_abs_residual <= tol));
      }
    }
  }
}

TEST_CASE("check parsing") {
  CHECK(Check::parse("kadd") == Check::kadd());
  CHECK(Check::parse("homogeneity:0.25") == Check::homogeneity(0.25));
  CHECK(Check::parse("phi:0.5").name() == "phi:0.5");
  CHECK_THROWS_AS(Check::parse("kad"), InvalidArgument);
  CHECK_THROWS_AS(verify_on_grid(half(), Check::parse("phi:-1"), GridSpec::default_grid(), 1e-9), InvalidArgument);
}

TEST_CASE("family soundness on random two-slope specs") {
  auto g = oracle::rng(101);
  const auto grid = GridSpec::default_grid();
  for (int i = 0; i < 40; ++i) {
    const double a = oracle::uniform(g, 0, 1), b = oracle::uniform(g, 0, 1);
    REQUIRE(verify_on_grid(FunctionSpec::two_slope(a, b), Check::kadd(), grid, 1e-9).pass);
    const double bb = oracle::uniform(g, -3, 4);
    REQUIRE(verify_on_grid(FunctionSpec::two_slope(1 - bb, bb), Check::kadd(), grid, 1e-9).pass);
    const double cm = oracle::uniform(g, 0, 5), cp = oracle::uniform(g, 0, 5);
    REQUIRE(verify_on_grid(FunctionSpec::two_slope(cm, cp), Check::add(), grid, 1e-9).pass);
    REQUIRE(verify_on_grid(FunctionSpec::pure_linear(-oracle::uniform(g, 0.01, 5)), Check::add(), grid, 1e-9).pass);
  }
}

TEST_CASE("batched two-slope sweeps equal the generic path") {
  auto g = oracle::rng(55);
  const auto grid = GridSpec::default_grid();
  for (int i = 0; i < 30; ++i) {
    const double a = oracle::uniform(g, -3, 3), b = oracle::uniform(g, -3, 3);
    const auto spec = i % 2 ? FunctionSpec::two_slope(a, b) : FunctionSpec::pure_linear(a);
    const auto ref = oracle::two_slope(a, i % 2 ? b : a);
    for (const auto& check : {Check::kadd(), Check::add()}) {
      const auto fast = sample_residuals(spec, check, grid);
      const auto slow = sample_residuals(ref, check, grid);
      REQUIRE(fast.size() == slow.size());
      for (std::size_t k = 0; k < fast.size(); ++k) {
        REQUIRE(fast[k].residual == slow[k].residual);
        REQUIRE(fast[k].measure == slow[k].measure);
      }
    }
  }
}

TEST_CASE("duality flips the kadd residual") {
  const auto pts = GridSpec::default_grid().points();
  const std::vector<FunctionSpec> specs = {
      FunctionSpec::two_slope(0.5, 2.0), FunctionSpec::two_slope(-0.5, 1.5), half(),
      make_log_periodic(1, 2, AbsSineShape{}).spec,
      FunctionSpec::exceptional(1.0, PositivePart::table({{1.0, 0.3}, {4.0, 3.0}})),
  };
  for (const auto& s : specs) {
    const auto d = dual(s);
    for (double x : pts) REQUIRE(std::fabs(residual_kadd(d, x) + residual_kadd(s, -x)) <= 1e-12 * (1 + std::fabs(x)));
  }
}

TEST_CASE("a-homogeneity and (1-a)-homogeneity together match kadd") {
  // For f(x) = a x on x <= 0 inside the bow-tie band, kadd at -x equals
  // -(f(a x) - a f(x)) and kadd at x >= 0 equals f((1-a) x) - (1-a) f(x).
  auto g = oracle::rng(77);
  const auto grid = GridSpec::default_grid();
  const auto pos = grid.positive_only().points();
  for (int i = 0; i < 40; ++i) {
    const double a = oracle::uniform(g, 0.05, 0.95);
    const double p = oracle::uniform(g, 0.2, 3.0);
    auto f = [a, p](double x) { return x <= 0 ? a * x : x * std::fabs(std::sin(M_PI * std::log(x) / p)); };
    for (double x : pos) {
      REQUIRE(std::fabs(residual_kadd(f, -x) + homogeneity_residual(f, a, x)) <= 1e-12 * (1 + x));
      REQUIRE(std::fabs(residual_kadd(f, x) - homogeneity_residual(f, 1 - a, x)) <= 1e-12 * (1 + x));
    }
    const double tol = 1e-9;
    const double k = verify_on_grid(f, Check::kadd(), grid, tol).max_abs_residual;
    const double h1 = verify_on_grid(f, Check::homogeneity(a), grid, tol).max_abs_residual;
    const double h2 = verify_on_grid(f, Check::homogeneity(1 - a), grid, tol).max_abs_residual;
    if (k <= tol) CHECK(std::max(h1, h2) <= 3 * tol);
    if (std::max(h1, h2) <= tol) CHECK(k <= 3 * tol);
  }
  for (const auto& s : {make_log_periodic(1, 1, AbsSineShape{}).spec, make_log_periodic(3, 2, AbsSineShape{}).spec,
                        FunctionSpec::two_slope(0.42, 0.9)}) {
    const double a = *negative_slope(s);
    CHECK(verify_on_grid(s, Check::kadd(), grid, 1e-9).pass);
    CHECK(verify_on_grid(s, Check::homogeneity(a), grid, 3e-9).pass);
    CHECK(verify_on_grid(s, Check::homogeneity(1 - a), grid, 3e-9).pass);
  }
  const auto off = [](double x) { return x <= 0 ? 0.5 * x : x * std::fabs(std::sin(M_PI * std::log(x) / 0.9)); };
  CHECK_FALSE(verify_on_grid(off, Check::kadd(), grid, 1e-9).pass);
  CHECK_FALSE(verify_on_grid(off, Check::homogeneity(0.5), grid, 3e-9).pass);
}

TEST_CASE("nonlinearity certificate") {
  const auto pos_no_zero = GridSpec::default_grid().positive_only();
  CHECK(nonlinearity_certificate(FunctionSpec::two_slope(0.3, 0.7), pos_no_zero).spread == 0.0);
  const auto c = nonlinearity_certificate(half(), pos_no_zero);
  CHECK(c.ratio_min <= 1e-3);
  CHECK(c.ratio_max >= 1 - 1e-3);
  CHECK(c.spread >= 0.99);
  const auto t = nonlinearity_certificate(
      FunctionSpec::exceptional(0.0, PositivePart::table({{1.0, 0.2}, {2.0, 1.8}})), pos_no_zero);
  CHECK(t.spread > 0.5);
  CHECK_THROWS_AS(nonlinearity_certificate(half(), GridSpec::default_grid()), InvalidArgument);
}
