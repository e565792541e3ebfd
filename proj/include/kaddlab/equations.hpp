#pragma once

#include <cmath>
#include <algorithm>
#include <concepts>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "kaddlab/error.hpp"
#include "kaddlab/funcspec.hpp"
#include "kaddlab/grid.hpp"

namespace kaddlab {

template <class F>
concept RealFunction = std::regular_invocable<const F&, double> &&
                       std::convertible_to<std::invoke_result_t<const F&, double>, double>;

// f(f(-x) + x) - f(-f(x)) - f(x)
template <RealFunction F>
double residual_kadd(const F& f, double x) {
  const double lhs = f(f(-x) + x);
  const double fx = f(x);
  return lhs - f(-fx) - fx;
}

// f(f(x) + x) - f(f(x)) - f(x)
template <RealFunction F>
double residual_add(const F& f, double x) {
  const double fx = f(x);
  const double lhs = f(fx + x);
  return lhs - f(fx) - fx;
}

struct Slack {
  double lower;  // f(x) - min(x, 0)
  double upper;  // max(x, 0) - f(x)
  bool holds() const { return lower >= 0.0 && upper >= 0.0; }
};

template <RealFunction F>
Slack bow_tie_margin(const F& f, double x) {
  const double fx = f(x);
  return {fx - std::min(x, 0.0), std::max(x, 0.0) - fx};
}

// f(lambda x) - lambda f(x), for x >= 0 only.
template <RealFunction F>
double homogeneity_residual(const F& f, double lambda, double x) {
  if (!(x >= 0.0)) throw InvalidArgument("homogeneity is only defined on x >= 0");
  return f(lambda * x) - lambda * f(x);
}

// e^{-t} f(e^t)
template <RealFunction F>
double phi(const F& f, double t) {
  const double et = std::exp(t);
  if (!std::isfinite(et) || et == 0.0) {
    throw RangeError("phi: e^t is not representable for t = " + std::to_string(t));
  }
  return std::exp(-t) * f(et);
}

enum class EquationKind { Kadd, Add, BowTie, Homogeneity, PhiPeriodicity };

struct Check {
  EquationKind kind = EquationKind::Kadd;
  double lambda = 0.0;  // Homogeneity and PhiPeriodicity only

  static Check kadd() { return {EquationKind::Kadd, 0.0}; }
  static Check add() { return {EquationKind::Add, 0.0}; }
  static Check bow_tie() { return {EquationKind::BowTie, 0.0}; }
  static Check homogeneity(double l) { return {EquationKind::Homogeneity, l}; }
  static Check phi_periodicity(double l) { return {EquationKind::PhiPeriodicity, l}; }

  // "kadd", "add", "bowtie", "homogeneity:<lambda>", "phi:<lambda>"
  static Check parse(const std::string& text);
  std::string name() const;

  bool operator==(const Check&) const = default;
};

// How a raw residual becomes the number compared against the tolerance.
//   kadd, add, homogeneity: |r| / (1 + |x|)
//   bow-tie:                 max(0, -lower, -upper), unscaled
//   phi-periodicity:         |phi(t + ln l) - phi(t)| / (1 + |phi(t)|), t = ln x
const char* scaling_name(EquationKind kind);

struct ResidualSample {
  double x;
  double fx;
  double residual;  // raw, signed where meaningful
  double measure;   // scaled quantity compared against the tolerance
};

struct ResidualReport {
  Check check;
  GridSpec grid;
  double max_abs_residual = 0.0;  // max measure over the grid
  double max_raw_residual = 0.0;  // |residual| at the argmax
  double argmax_x = 0.0;
  std::size_t point_count = 0;
  double tolerance = 0.0;
  bool pass = false;
};

namespace detail {

template <RealFunction F>
ResidualSample sample_one(const F& f, const Check& check, double x) {
  switch (check.kind) {
    case EquationKind::Kadd: {
      const double r = residual_kadd(f, x);
      return {x, f(x), r, std::fabs(r) / (1.0 + std::fabs(x))};
    }
    case EquationKind::Add: {
      const double r = residual_add(f, x);
      return {x, f(x), r, std::fabs(r) / (1.0 + std::fabs(x))};
    }
    case EquationKind::BowTie: {
      const Slack s = bow_tie_margin(f, x);
      const double violation = std::max({0.0, -s.lower, -s.upper});
      return {x, f(x), std::min(s.lower, s.upper), violation};
    }
    case EquationKind::Homogeneity: {
      const double r = homogeneity_residual(f, check.lambda, x);
      return {x, f(x), r, std::fabs(r) / (1.0 + std::fabs(x))};
    }
    case EquationKind::PhiPeriodicity: {
      const double t = std::log(x);
      const double here = phi(f, t);
      const double r = phi(f, t + std::log(check.lambda)) - here;
      return {x, f(x), r, std::fabs(r) / (1.0 + std::fabs(here))};
    }
  }
  return {x, 0.0, 0.0, 0.0};
}

// Grid points admissible for a check: x >= 0 for homogeneity, x > 0 for phi.
std::vector<double> check_points(const Check& check, const GridSpec& grid);
void validate_check(const Check& check);

ResidualReport reduce(const Check& check, const GridSpec& grid, const std::vector<ResidualSample>& samples,
                      double tol);

}  // namespace detail

template <RealFunction F>
std::vector<ResidualSample> sample_residuals(const F& f, const Check& check, const GridSpec& grid) {
  detail::validate_check(check);
  const auto points = detail::check_points(check, grid);
  std::vector<ResidualSample> out;
  out.reserve(points.size());
  for (double x : points) out.push_back(detail::sample_one(f, check, x));
  return out;
}

// Max and argmax are exact over the sampled set; ties go to the smallest x.
template <RealFunction F>
ResidualReport verify_on_grid(const F& f, const Check& check, const GridSpec& grid, double tol) {
  return detail::reduce(check, grid, sample_residuals(f, check, grid), tol);
}

// FunctionSpec overloads route piecewise-linear kadd/add sweeps through the
// SIMD kernels; results equal the generic path.
std::vector<ResidualSample> sample_residuals(const FunctionSpec& f, const Check& check, const GridSpec& grid);
ResidualReport verify_on_grid(const FunctionSpec& f, const Check& check, const GridSpec& grid, double tol);

struct NonlinearityCertificate {
  double ratio_min;
  double ratio_max;
  double spread;  // ratio_max - ratio_min; > 0 certifies f is not linear
  double argmin_x;
  double argmax_x;
};

// f(x)/x over a positive-only grid (no zero, no negatives).
template <RealFunction F>
NonlinearityCertificate nonlinearity_certificate(const F& f, const GridSpec& grid) {
  if (grid.signs != GridSigns::Positive || grid.include_zero) {
    throw InvalidArgument("nonlinearity certificate needs a positive-only grid without zero");
  }
  const auto points = grid.points();
  constexpr double inf = std::numeric_limits<double>::infinity();
  NonlinearityCertificate c{inf, -inf, 0.0, 0.0, 0.0};
  for (double x : points) {
    const double r = f(x) / x;
    if (r < c.ratio_min) {
      c.ratio_min = r;
      c.argmin_x = x;
    }
    if (r > c.ratio_max) {
      c.ratio_max = r;
      c.argmax_x = x;
    }
  }
  c.spread = c.ratio_max - c.ratio_min;
  return c;
}

// Variants that are linear on x > 0 report their slope exactly (spread 0)
// instead of the rounded quotients f(x)/x.
NonlinearityCertificate nonlinearity_certificate(const FunctionSpec& f, const GridSpec& grid);

}  // namespace kaddlab
