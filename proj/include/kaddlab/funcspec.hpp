#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kaddlab/profile.hpp"

namespace kaddlab {

// The part g of an exceptional solution on x > 0. Always satisfies
// 0 <= g(x) <= x once constructed.
class PositivePart {
public:
  struct Linear {
    double b;
    bool operator==(const Linear&) const = default;
  };
  // x -> x * profile(ln x)
  struct ScaledProfile {
    PeriodicProfile profile;
    bool operator==(const ScaledProfile&) const = default;
  };
  // Piecewise-linear through (x, y) samples on (0, x_max]. Outside the sample
  // range the ratio y/x of the nearest endpoint is extended.
  struct Table {
    std::vector<std::pair<double, double>> samples;
    bool operator==(const Table&) const = default;
  };
  using Shape = std::variant<Linear, ScaledProfile, Table>;

  static PositivePart linear(double b);
  static PositivePart scaled_profile(PeriodicProfile profile);
  // y values are clamped into [0, x] at construction.
  static PositivePart table(std::vector<std::pair<double, double>> samples);

  // Defined for x > 0.
  double operator()(double x) const;

  const Shape& shape() const { return shape_; }
  bool operator==(const PositivePart&) const = default;

private:
  explicit PositivePart(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

enum class SpecKind { TwoSlope, PureLinear, LogPeriodic, Exceptional, Dual };

const char* to_string(SpecKind kind);

// Closed-form description of a candidate solution f: R -> R.
//
// Every variant is immutable, evaluates exactly to 0 at x = 0, and is
// validated by its factory; an existing FunctionSpec is always valid.
class FunctionSpec {
public:
  struct TwoSlope {
    double a;  // slope on x <= 0
    double b;  // slope on x > 0
    bool operator==(const TwoSlope&) const = default;
  };
  struct PureLinear {
    double c;
    bool operator==(const PureLinear&) const = default;
  };
  // f(x) = a x for x <= 0 and x h(ln x) for x > 0, where ln a = n gamma,
  // ln(1 - a) = m gamma and h has period |gamma|.
  struct LogPeriodic {
    double a;
    std::int64_t n;
    std::int64_t m;
    double gamma;
    PeriodicProfile h;
    bool operator==(const LogPeriodic&) const = default;
  };
  struct Exceptional {
    double a;  // exactly 0 or 1
    PositivePart positive_part;
    bool operator==(const Exceptional&) const = default;
  };
  // x -> -inner(-x)
  struct Dual {
    std::shared_ptr<const FunctionSpec> inner;
    bool operator==(const Dual& other) const { return *inner == *other.inner; }
  };
  using Variant = std::variant<TwoSlope, PureLinear, LogPeriodic, Exceptional, Dual>;

  static FunctionSpec two_slope(double a, double b);
  static FunctionSpec pure_linear(double c);
  static FunctionSpec log_periodic(double a, std::int64_t n, std::int64_t m, double gamma, PeriodicProfile h);
  static FunctionSpec exceptional(double a, PositivePart positive_part);
  // Wraps without simplification; see kaddlab::dual for the simplifying form.
  static FunctionSpec dual_of(FunctionSpec inner);

  // Throws InvalidArgument for non-finite x.
  double operator()(double x) const;
  // Unchecked evaluation for hot loops over validated grids.
  double eval_unchecked(double x) const;

  SpecKind kind() const;
  const Variant& variant() const { return v_; }

  bool operator==(const FunctionSpec&) const = default;

private:
  explicit FunctionSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

enum class Tri { No, Yes, Unknown };

const char* to_string(Tri t);

// What the construction route asserts about a spec, with the family result
// that backs it. Confirmed numerically by the equations module.
struct SolutionClaim {
  Tri solves_kadd = Tri::Unknown;
  Tri solves_add = Tri::Unknown;
  Tri satisfies_bowtie = Tri::Unknown;
  std::vector<double> homogeneity_factors;  // lambda > 0, lambda != 1
  std::string justification;

  bool operator==(const SolutionClaim&) const = default;
};

struct ConstructedSpec {
  FunctionSpec spec;
  SolutionClaim claim;
};

double eval(const FunctionSpec& spec, double x);

// Claim derivation shared by every constructor.
SolutionClaim claim_for(const FunctionSpec& spec);

ConstructedSpec make_two_slope(double a, double b);
ConstructedSpec make_pure_linear(double c);
// a is the unique root in (0, 1) of m ln a = n ln(1 - a); gamma = ln a / n.
ConstructedSpec make_log_periodic(std::int64_t n, std::int64_t m, const ProfileShape& h_shape);
ConstructedSpec make_exceptional(double a, PositivePart positive_part);

// x -> -f(-x). TwoSlope{a, b} becomes TwoSlope{b, a}, PureLinear is
// self-dual and a double dual unwraps.
FunctionSpec dual(const FunctionSpec& spec);

// Slope on the non-positive half-line, when f is linear there (true for all
// variants except a Dual whose inner part is not linear on x >= 0).
std::optional<double> negative_slope(const FunctionSpec& spec);

}  // namespace kaddlab
