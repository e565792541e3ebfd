#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace kaddlab {

// A continuous, periodic modulating function h with range in [0, 1].
//
// Three shapes are supported:
//   AbsSine   t -> |sin(pi * t / period)|
//   Constant  t -> value
//   Table     periodic linear interpolation through (phase, value) samples,
//             phase measured in units of the period and taken in [0, 1).
//
// Instances are immutable and always valid: the factories reject bad
// parameters and Table values are clamped into [0, 1].
class PeriodicProfile {
public:
  struct AbsSine {
    double period;
    bool operator==(const AbsSine&) const = default;
  };
  struct Constant {
    double value;
    bool operator==(const Constant&) const = default;
  };
  struct Table {
    double period;
    std::vector<std::pair<double, double>> samples;  // sorted by phase
    bool operator==(const Table&) const = default;
  };
  using Shape = std::variant<AbsSine, Constant, Table>;

  static PeriodicProfile abs_sine(double period);
  static PeriodicProfile constant(double value);
  static PeriodicProfile table(double period, std::vector<std::pair<double, double>> samples);

  double operator()(double t) const;

  // Constant profiles have no intrinsic period and report 0.
  double period() const;
  // Rebuilds the same shape with a different period (Constant is unchanged).
  PeriodicProfile with_period(double period) const;

  bool is_constant() const;
  const Shape& shape() const { return shape_; }

  bool operator==(const PeriodicProfile&) const = default;

private:
  explicit PeriodicProfile(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

// Shape selector used when the period is dictated by someone else (the
// log-periodic constructor fixes the period to |gamma|).
struct AbsSineShape {};
struct ConstantShape {
  double value;
};
struct TableShape {
  std::vector<std::pair<double, double>> samples;
};
using ProfileShape = std::variant<AbsSineShape, ConstantShape, TableShape>;

PeriodicProfile make_profile(const ProfileShape& shape, double period);

}  // namespace kaddlab
