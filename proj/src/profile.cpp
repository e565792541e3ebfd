#include "kaddlab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kaddlab/error.hpp"

namespace kaddlab {
namespace {

void require_period(double period) {
  if (!std::isfinite(period) || !(period > 0.0)) {
    throw InvalidArgument("profile period must be finite and > 0, got " + std::to_string(period));
  }
}

double table_value(const PeriodicProfile::Table& table, double t) {
  const auto& s = table.samples;
  if (s.size() == 1) return s.front().second;

  const double u = t / table.period;
  double phase = u - std::floor(u);
  if (phase >= 1.0) phase = 0.0;

  auto hi = std::upper_bound(s.begin(), s.end(), phase,
                             [](double p, const auto& sample) { return p < sample.first; });
  double p0, v0, p1, v1;
  if (hi == s.begin()) {
    // wrap: segment from the last sample (shifted back one period) to the first
    p0 = s.back().first - 1.0;
    v0 = s.back().second;
    p1 = s.front().first;
    v1 = s.front().second;
  } else if (hi == s.end()) {
    p0 = s.back().first;
    v0 = s.back().second;
    p1 = s.front().first + 1.0;
    v1 = s.front().second;
  } else {
    p0 = std::prev(hi)->first;
    v0 = std::prev(hi)->second;
    p1 = hi->first;
    v1 = hi->second;
  }
  const double w = (phase - p0) / (p1 - p0);
  return std::clamp(v0 + w * (v1 - v0), 0.0, 1.0);
}

}  // namespace

PeriodicProfile PeriodicProfile::abs_sine(double period) {
  require_period(period);
  return PeriodicProfile(AbsSine{period});
}

PeriodicProfile PeriodicProfile::constant(double value) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw InvalidArgument("constant profile value must lie in [0, 1], got " + std::to_string(value));
  }
  return PeriodicProfile(Constant{value});
}

PeriodicProfile PeriodicProfile::table(double period, std::vector<std::pair<double, double>> samples) {
  require_period(period);
  if (samples.empty()) throw InvalidArgument("table profile needs at least one sample");
  for (auto& [phase, value] : samples) {
    if (!std::isfinite(phase) || phase < 0.0 || phase >= 1.0) {
      throw InvalidArgument("table profile phase must lie in [0, 1), got " + std::to_string(phase));
    }
    if (!std::isfinite(value)) throw InvalidArgument("table profile value must be finite");
    value = std::clamp(value, 0.0, 1.0);
  }
  std::sort(samples.begin(), samples.end());
  auto dup = std::adjacent_find(samples.begin(), samples.end(),
                                [](const auto& l, const auto& r) { return l.first == r.first; });
  if (dup != samples.end()) {
    throw InvalidArgument("table profile has duplicate phase " + std::to_string(dup->first));
  }
  return PeriodicProfile(Table{period, std::move(samples)});
}

double PeriodicProfile::operator()(double t) const {
  struct Visitor {
    double t;
    double operator()(const AbsSine& s) const {
      return std::fabs(std::sin(std::numbers::pi * t / s.period));
    }
    double operator()(const Constant& c) const { return c.value; }
    double operator()(const Table& tab) const { return table_value(tab, t); }
  };
  return std::visit(Visitor{t}, shape_);
}

double PeriodicProfile::period() const {
  if (const auto* s = std::get_if<AbsSine>(&shape_)) return s->period;
  if (const auto* tab = std::get_if<Table>(&shape_)) return tab->period;
  return 0.0;
}

PeriodicProfile PeriodicProfile::with_period(double period) const {
  if (std::holds_alternative<AbsSine>(shape_)) return abs_sine(period);
  if (const auto* tab = std::get_if<Table>(&shape_)) return table(period, tab->samples);
  return *this;
}

bool PeriodicProfile::is_constant() const {
  if (std::holds_alternative<Constant>(shape_)) return true;
  if (const auto* tab = std::get_if<Table>(&shape_)) {
    const double v = tab->samples.front().second;
    return std::all_of(tab->samples.begin(), tab->samples.end(),
                       [v](const auto& s) { return s.second == v; });
  }
  return false;
}

PeriodicProfile make_profile(const ProfileShape& shape, double period) {
  struct Visitor {
    double period;
    PeriodicProfile operator()(const AbsSineShape&) const { return PeriodicProfile::abs_sine(period); }
    PeriodicProfile operator()(const ConstantShape& c) const { return PeriodicProfile::constant(c.value); }
    PeriodicProfile operator()(const TableShape& t) const { return PeriodicProfile::table(period, t.samples); }
  };
  return std::visit(Visitor{period}, shape);
}

}  // namespace kaddlab
