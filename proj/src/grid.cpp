#include "kaddlab/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "kaddlab/error.hpp"

namespace kaddlab {
namespace {

double parse_double(std::string_view text) {
  // std::from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

GridSpec GridSpec::default_grid() { return GridSpec{}; }

GridSpec GridSpec::product_grid() {
  GridSpec g;
  g.points_per_decade = 12;
  return g;
}

GridSpec GridSpec::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw InvalidArgument("grid must be given as min:max:ppd, got '" + std::string(text) + "'");
  }
  GridSpec g;
  g.min_magnitude = parse_double(text.substr(0, first));
  g.max_magnitude = parse_double(text.substr(first + 1, second - first - 1));
  const double ppd = parse_double(text.substr(second + 1));
  if (ppd != std::floor(ppd) || ppd < 1 || ppd > 1e6) {
    throw InvalidArgument("points per decade must be a positive integer");
  }
  g.points_per_decade = static_cast<int>(ppd);
  g.validate();
  return g;
}

GridSpec GridSpec::positive_only() const { return with_signs(GridSigns::Positive); }

GridSpec GridSpec::with_signs(GridSigns s) const {
  GridSpec g = *this;
  g.signs = s;
  if (s == GridSigns::Positive) g.include_zero = false;
  return g;
}

void GridSpec::validate() const {
  if (!std::isfinite(min_magnitude) || !(min_magnitude > 0.0)) {
    throw InvalidArgument("grid min_magnitude must be finite and > 0");
  }
  if (!std::isfinite(max_magnitude) || !(max_magnitude > min_magnitude)) {
    throw InvalidArgument("grid max_magnitude must be finite and > min_magnitude");
  }
  if (points_per_decade <= 0) throw InvalidArgument("grid points_per_decade must be positive");
}

std::vector<double> GridSpec::magnitudes() const {
  validate();
  const double lo = std::log10(min_magnitude);
  const double span = std::log10(max_magnitude) - lo;
  const auto steps = static_cast<long>(std::ceil(span * points_per_decade - 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(min_magnitude);
  for (long k = 1; k < steps; ++k) {
    out.push_back(std::pow(10.0, lo + static_cast<double>(k) / points_per_decade));
  }
  out.push_back(max_magnitude);
  return out;
}

std::vector<double> GridSpec::points() const {
  const auto mags = magnitudes();
  std::vector<double> out;
  out.reserve(2 * mags.size() + 1);
  if (signs != GridSigns::Positive) {
    for (auto it = mags.rbegin(); it != mags.rend(); ++it) out.push_back(-*it);
  }
  if (include_zero) out.push_back(0.0);
  if (signs != GridSigns::Negative) out.insert(out.end(), mags.begin(), mags.end());
  return out;
}

std::string GridSpec::summary() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.17g:%.17g:%d signs=%s zero=%s", min_magnitude, max_magnitude,
                points_per_decade, to_string(signs), include_zero ? "yes" : "no");
  return buf;
}

const char* to_string(GridSigns s) {
  switch (s) {
    case GridSigns::Negative: return "negative";
    case GridSigns::Positive: return "positive";
    case GridSigns::Both: return "both";
  }
  return "?";
}

}  // namespace kaddlab
