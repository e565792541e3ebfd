#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kaddlab {

enum class GridSigns { Negative, Positive, Both };

// Deterministic sampling plan of the real line: signed log-spaced magnitudes
// from min_magnitude to max_magnitude (both included) plus, optionally, zero.
struct GridSpec {
  double min_magnitude = 1e-6;
  double max_magnitude = 1e3;
  int points_per_decade = 48;
  bool include_zero = true;
  GridSigns signs = GridSigns::Both;

  // 1e-6 .. 1e3, 48 per decade, both signs, zero included.
  static GridSpec default_grid();
  // Default grid thinned to 12 points per decade, used for 2-D/3-D products.
  static GridSpec product_grid();

  // Parses "min:max:ppd"; remaining fields keep their defaults.
  static GridSpec parse(std::string_view text);

  GridSpec positive_only() const;
  GridSpec with_signs(GridSigns s) const;

  // Throws InvalidArgument on inconsistent fields.
  void validate() const;

  // Sorted ascending, finite, zero at most once.
  std::vector<double> points() const;
  std::vector<double> magnitudes() const;

  std::string summary() const;

  bool operator==(const GridSpec&) const = default;
};

const char* to_string(GridSigns s);

}  // namespace kaddlab
