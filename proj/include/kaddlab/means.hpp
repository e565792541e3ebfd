#pragma once

#include <utility>
#include <vector>

#include "kaddlab/equations.hpp"
#include "kaddlab/funcspec.hpp"
#include "kaddlab/grid.hpp"

namespace kaddlab {

// Translative binary operation F(x, y) = f(x - y) + y, determined by its
// trace f(x) = F(x, 0).
class TranslativeOperation {
public:
  explicit TranslativeOperation(FunctionSpec trace) : trace_(std::move(trace)) {}

  double operator()(double x, double y) const { return trace_(x - y) + y; }
  const FunctionSpec& trace() const { return trace_; }

private:
  FunctionSpec trace_;
};

inline double eval_op(const TranslativeOperation& F, double x, double y) { return F(x, y); }

// F(x + z, y + z) - F(x, y) - z
inline double translativity_residual(const TranslativeOperation& F, double x, double y, double z) {
  return F(x + z, y + z) - F(x, y) - z;
}

// F(F(x, y), x) - F(x, F(y, x)); equals residual_kadd(trace, y - x).
inline double weak_assoc_residual(const TranslativeOperation& F, double x, double y) {
  return F(F(x, y), x) - F(x, F(y, x));
}

// (F(x, y) - min(x, y), max(x, y) - F(x, y))
inline Slack mean_margin(const TranslativeOperation& F, double x, double y) {
  const double v = F(x, y);
  return {v - std::min(x, y), std::max(x, y) - v};
}

enum class MeanCheck { WeakAssociativity, MeanProperty, Translativity };
const char* to_string(MeanCheck c);

// Report over a Cartesian product grid. For translativity the third
// coordinate z runs over the same 1-D grid.
//   weak associativity: |r| / (1 + |x| + |y|)
//   mean property:      max(0, -lower, -upper) / (1 + |x| + |y|)
//   translativity:      |r| / (1 + |x| + |y| + |z|)
struct Residual2dReport {
  MeanCheck check;
  GridSpec grid;
  double max_abs_residual = 0.0;
  double max_raw_residual = 0.0;
  double argmax_x = 0.0;
  double argmax_y = 0.0;
  double argmax_z = 0.0;  // translativity only
  std::size_t point_count = 0;
  double tolerance = 0.0;
  bool pass = false;
};

// Ties go to the lexicographically smallest (x, y[, z]).
Residual2dReport verify_operation(const TranslativeOperation& F, MeanCheck check, const GridSpec& grid,
                                  double tol);

}  // namespace kaddlab
