#include "kaddlab/means.hpp"

#include <cmath>

namespace kaddlab {

const char* to_string(MeanCheck c) {
  switch (c) {
    case MeanCheck::WeakAssociativity: return "weak_assoc";
    case MeanCheck::MeanProperty: return "mean";
    case MeanCheck::Translativity: return "translativity";
  }
  return "?";
}

Residual2dReport verify_operation(const TranslativeOperation& F, MeanCheck check, const GridSpec& grid,
                                  double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw InvalidArgument("tolerance must be finite and >= 0");
  const auto points = grid.points();
  if (points.empty()) throw InvalidArgument("empty grid");

  Residual2dReport r;
  r.check = check;
  r.grid = grid;
  r.tolerance = tol;
  r.max_abs_residual = -1.0;

  auto consider = [&](double measure, double raw, double x, double y, double z) {
    ++r.point_count;
    if (measure > r.max_abs_residual) {
      r.max_abs_residual = measure;
      r.max_raw_residual = std::fabs(raw);
      r.argmax_x = x;
      r.argmax_y = y;
      r.argmax_z = z;
    }
  };

  for (double x : points) {
    for (double y : points) {
      switch (check) {
        case MeanCheck::WeakAssociativity: {
          const double raw = weak_assoc_residual(F, x, y);
          consider(std::fabs(raw) / (1.0 + std::fabs(x) + std::fabs(y)), raw, x, y, 0.0);
          break;
        }
        case MeanCheck::MeanProperty: {
          const Slack s = mean_margin(F, x, y);
          consider(std::max({0.0, -s.lower, -s.upper}) / (1.0 + std::fabs(x) + std::fabs(y)),
                   std::min(s.lower, s.upper), x, y, 0.0);
          break;
        }
        case MeanCheck::Translativity:
          for (double z : points) {
            const double raw = translativity_residual(F, x, y, z);
            consider(std::fabs(raw) / (1.0 + std::fabs(x) + std::fabs(y) + std::fabs(z)), raw, x, y, z);
          }
          break;
      }
    }
  }
  r.pass = r.max_abs_residual <= tol;
  return r;
}

}  // namespace kaddlab
