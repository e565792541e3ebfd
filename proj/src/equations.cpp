#include "kaddlab/equations.hpp"

#include <charconv>
#include <cstdio>

#include "kaddlab/simd/kernels.hpp"

namespace kaddlab {
namespace {

double parse_lambda(const std::string& text) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidArgument("cannot parse lambda '" + text + "'");
  }
  return v;
}

// Slopes (a, b) when f is piecewise linear with the kernel's branch rule.
std::optional<std::pair<double, double>> piecewise_slopes(const FunctionSpec& f) {
  if (const auto* t = std::get_if<FunctionSpec::TwoSlope>(&f.variant())) return std::pair{t->a, t->b};
  if (const auto* p = std::get_if<FunctionSpec::PureLinear>(&f.variant())) return std::pair{p->c, p->c};
  return std::nullopt;
}

}  // namespace

Check Check::parse(const std::string& text) {
  if (text == "kadd") return kadd();
  if (text == "add") return add();
  if (text == "bowtie" || text == "bow-tie") return bow_tie();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto head = text.substr(0, colon);
    const double lambda = parse_lambda(text.substr(colon + 1));
    if (head == "homogeneity") return homogeneity(lambda);
    if (head == "phi") return phi_periodicity(lambda);
  }
  throw InvalidArgument("unknown equation kind '" + text +
                        "' (expected kadd, add, bowtie, homogeneity:<lambda>, phi:<lambda>)");
}

std::string Check::name() const {
  char buf[64];
  switch (kind) {
    case EquationKind::Kadd: return "kadd";
    case EquationKind::Add: return "add";
    case EquationKind::BowTie: return "bowtie";
    case EquationKind::Homogeneity:
      std::snprintf(buf, sizeof buf, "homogeneity:%.17g", lambda);
      return buf;
    case EquationKind::PhiPeriodicity:
      std::snprintf(buf, sizeof buf, "phi:%.17g", lambda);
      return buf;
  }
  return "?";
}

const char* scaling_name(EquationKind kind) {
  switch (kind) {
    case EquationKind::Kadd:
    case EquationKind::Add:
    case EquationKind::Homogeneity: return "abs/(1+|x|)";
    case EquationKind::BowTie: return "band-violation";
    case EquationKind::PhiPeriodicity: return "abs/(1+|phi(t)|)";
  }
  return "?";
}

namespace detail {

void validate_check(const Check& check) {
  if (check.kind == EquationKind::Homogeneity && !std::isfinite(check.lambda)) {
    throw InvalidArgument("homogeneity factor must be finite");
  }
  if (check.kind == EquationKind::PhiPeriodicity && !(std::isfinite(check.lambda) && check.lambda > 0.0)) {
    throw InvalidArgument("phi-periodicity factor must be finite and > 0");
  }
}

std::vector<double> check_points(const Check& check, const GridSpec& grid) {
  auto points = grid.points();
  if (check.kind == EquationKind::Homogeneity) {
    std::erase_if(points, [](double x) { return x < 0.0; });
  } else if (check.kind == EquationKind::PhiPeriodicity) {
    std::erase_if(points, [](double x) { return x <= 0.0; });
  }
  if (points.empty()) throw InvalidArgument("grid has no points admissible for " + check.name());
  return points;
}

ResidualReport reduce(const Check& check, const GridSpec& grid, const std::vector<ResidualSample>& samples,
                      double tol) {
  if (samples.empty()) throw InvalidArgument("empty grid");
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw InvalidArgument("tolerance must be finite and >= 0");
  ResidualReport r;
  r.check = check;
  r.grid = grid;
  r.tolerance = tol;
  r.point_count = samples.size();
  // samples are sorted by x; strict comparison keeps the smallest x on ties
  const ResidualSample* best = &samples.front();
  for (const auto& s : samples) {
    if (s.measure > best->measure || (std::isnan(s.measure) && !std::isnan(best->measure))) best = &s;
  }
  r.max_abs_residual = best->measure;
  // bow-tie samples carry the signed slack; the raw figure is the violation
  r.max_raw_residual = check.kind == EquationKind::BowTie ? best->measure : std::fabs(best->residual);
  r.argmax_x = best->x;
  r.pass = r.max_abs_residual <= tol;
  return r;
}

}  // namespace detail

std::vector<ResidualSample> sample_residuals(const FunctionSpec& f, const Check& check, const GridSpec& grid) {
  const auto slopes = piecewise_slopes(f);
  if (!slopes || (check.kind != EquationKind::Kadd && check.kind != EquationKind::Add)) {
    return sample_residuals<FunctionSpec>(f, check, grid);
  }
  const auto points = detail::check_points(check, grid);
  std::vector<double> raw(points.size());
  const auto& k = simd::active_kernels();
  const auto [a, b] = *slopes;
  if (check.kind == EquationKind::Kadd) {
    k.two_slope_kadd(a, b, points.data(), raw.data(), points.size());
  } else {
    k.two_slope_add(a, b, points.data(), raw.data(), points.size());
  }
  std::vector<ResidualSample> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i];
    out.push_back({x, f(x), raw[i], std::fabs(raw[i]) / (1.0 + std::fabs(x))});
  }
  return out;
}

ResidualReport verify_on_grid(const FunctionSpec& f, const Check& check, const GridSpec& grid, double tol) {
  return detail::reduce(check, grid, sample_residuals(f, check, grid), tol);
}

}  // namespace kaddlab

namespace kaddlab {

namespace {

std::optional<double> positive_slope(const FunctionSpec& f) {
  struct Visitor {
    std::optional<double> operator()(const FunctionSpec::TwoSlope& s) const { return s.b; }
    std::optional<double> operator()(const FunctionSpec::PureLinear& s) const { return s.c; }
    std::optional<double> operator()(const FunctionSpec::LogPeriodic& s) const {
      if (s.h.is_constant()) return s.h(0.0);
      return std::nullopt;
    }
    std::optional<double> operator()(const FunctionSpec::Exceptional& s) const {
      if (const auto* l = std::get_if<PositivePart::Linear>(&s.positive_part.shape())) return l->b;
      return std::nullopt;
    }
    std::optional<double> operator()(const FunctionSpec::Dual& s) const { return negative_slope(*s.inner); }
  };
  return std::visit(Visitor{}, f.variant());
}

}  // namespace

NonlinearityCertificate nonlinearity_certificate(const FunctionSpec& f, const GridSpec& grid) {
  const auto slope = positive_slope(f);
  if (!slope) {
    auto ev = [&f](double x) { return f.eval_unchecked(x); };
    return nonlinearity_certificate(ev, grid);
  }
  if (grid.signs != GridSigns::Positive || grid.include_zero) {
    throw InvalidArgument("nonlinearity certificate needs a positive-only grid without zero");
  }
  const double first = grid.points().front();
  return {*slope, *slope, 0.0, first, first};
}

}  // namespace kaddlab
