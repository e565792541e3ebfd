#include "kaddlab/funcspec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "kaddlab/diophantine.hpp"
#include "kaddlab/error.hpp"
#include "kaddlab/grid.hpp"

namespace kaddlab {
namespace {

constexpr double kLogTolerance = 1e-12;
// a + b = 1 is accepted up to this absolute slack; the residual of a pair this
// close is far below any grid tolerance.
constexpr double kSumTolerance = 1e-12;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

double positive_part_value(const PositivePart::Shape& shape, double x) {
  struct Visitor {
    double x;
    double operator()(const PositivePart::Linear& l) const { return l.b * x; }
    double operator()(const PositivePart::ScaledProfile& s) const { return x * s.profile(std::log(x)); }
    double operator()(const PositivePart::Table& t) const {
      const auto& s = t.samples;
      double y;
      if (x <= s.front().first) {
        y = s.front().second / s.front().first * x;
      } else if (x >= s.back().first) {
        y = s.back().second / s.back().first * x;
      } else {
        auto hi = std::upper_bound(s.begin(), s.end(), x,
                                   [](double v, const auto& p) { return v < p.first; });
        auto lo = std::prev(hi);
        const double w = (x - lo->first) / (hi->first - lo->first);
        y = lo->second + w * (hi->second - lo->second);
      }
      return std::clamp(y, 0.0, x);
    }
  };
  return std::visit(Visitor{x}, shape);
}

double eval_variant(const FunctionSpec::Variant& v, double x) {
  struct Visitor {
    double x;
    double operator()(const FunctionSpec::TwoSlope& s) const { return x > 0.0 ? s.b * x : s.a * x; }
    double operator()(const FunctionSpec::PureLinear& s) const { return s.c * x; }
    double operator()(const FunctionSpec::LogPeriodic& s) const {
      if (x > 0.0) return x * s.h(std::log(x));
      return s.a * x;
    }
    double operator()(const FunctionSpec::Exceptional& s) const {
      if (x > 0.0) return s.positive_part(x);
      return s.a * x;
    }
    double operator()(const FunctionSpec::Dual& s) const { return -s.inner->eval_unchecked(-x); }
  };
  // 0 is returned exactly, never -0 or ln(0)
  if (x == 0.0) return 0.0;
  return std::visit(Visitor{x}, v);
}

std::vector<double> factor_pair(double a) {
  if (a == 1.0 - a) return {a};
  return {a, 1.0 - a};
}

SolutionClaim two_slope_claim(double a, double b) {
  SolutionClaim c;
  const bool unit = in_unit_interval(a) && in_unit_interval(b);
  const bool complementary = std::fabs(a + b - 1.0) <= kSumTolerance;
  const bool linear = a == b;
  c.solves_kadd = unit || complementary || linear ? Tri::Yes : Tri::No;
  c.solves_add = (a >= 0.0 && b >= 0.0) || (a == b && a < 0.0) ? Tri::Yes : Tri::No;
  c.satisfies_bowtie = unit ? Tri::Yes : Tri::No;
  if (a > 0.0 && a < 1.0) c.homogeneity_factors = factor_pair(a);
  if (unit) {
    c.justification = "two-slope family with a, b in [0, 1]";
  } else if (complementary) {
    c.justification = "two-slope family with a + b = 1";
  } else if (linear) {
    c.justification = "linear map, which solves kadd for every slope";
  } else {
    c.justification = "two-slope outside both kadd families";
  }
  if (c.solves_add == Tri::Yes) c.justification += "; continuous add solution (non-negative slopes or one negative slope)";
  return c;
}

}  // namespace

PositivePart PositivePart::linear(double b) {
  require_finite(b, "positive part slope b");
  return PositivePart(Linear{b});
}

PositivePart PositivePart::scaled_profile(PeriodicProfile profile) {
  return PositivePart(ScaledProfile{std::move(profile)});
}

PositivePart PositivePart::table(std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) throw InvalidArgument("positive part table needs at least one sample");
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto& [x, y] = samples[i];
    if (!std::isfinite(x) || !(x > 0.0)) throw InvalidArgument("positive part table x must be finite and > 0");
    if (!std::isfinite(y)) throw InvalidArgument("positive part table y must be finite");
    if (i > 0 && samples[i - 1].first == x) throw InvalidArgument("positive part table has duplicate x " + num(x));
    y = std::clamp(y, 0.0, x);
  }
  return PositivePart(Table{std::move(samples)});
}

double PositivePart::operator()(double x) const { return positive_part_value(shape_, x); }

const char* to_string(SpecKind kind) {
  switch (kind) {
    case SpecKind::TwoSlope: return "two_slope";
    case SpecKind::PureLinear: return "pure_linear";
    case SpecKind::LogPeriodic: return "log_periodic";
    case SpecKind::Exceptional: return "exceptional";
    case SpecKind::Dual: return "dual";
  }
  return "?";
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::No: return "no";
    case Tri::Yes: return "yes";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

FunctionSpec FunctionSpec::two_slope(double a, double b) {
  require_finite(a, "slope a");
  require_finite(b, "slope b");
  return FunctionSpec(TwoSlope{a, b});
}

FunctionSpec FunctionSpec::pure_linear(double c) {
  require_finite(c, "slope c");
  return FunctionSpec(PureLinear{c});
}

FunctionSpec FunctionSpec::log_periodic(double a, std::int64_t n, std::int64_t m, double gamma,
                                        PeriodicProfile h) {
  if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("log-periodic slope a must lie in (0, 1), got " + num(a));
  if (n == 0 || m == 0) throw InvalidArgument("log-periodic n and m must be nonzero");
  if (!std::isfinite(gamma) || gamma == 0.0) throw InvalidArgument("log-periodic gamma must be finite and nonzero");
  const double ln_a = std::log(a);
  const double ln_b = std::log1p(-a);
  const double na = static_cast<double>(n) * gamma;
  const double mb = static_cast<double>(m) * gamma;
  if (std::fabs(ln_a - na) > kLogTolerance * std::fabs(ln_a)) {
    throw InvalidArgument("log-periodic spec violates ln a = n gamma: ln a = " + num(ln_a) + ", n gamma = " + num(na));
  }
  if (std::fabs(ln_b - mb) > kLogTolerance * std::fabs(ln_b)) {
    throw InvalidArgument("log-periodic spec violates ln(1-a) = m gamma: ln(1-a) = " + num(ln_b) +
                          ", m gamma = " + num(mb));
  }
  if (!h.is_constant() || h.period() != 0.0) {
    const double period = std::fabs(gamma);
    if (std::fabs(h.period() - period) > kLogTolerance * period) {
      throw InvalidArgument("log-periodic profile period " + num(h.period()) + " differs from |gamma| = " + num(period));
    }
  }
  return FunctionSpec(LogPeriodic{a, n, m, gamma, std::move(h)});
}

FunctionSpec FunctionSpec::exceptional(double a, PositivePart positive_part) {
  if (a != 0.0 && a != 1.0) throw InvalidArgument("exceptional slope a must be exactly 0 or 1, got " + num(a));
  // The band 0 <= g(x) <= x is checked on the positive half of the default grid.
  for (double x : GridSpec::default_grid().positive_only().points()) {
    const double g = positive_part(x);
    if (!(g >= 0.0 && g <= x)) {
      throw InvalidArgument("exceptional positive part leaves the bow-tie band at x = " + num(x) + " (g = " + num(g) + ")");
    }
  }
  return FunctionSpec(Exceptional{a, std::move(positive_part)});
}

FunctionSpec FunctionSpec::dual_of(FunctionSpec inner) {
  return FunctionSpec(Dual{std::make_shared<const FunctionSpec>(std::move(inner))});
}

double FunctionSpec::operator()(double x) const {
  if (!std::isfinite(x)) throw InvalidArgument("cannot evaluate f at non-finite x");
  return eval_variant(v_, x);
}

double FunctionSpec::eval_unchecked(double x) const { return eval_variant(v_, x); }

SpecKind FunctionSpec::kind() const { return static_cast<SpecKind>(v_.index()); }

double eval(const FunctionSpec& spec, double x) { return spec(x); }

SolutionClaim claim_for(const FunctionSpec& spec) {
  struct Visitor {
    SolutionClaim operator()(const FunctionSpec::TwoSlope& s) const { return two_slope_claim(s.a, s.b); }
    SolutionClaim operator()(const FunctionSpec::PureLinear& s) const {
      auto c = two_slope_claim(s.c, s.c);
      const std::string prefix = "two-slope ";
      if (c.justification.rfind(prefix, 0) == 0) c.justification = "pure linear " + c.justification.substr(prefix.size());
      return c;
    }
    SolutionClaim operator()(const FunctionSpec::LogPeriodic& s) const {
      SolutionClaim c;
      c.solves_kadd = Tri::Yes;
      c.satisfies_bowtie = Tri::Yes;
      c.homogeneity_factors = factor_pair(s.a);
      if (s.h.is_constant()) {
        c.solves_add = Tri::Yes;
      } else if (std::holds_alternative<PeriodicProfile::AbsSine>(s.h.shape())) {
        c.solves_add = Tri::No;  // nonlinear, hence outside the continuous add solutions
      } else {
        c.solves_add = Tri::Unknown;
      }
      c.justification =
          "linear with slope a on x <= 0, a- and (1-a)-homogeneous bow-tie part on x > 0 "
          "(rational log-ratio ln a / ln(1-a) = n/m)";
      return c;
    }
    SolutionClaim operator()(const FunctionSpec::Exceptional& s) const {
      SolutionClaim c;
      c.solves_kadd = Tri::Yes;
      c.satisfies_bowtie = Tri::Yes;
      c.solves_add = Tri::Unknown;
      const auto& shape = s.positive_part.shape();
      if (std::holds_alternative<PositivePart::Linear>(shape)) c.solves_add = Tri::Yes;
      if (const auto* sp = std::get_if<PositivePart::ScaledProfile>(&shape)) {
        if (sp->profile.is_constant()) c.solves_add = Tri::Yes;
      }
      c.justification = "exceptional slope a in {0, 1} with an arbitrary bow-tie positive part";
      return c;
    }
    SolutionClaim operator()(const FunctionSpec::Dual& s) const {
      auto c = claim_for(*s.inner);
      // -f(-x) is linear on x >= 0 with the inner negative slope.
      if (auto slope = negative_slope(*s.inner); slope && *slope > 0.0 && *slope < 1.0) {
        c.homogeneity_factors = factor_pair(*slope);
      } else {
        c.homogeneity_factors.clear();
      }
      c.justification = "dual x -> -f(-x) of: " + c.justification;
      return c;
    }
  };
  return std::visit(Visitor{}, spec.variant());
}

ConstructedSpec make_two_slope(double a, double b) {
  auto spec = FunctionSpec::two_slope(a, b);
  return {spec, claim_for(spec)};
}

ConstructedSpec make_pure_linear(double c) {
  auto spec = FunctionSpec::pure_linear(c);
  return {spec, claim_for(spec)};
}

ConstructedSpec make_log_periodic(std::int64_t n, std::int64_t m, const ProfileShape& h_shape) {
  const double a = slope_from_integers(n, m);
  if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("no slope a in (0, 1) for n/m");
  const double gamma = std::log(a) / static_cast<double>(n);
  auto spec = FunctionSpec::log_periodic(a, n, m, gamma, make_profile(h_shape, std::fabs(gamma)));
  return {spec, claim_for(spec)};
}

ConstructedSpec make_exceptional(double a, PositivePart positive_part) {
  auto spec = FunctionSpec::exceptional(a, std::move(positive_part));
  return {spec, claim_for(spec)};
}

FunctionSpec dual(const FunctionSpec& spec) {
  const auto& v = spec.variant();
  if (const auto* s = std::get_if<FunctionSpec::TwoSlope>(&v)) return FunctionSpec::two_slope(s->b, s->a);
  if (std::holds_alternative<FunctionSpec::PureLinear>(v)) return spec;
  if (const auto* d = std::get_if<FunctionSpec::Dual>(&v)) return *d->inner;
  return FunctionSpec::dual_of(spec);
}

std::optional<double> negative_slope(const FunctionSpec& spec) {
  struct Visitor {
    std::optional<double> operator()(const FunctionSpec::TwoSlope& s) const { return s.a; }
    std::optional<double> operator()(const FunctionSpec::PureLinear& s) const { return s.c; }
    std::optional<double> operator()(const FunctionSpec::LogPeriodic& s) const { return s.a; }
    std::optional<double> operator()(const FunctionSpec::Exceptional& s) const { return s.a; }
    std::optional<double> operator()(const FunctionSpec::Dual& s) const {
      const auto& inner = s.inner->variant();
      if (const auto* e = std::get_if<FunctionSpec::Exceptional>(&inner)) {
        if (const auto* l = std::get_if<PositivePart::Linear>(&e->positive_part.shape())) return l->b;
      }
      if (const auto* lp = std::get_if<FunctionSpec::LogPeriodic>(&inner); lp && lp->h.is_constant()) {
        return lp->h(0.0);
      }
      if (const auto* t = std::get_if<FunctionSpec::TwoSlope>(&inner)) return t->b;
      if (const auto* p = std::get_if<FunctionSpec::PureLinear>(&inner)) return p->c;
      if (std::holds_alternative<FunctionSpec::Dual>(inner)) return negative_slope(*std::get<FunctionSpec::Dual>(inner).inner);
      return std::nullopt;
    }
  };
  return std::visit(Visitor{}, spec.variant());
}

}  // namespace kaddlab
