#include "kaddlab/diophantine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kaddlab/continued_fraction.hpp"
#include "kaddlab/error.hpp"
#include "kaddlab/simd/kernels.hpp"

namespace kaddlab {
namespace {

constexpr std::size_t kChunk = 1024;
constexpr int kCfMaxTerms = 64;
// |n| beyond 2^53 is not exactly representable in the double lanes.
constexpr double kMaxExactInteger = 9007199254740992.0;

void require_eps(double eps) {
  if (!std::isfinite(eps) || !(eps > 0.0)) throw InvalidArgument("eps must be finite and > 0");
}

void require_bound(std::int64_t bound) {
  if (bound < 0) throw InvalidArgument("search bound must be non-negative");
  if (static_cast<double>(bound) > kMaxExactInteger / 4) throw InvalidArgument("search bound too large");
}

// A witness is accepted only when err plus a bound on the rounding of its own
// evaluation stays below eps; otherwise huge (n, m) can look like hits that
// floating point merely cannot resolve.
constexpr double kSlackUlps = 4 * std::numeric_limits<double>::epsilon();

bool certified_kronecker(double x0, double y0, std::int64_t n0, std::int64_t m0, double err, double eps) {
  const double slack =
      kSlackUlps * (std::fabs(static_cast<double>(n0) * x0) + std::fabs(y0) + std::fabs(static_cast<double>(m0)));
  return err + slack < eps;
}

bool certified_lattice(const SlopeLogs& logs, std::int64_t n, std::int64_t m, double u, double err, double eps) {
  const double slack = kSlackUlps * (std::fabs(static_cast<double>(n) * logs.ln_a) +
                                     std::fabs(static_cast<double>(m) * logs.ln_b) + std::fabs(u));
  return err + slack < eps;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

KroneckerOutcome kronecker_brute_force(double x0, double y0, double eps, std::int64_t bound,
                                       bool require_positive_m) {
  const auto& k = simd::active_kernels();
  std::array<double, kChunk> n_buf, m_buf, e_buf;
  double best = std::numeric_limits<double>::infinity();

  // candidate sequence 0, -1, 1, -2, 2, ...
  const std::int64_t total = 2 * bound + 1;
  for (std::int64_t start = 0; start < total; start += static_cast<std::int64_t>(kChunk)) {
    const auto count = static_cast<std::size_t>(std::min<std::int64_t>(kChunk, total - start));
    for (std::size_t i = 0; i < count; ++i) {
      const std::int64_t idx = start + static_cast<std::int64_t>(i);
      const std::int64_t mag = (idx + 1) / 2;
      n_buf[i] = static_cast<double>(idx % 2 == 1 ? -mag : mag);
    }
    k.kronecker_errors(x0, y0, n_buf.data(), m_buf.data(), e_buf.data(), count);
    for (std::size_t i = 0; i < count; ++i) {
      auto n0 = static_cast<std::int64_t>(n_buf[i]);
      auto m0 = static_cast<std::int64_t>(m_buf[i]);
      double err = e_buf[i];
      if (require_positive_m && m0 <= 0) {
        // for eps > 1/2 the integer 1 may still be within reach
        m0 = 1;
        err = kronecker_error(x0, y0, n0, m0);
      }
      best = std::min(best, err);
      if (err < eps) {
        const double check = kronecker_error(x0, y0, n0, m0);
        if (certified_kronecker(x0, y0, n0, m0, check, eps)) {
          return KroneckerWitness{n0, m0, x0, y0, check, eps, WitnessMethod::BruteForce};
        }
      }
    }
  }
  return NotFound{"no |n0| <= " + std::to_string(bound) + " reaches eps " + fmt(eps), best, bound};
}

KroneckerOutcome kronecker_cf(double x0, double y0, double eps, std::int64_t bound,
                              bool require_positive_m) {
  const double floor_y = std::floor(y0);
  const double r = y0 - floor_y;  // in [0, 1)
  double best = std::numeric_limits<double>::infinity();
  const auto cf = continued_fraction(x0, kCfMaxTerms, std::max<std::int64_t>(bound, 1));

  for (const auto& [p, q] : cf.convergents) {
    const double delta = std::fma(static_cast<double>(q), x0, -static_cast<double>(p));
    if (delta == 0.0 || !(std::fabs(delta) < eps)) continue;

    // k delta ~ r, so n0 x0 - m0 - y0 = k delta - r.
    const double k_center = std::nearbyint(r / delta);
    double k = k_center;
    if (require_positive_m) {
      // m0 = k p - floor(y0) > 0
      auto m_of = [&](double kk) { return kk * static_cast<double>(p) - floor_y; };
      if (m_of(k) <= 0.0) {
        if (p == 0) continue;
        const double threshold = floor_y / static_cast<double>(p);
        k = p > 0 ? std::floor(threshold) + 1.0 : std::ceil(threshold) - 1.0;
      }
    }
    if (std::fabs(k) * static_cast<double>(q) > kMaxExactInteger / 4 ||
        std::fabs(k * static_cast<double>(p)) + std::fabs(floor_y) > kMaxExactInteger / 4) {
      continue;
    }
    const auto n0 = static_cast<std::int64_t>(k) * q;
    const auto m0 = static_cast<std::int64_t>(k) * p - static_cast<std::int64_t>(floor_y);
    const double err = kronecker_error(x0, y0, n0, m0);
    best = std::min(best, err);
    if (certified_kronecker(x0, y0, n0, m0, err, eps) && (!require_positive_m || m0 > 0)) {
      return KroneckerWitness{n0, m0, x0, y0, err, eps, WitnessMethod::ContinuedFraction};
    }
  }
  return NotFound{"no convergent with q <= " + std::to_string(bound) + " and 0 < |q x0 - p| < eps " +
                      fmt(eps) + " within " + std::to_string(kCfMaxTerms) + " terms",
                  best, bound};
}

// Fills the shell max(|n|, |m|) = r in lexicographic (n, m) order.
void fill_shell(std::int64_t r, std::vector<double>& ns, std::vector<double>& ms) {
  ns.clear();
  ms.clear();
  if (r == 0) {
    ns.push_back(0.0);
    ms.push_back(0.0);
    return;
  }
  for (std::int64_t n = -r; n <= r; ++n) {
    if (n == -r || n == r) {
      for (std::int64_t m = -r; m <= r; ++m) {
        ns.push_back(static_cast<double>(n));
        ms.push_back(static_cast<double>(m));
      }
    } else {
      ns.push_back(static_cast<double>(n));
      ms.push_back(static_cast<double>(-r));
      ns.push_back(static_cast<double>(n));
      ms.push_back(static_cast<double>(r));
    }
  }
}

DenseOutcome dense_direct(const SlopeLogs& logs, double u, double eps, std::int64_t bound,
                          bool require_positive_m) {
  const auto& k = simd::active_kernels();
  std::vector<double> ns, ms, errs;
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t r = 0; r <= bound; ++r) {
    fill_shell(r, ns, ms);
    errs.resize(ns.size());
    k.lattice_errors(logs.ln_a, logs.ln_b, u, ns.data(), ms.data(), errs.data(), ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const auto n = static_cast<std::int64_t>(ns[i]);
      const auto m = static_cast<std::int64_t>(ms[i]);
      if (require_positive_m && m <= 0) continue;
      best = std::min(best, errs[i]);
      if (errs[i] < eps) {
        const double check = lattice_error(logs, n, m, u);
        if (certified_lattice(logs, n, m, u, check, eps)) {
          return DiophantineWitness{n, m, u, check, eps, WitnessMethod::BruteForce};
        }
      }
    }
  }
  return NotFound{"no max(|n|,|m|) <= " + std::to_string(bound) + " reaches eps " + fmt(eps), best,
                  bound};
}

DenseOutcome dense_kronecker(const SlopeLogs& logs, double u, double eps, std::int64_t bound,
                             WitnessMethod method, bool require_positive_m) {
  const double x0 = -logs.ln_a / logs.ln_b;
  const double y0 = -u / logs.ln_b;
  const double scale = -logs.ln_b;  // > 0
  // shrunk by a relative 1e-9 so the rescaled error stays below eps
  const double eps0 = eps / scale * (1.0 - 1e-9);
  auto outcome = kronecker_witness(x0, y0, eps0, bound, method, require_positive_m);
  if (auto* nf = std::get_if<NotFound>(&outcome)) {
    return NotFound{nf->reason, nf->best_error * scale, nf->bound};
  }
  const auto& w = std::get<KroneckerWitness>(outcome);
  const double err = lattice_error(logs, w.n0, w.m0, u);
  if (certified_lattice(logs, w.n0, w.m0, u, err, eps)) return DiophantineWitness{w.n0, w.m0, u, err, eps, method};
  return NotFound{"witness failed the recomputed bound", err, bound};
}

}  // namespace

SlopeLogs SlopeLogs::of(double a) {
  if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("slope a must lie in (0, 1), got " + fmt(a));
  return SlopeLogs{a, std::log(a), std::log1p(-a)};
}

double slope_from_integers(std::int64_t n, std::int64_t m) {
  if (n < 0 && m < 0) {
    n = -n;
    m = -m;
  }
  if (n <= 0 || m <= 0) {
    throw InvalidArgument("ln a / ln(1-a) = n/m needs n/m > 0 (both logarithms are negative); got n=" +
                          std::to_string(n) + ", m=" + std::to_string(m));
  }
  const auto dn = static_cast<double>(n);
  const auto dm = static_cast<double>(m);
  auto phi = [&](double a) { return dm * std::log(a) - dn * std::log1p(-a); };

  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = phi(mid);
    if (v == 0.0) return mid;
    (v < 0.0 ? lo : hi) = mid;
  }
  if (lo == 0.0) return hi;
  if (hi == 1.0) return lo;
  return std::fabs(phi(lo)) <= std::fabs(phi(hi)) ? lo : hi;
}

RatioClass classify_ratio(double a, std::int64_t denom_bound, double tol) {
  const auto logs = SlopeLogs::of(a);
  if (denom_bound <= 0) throw InvalidArgument("denominator bound must be positive");
  if (!(tol >= 0.0)) throw InvalidArgument("tolerance must be non-negative");
  const double ratio = logs.ln_a / logs.ln_b;
  const auto cf = continued_fraction(ratio, kCfMaxTerms, denom_bound);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [p, q] : cf.convergents) {
    const double err = std::fabs(std::fma(static_cast<double>(q), ratio, -static_cast<double>(p)));
    if (err <= tol) return RationalWithin{p, q, err};
    best = std::min(best, err);
  }
  return NoSmallRational{denom_bound, best};
}

double lattice_spacing(double a, std::int64_t denom_bound, double tol) {
  const auto cls = classify_ratio(a, denom_bound, tol);
  if (const auto* r = std::get_if<RationalWithin>(&cls)) {
    return std::fabs(SlopeLogs::of(a).ln_b) / static_cast<double>(r->q);
  }
  return 0.0;
}

const char* to_string(WitnessMethod m) {
  return m == WitnessMethod::BruteForce ? "brute-force" : "cf-based";
}

const char* to_string(DenseStrategy s) {
  switch (s) {
    case DenseStrategy::Direct: return "direct";
    case DenseStrategy::Kronecker: return "kronecker";
    case DenseStrategy::KroneckerCf: return "kronecker-cf";
  }
  return "?";
}

double kronecker_error(double x0, double y0, std::int64_t n0, std::int64_t m0) {
  const double t = static_cast<double>(n0) * x0 - y0;
  return std::fabs(t - static_cast<double>(m0));
}

double lattice_error(const SlopeLogs& logs, std::int64_t n, std::int64_t m, double u) {
  const double s = static_cast<double>(n) * logs.ln_a + static_cast<double>(m) * logs.ln_b;
  return std::fabs(s - u);
}

KroneckerOutcome kronecker_witness(double x0, double y0, double eps, std::int64_t search_bound,
                                   WitnessMethod method, bool require_positive_m) {
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw InvalidArgument("x0 and y0 must be finite");
  require_eps(eps);
  require_bound(search_bound);
  if (method == WitnessMethod::BruteForce) {
    return kronecker_brute_force(x0, y0, eps, search_bound, require_positive_m);
  }
  // The trivial witness needs no convergent.
  if (!require_positive_m) {
    const auto m0 = static_cast<std::int64_t>(-std::nearbyint(y0));
    if (const double err = kronecker_error(x0, y0, 0, m0); certified_kronecker(x0, y0, 0, m0, err, eps)) {
      return KroneckerWitness{0, m0, x0, y0, err, eps, WitnessMethod::ContinuedFraction};
    }
  }
  return kronecker_cf(x0, y0, eps, search_bound, require_positive_m);
}

DenseOutcome dense_point_in_P(double a, double u, double eps, std::int64_t search_bound,
                              DenseStrategy strategy, bool require_positive_m) {
  const auto logs = SlopeLogs::of(a);
  if (!std::isfinite(u)) throw InvalidArgument("u must be finite");
  require_eps(eps);
  require_bound(search_bound);
  switch (strategy) {
    case DenseStrategy::Direct:
      return dense_direct(logs, u, eps, search_bound, require_positive_m);
    case DenseStrategy::Kronecker:
      return dense_kronecker(logs, u, eps, search_bound, WitnessMethod::BruteForce, require_positive_m);
    case DenseStrategy::KroneckerCf:
      return dense_kronecker(logs, u, eps, search_bound, WitnessMethod::ContinuedFraction,
                             require_positive_m);
  }
  throw InvalidArgument("unknown dense strategy");
}

std::vector<DensityCell> density_profile(double a, const std::vector<double>& u_grid,
                                         const std::vector<double>& eps_sequence,
                                         const std::vector<std::int64_t>& bound_schedule,
                                         DenseStrategy strategy) {
  if (bound_schedule.size() != 1 && bound_schedule.size() != eps_sequence.size()) {
    throw InvalidArgument("bound schedule must have one entry or one per eps");
  }
  for (std::size_t i = 1; i < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i] < eps_sequence[i - 1])) throw InvalidArgument("eps sequence must decrease");
  }
  for (std::size_t i = 1; i < bound_schedule.size(); ++i) {
    if (bound_schedule[i] < bound_schedule[i - 1]) throw InvalidArgument("bound schedule must not decrease");
  }
  std::vector<DensityCell> cells;
  cells.reserve(u_grid.size() * eps_sequence.size());
  for (double u : u_grid) {
    for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
      const auto bound = bound_schedule.size() == 1 ? bound_schedule.front() : bound_schedule[i];
      cells.push_back({u, eps_sequence[i], bound,
                       dense_point_in_P(a, u, eps_sequence[i], bound, strategy)});
    }
  }
  return cells;
}

}  // namespace kaddlab
