#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace kaddlab {

// Logarithms of the two homogeneity factors a and 1 - a, computed once per
// query and threaded through every lattice computation.
struct SlopeLogs {
  double a;
  double ln_a;
  double ln_b;  // ln(1 - a)

  static SlopeLogs of(double a);  // requires 0 < a < 1
};

// The unique a in (0, 1) with m ln a = n ln(1 - a), i.e. ln a / ln(1 - a) = n/m.
// A common sign is normalized away; mixed signs or zeros are rejected.
//
// Found by bisection on m ln a - n ln(1 - a), which increases strictly from
// -inf to +inf, carried down to adjacent doubles.
double slope_from_integers(std::int64_t n, std::int64_t m);

struct RationalWithin {
  std::int64_t p;
  std::int64_t q;
  double error;  // |q r - p|, an upper bound on |r - p/q|
};
struct NoSmallRational {
  std::int64_t denominator_bound;
  double best_error;  // smallest |q r - p| over the scanned convergents
};
using RatioClass = std::variant<RationalWithin, NoSmallRational>;

// Classifies r = ln a / ln(1 - a) by scanning its convergents for one with
// |q r - p| <= tol and q <= denom_bound.
//
// This is a bounded-denominator heuristic: binary64 arithmetic cannot decide
// rationality. (Both ln a and ln(1 - a) are irrational whenever r is
// rational, so no exact shortcut exists either.)
RatioClass classify_ratio(double a, std::int64_t denom_bound, double tol);

enum class WitnessMethod { BruteForce, ContinuedFraction };
const char* to_string(WitnessMethod m);

struct NotFound {
  std::string reason;
  double best_error;      // closest approach seen during the search
  std::int64_t bound;     // the search bound that was exhausted
};

// Integers with |n0 x0 - m0 - y0| = error < epsilon.
struct KroneckerWitness {
  std::int64_t n0;
  std::int64_t m0;
  double x0;
  double y0;
  double error;
  double epsilon;
  WitnessMethod method;
};
using KroneckerOutcome = std::variant<KroneckerWitness, NotFound>;

// |(n0 x0 - y0) - m0|, the exact arithmetic every search path uses.
double kronecker_error(double x0, double y0, std::int64_t n0, std::int64_t m0);

// BruteForce scans n0 = 0, -1, 1, -2, 2, ... up to |n0| <= search_bound and
// takes m0 as the nearest integer to n0 x0 - y0; the first hit wins.
//
// ContinuedFraction takes the first convergent p/q of x0 (q <= search_bound)
// with 0 < |q x0 - p| < eps and walks multiples k (n0 = k q, m0 = k p - floor(y0))
// towards y0 mod 1.
//
// require_positive_m restricts to m0 > 0, which rules out the trivial (0, 0)
// witness for y0 = 0.
KroneckerOutcome kronecker_witness(double x0, double y0, double eps, std::int64_t search_bound,
                                   WitnessMethod method, bool require_positive_m = false);

// A point n ln a + m ln(1 - a) of the set P within epsilon of u.
struct DiophantineWitness {
  std::int64_t n;
  std::int64_t m;
  double u;
  double achieved_error;
  double epsilon;
  WitnessMethod method;
};
using DenseOutcome = std::variant<DiophantineWitness, NotFound>;

// |(n ln a + m ln(1 - a)) - u|
double lattice_error(const SlopeLogs& logs, std::int64_t n, std::int64_t m, double u);

enum class DenseStrategy {
  // 2-D scan by increasing max(|n|, |m|) <= bound, then lexicographic (n, m).
  Direct,
  // Kronecker reduction x0 = -ln a / ln(1-a), y0 = -u / ln(1-a), brute-force in n0.
  Kronecker,
  // Kronecker reduction with the continued-fraction witness.
  KroneckerCf,
};
const char* to_string(DenseStrategy s);

DenseOutcome dense_point_in_P(double a, double u, double eps, std::int64_t search_bound,
                              DenseStrategy strategy = DenseStrategy::Direct,
                              bool require_positive_m = false);

struct DensityCell {
  double u;
  double eps;
  std::int64_t bound;
  DenseOutcome outcome;
};

// One cell per (u, eps_i) pair, eps_i searched under bound_schedule[i]; a
// schedule of length one applies to every eps. NotFound cells are recorded.
std::vector<DensityCell> density_profile(double a, const std::vector<double>& u_grid,
                                         const std::vector<double>& eps_sequence,
                                         const std::vector<std::int64_t>& bound_schedule,
                                         DenseStrategy strategy = DenseStrategy::Kronecker);

// Spacing |gamma| of the lattice P = gamma Z when classify_ratio reports a
// rational ratio, 0 otherwise.
double lattice_spacing(double a, std::int64_t denom_bound, double tol);

}  // namespace kaddlab
