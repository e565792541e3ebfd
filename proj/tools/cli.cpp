#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kaddlab/diophantine.hpp"
#include "kaddlab/equations.hpp"
#include "kaddlab/error.hpp"
#include "kaddlab/funcspec.hpp"
#include "kaddlab/io.hpp"
#include "kaddlab/means.hpp"

namespace kaddlab::cli {
namespace {

using io::json;

constexpr double kDefaultTol = 1e-9;
constexpr double kSpreadThreshold = 0.9;

struct Output {
  std::string path;
  std::string format = "json";
};

json envelope(const std::string& command, json config, json results, bool pass) {
  return {{"command", command}, {"config", std::move(config)}, {"results", std::move(results)},
          {"status", pass ? "pass" : "fail"}};
}

void emit(const Output& o, const std::string& payload, std::ostream& out) {
  if (o.path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file '" + o.path + "'");
  f << payload;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot read spec file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// --spec takes a path or inline JSON starting with '{'.
FunctionSpec load_spec(const std::string& source) {
  if (source.empty()) throw InvalidArgument("--spec is required");
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return io::spec_from_text(source);
  return io::spec_from_text(read_file(source));
}

std::vector<std::pair<double, double>> parse_pairs(const std::string& text, const char* what) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument(std::string(what) + " entries must look like x:y, got '" + item + "'");
    }
    try {
      out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidArgument(std::string(what) + " is empty");
  return out;
}

struct ProfileArgs {
  std::string shape = "abs-sine";
  double value = 0.5;
  std::string table;
};

ProfileShape profile_shape(const ProfileArgs& p) {
  if (p.shape == "abs-sine") return AbsSineShape{};
  if (p.shape == "constant") return ConstantShape{p.value};
  if (p.shape == "table") return TableShape{parse_pairs(p.table, "--profile-table")};
  throw InvalidArgument("--profile must be abs-sine, constant or table, got '" + p.shape + "'");
}

void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.path, "Write the result here instead of standard output");
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

GridSpec resolve_grid(const std::string& text, const GridSpec& fallback) {
  return text.empty() ? fallback : GridSpec::parse(text);
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string family;
  double a = 0.0, b = 0.0, c = 0.0;
  std::int64_t n = 1, m = 1;
  ProfileArgs h;
  std::string part = "linear";
  double part_b = 0.5;
  double part_period = std::log(2.0);
  std::string part_table;
  bool dual = false;
  Output out;
};

int cmd_construct(const ConstructArgs& args, std::ostream& out) {
  ConstructedSpec built = [&]() -> ConstructedSpec {
    if (args.family == "two-slope") return make_two_slope(args.a, args.b);
    if (args.family == "pure-linear") return make_pure_linear(args.c);
    if (args.family == "log-periodic") return make_log_periodic(args.n, args.m, profile_shape(args.h));
    if (args.family == "exceptional") {
      if (args.part == "linear") return make_exceptional(args.a, PositivePart::linear(args.part_b));
      if (args.part == "scaled") {
        return make_exceptional(args.a, PositivePart::scaled_profile(make_profile(profile_shape(args.h), args.part_period)));
      }
      if (args.part == "table") return make_exceptional(args.a, PositivePart::table(parse_pairs(args.part_table, "--part-table")));
      throw InvalidArgument("--part must be linear, scaled or table");
    }
    throw InvalidArgument("unknown family '" + args.family +
                          "' (expected two-slope, pure-linear, log-periodic, exceptional)");
  }();
  if (args.dual) {
    auto d = dual(built.spec);
    built = {d, claim_for(d)};
  }
  json config = {{"family", args.family}, {"dual", args.dual}};
  json result = {{"spec", io::to_json(built.spec)}, {"claim", io::to_json(built.claim)}};
  emit(args.out, io::dump(envelope("construct", config, json::array({result}), true)) + "\n", out);
  return kExitPass;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string spec;
  std::vector<std::string> checks{"kadd"};
  std::string grid;
  double tol = kDefaultTol;
  std::string csv;
  Output out;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const auto spec = load_spec(args.spec);
  const auto grid = resolve_grid(args.grid, GridSpec::default_grid());
  if (!(args.tol > 0.0)) throw InvalidArgument("--tol must be > 0");
  if (args.checks.empty()) throw InvalidArgument("at least one --check is required");

  std::vector<Check> checks;
  for (const auto& c : args.checks) checks.push_back(Check::parse(c));

  bool pass = true;
  json results = json::array();
  std::vector<std::pair<Check, std::vector<ResidualSample>>> blocks;
  for (const auto& check : checks) {
    auto samples = sample_residuals(spec, check, grid);
    const auto report = detail::reduce(check, grid, samples, args.tol);
    pass = pass && report.pass;
    results.push_back(io::to_json(report));
    blocks.emplace_back(check, std::move(samples));
  }
  json config = {{"spec", io::to_json(spec)}, {"grid", io::to_json(grid)}, {"tolerance", args.tol}};

  std::ostringstream csv;
  io::write_residual_csv(csv, blocks);
  if (!args.csv.empty()) emit(Output{args.csv, "csv"}, csv.str(), out);
  if (args.out.format == "csv") {
    emit(args.out, csv.str(), out);
  } else {
    emit(args.out, io::dump(envelope("verify", config, results, pass)) + "\n", out);
  }
  return pass ? kExitPass : kExitCheckFailed;
}

// ------------------------------------------------------------------ falsify

struct FalsifyArgs {
  std::int64_t n = 1, m = 1;
  std::string spec;
  std::string grid;
  double tol = kDefaultTol;
  Output out;
};

int cmd_falsify(const FalsifyArgs& args, std::ostream& out) {
  const FunctionSpec spec =
      args.spec.empty() ? make_log_periodic(args.n, args.m, AbsSineShape{}).spec : load_spec(args.spec);
  const auto grid = resolve_grid(args.grid, GridSpec::default_grid());

  const auto kadd = verify_on_grid(spec, Check::kadd(), grid, args.tol);
  const auto bowtie = verify_on_grid(spec, Check::bow_tie(), grid, 0.0);
  const auto cert = nonlinearity_certificate(spec, grid.positive_only());
  GridSpec product = grid;
  product.points_per_decade = GridSpec::product_grid().points_per_decade;
  const auto assoc = verify_operation(TranslativeOperation(spec), MeanCheck::WeakAssociativity, product, args.tol);

  const bool nonlinear = cert.spread >= kSpreadThreshold;
  json cert_json = io::to_json(cert);
  cert_json["kind"] = "nonlinearity";
  cert_json["threshold"] = kSpreadThreshold;
  cert_json["pass"] = nonlinear;

  json results = json::array({io::to_json(kadd), io::to_json(bowtie), cert_json, io::to_json(assoc)});
  const bool pass = kadd.pass && bowtie.pass && nonlinear && assoc.pass;
  json config = {{"spec", io::to_json(spec)}, {"grid", io::to_json(grid)}, {"tolerance", args.tol}};
  json env = envelope("falsify", config, results, pass);
  env["conclusion"] = pass ? "continuous bow-tie solution of kadd that is not linear on x > 0"
                           : "demonstration incomplete: see failing sections";
  emit(args.out, io::dump(env) + "\n", out);
  return pass ? kExitPass : kExitCheckFailed;
}

// -------------------------------------------------------------------- dense

struct DenseArgs {
  double a = 0.0;
  std::vector<double> u{0.0};
  std::vector<double> eps{1e-2};
  std::vector<std::int64_t> bound{1000};
  std::string method;
  bool positive_m = false;
  Output out;
};

DenseStrategy parse_strategy(const std::string& s) {
  if (s == "direct") return DenseStrategy::Direct;
  if (s == "kronecker") return DenseStrategy::Kronecker;
  if (s == "kronecker-cf") return DenseStrategy::KroneckerCf;
  throw InvalidArgument("--method must be direct, kronecker or kronecker-cf");
}

std::string gap_explanation(double a, double u) {
  const double spacing = lattice_spacing(a, 1000000, 1e-12);
  if (spacing == 0.0) return "no witness within the search bound";
  const double k = std::nearbyint(u / spacing);
  const double dist = std::fabs(u - k * spacing);
  return "ln a / ln(1-a) is rational, so P is the lattice " + io::format_number(spacing) +
         " * Z; the nearest point to u is at distance " + io::format_number(dist);
}

int cmd_dense(const DenseArgs& args, std::ostream& out) {
  SlopeLogs::of(args.a);  // validates a
  const bool single = args.u.size() == 1 && args.eps.size() == 1;
  const auto strategy =
      parse_strategy(args.method.empty() ? (single ? "direct" : "kronecker") : args.method);
  json config = {{"a", args.a}, {"u", args.u}, {"eps", args.eps}, {"bound", args.bound},
                 {"method", to_string(strategy)}, {"positive_m", args.positive_m}};

  if (single) {
    if (args.bound.size() != 1) throw InvalidArgument("a single query takes a single --bound");
    const auto outcome = dense_point_in_P(args.a, args.u.front(), args.eps.front(), args.bound.front(), strategy,
                                          args.positive_m);
    const bool found = std::holds_alternative<DiophantineWitness>(outcome);
    if (args.out.format == "csv") {
      std::ostringstream csv;
      io::write_witness_csv(csv, {DensityCell{args.u.front(), args.eps.front(), args.bound.front(), outcome}});
      emit(args.out, csv.str(), out);
    } else {
      json result = std::visit([](const auto& o) { return io::to_json(o); }, outcome);
      if (!found) result["explanation"] = gap_explanation(args.a, args.u.front());
      emit(args.out, io::dump(envelope("dense", config, json::array({result}), found)) + "\n", out);
    }
    return found ? kExitPass : kExitCheckFailed;
  }

  if (args.positive_m) throw InvalidArgument("--positive-m applies to single queries only");
  const auto cells = density_profile(args.a, args.u, args.eps, args.bound, strategy);
  if (args.out.format == "csv") {
    std::ostringstream csv;
    io::write_witness_csv(csv, cells);
    emit(args.out, csv.str(), out);
  } else {
    json results = json::array();
    for (const auto& c : cells) {
      json cell = std::visit([](const auto& o) { return io::to_json(o); }, c.outcome);
      cell["u"] = c.u;
      cell["eps"] = c.eps;
      cell["bound"] = c.bound;
      results.push_back(cell);
    }
    emit(args.out, io::dump(envelope("dense", config, results, true)) + "\n", out);
  }
  return kExitPass;
}

// ----------------------------------------------------------------- classify

struct ClassifyArgs {
  double a = 0.0;
  std::int64_t bound = 1000000;
  double tol = 1e-12;
  Output out;
};

int cmd_classify(const ClassifyArgs& args, std::ostream& out) {
  const auto cls = classify_ratio(args.a, args.bound, args.tol);
  json result = io::to_json(cls);
  const auto logs = SlopeLogs::of(args.a);
  result["ratio"] = logs.ln_a / logs.ln_b;
  if (const auto* r = std::get_if<RationalWithin>(&cls)) {
    result["lattice_spacing"] = std::fabs(logs.ln_b) / static_cast<double>(r->q);
  }
  result["note"] = "bounded-denominator heuristic; binary64 arithmetic cannot decide rationality";
  json config = {{"a", args.a}, {"bound", args.bound}, {"tolerance", args.tol}};
  emit(args.out, io::dump(envelope("classify", config, json::array({result}), true)) + "\n", out);
  return kExitPass;
}

// --------------------------------------------------------------- mean-check

struct MeanArgs {
  std::string spec;
  std::string grid;
  double tol = kDefaultTol;
  bool translativity = true;
  Output out;
};

int cmd_mean_check(const MeanArgs& args, std::ostream& out) {
  const auto spec = load_spec(args.spec);
  const auto grid = resolve_grid(args.grid, GridSpec::product_grid());
  const TranslativeOperation F(spec);
  std::vector<MeanCheck> checks{MeanCheck::WeakAssociativity, MeanCheck::MeanProperty};
  if (args.translativity) checks.push_back(MeanCheck::Translativity);

  bool pass = true;
  json results = json::array();
  for (auto c : checks) {
    GridSpec g = grid;
    if (c == MeanCheck::Translativity) g.points_per_decade = std::max(1, grid.points_per_decade / 4);
    const auto r = verify_operation(F, c, g, args.tol);
    pass = pass && r.pass;
    results.push_back(io::to_json(r));
  }
  json config = {{"spec", io::to_json(spec)}, {"grid", io::to_json(grid)}, {"tolerance", args.tol}};
  emit(args.out, io::dump(envelope("mean-check", config, results, pass)) + "\n", out);
  return pass ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kaddlab: solution families and verification for f(f(-x)+x) = f(-f(x)) + f(x)", "kaddlab"};
  app.require_subcommand(1);

  ConstructArgs construct;
  auto* c = app.add_subcommand("construct", "Build a function spec and its solution claim");
  c->add_option("family", construct.family, "two-slope | pure-linear | log-periodic | exceptional")->required();
  c->add_option("--a", construct.a, "Slope on x <= 0");
  c->add_option("--b", construct.b, "Slope on x > 0 (two-slope)");
  c->add_option("--c", construct.c, "Slope (pure-linear)");
  c->add_option("--n", construct.n, "ln a = n gamma (log-periodic)");
  c->add_option("--m", construct.m, "ln(1-a) = m gamma (log-periodic)");
  c->add_option("--profile", construct.h.shape, "Profile shape: abs-sine | constant | table");
  c->add_option("--profile-value", construct.h.value, "Constant profile value");
  c->add_option("--profile-table", construct.h.table, "Table profile as phase:value,phase:value,...");
  c->add_option("--part", construct.part, "Exceptional positive part: linear | scaled | table");
  c->add_option("--part-b", construct.part_b, "Linear positive part slope");
  c->add_option("--part-period", construct.part_period, "Period of a scaled positive part profile");
  c->add_option("--part-table", construct.part_table, "Positive part samples as x:y,x:y,...");
  c->add_flag("--dual", construct.dual, "Emit x -> -f(-x) instead");
  add_output_options(c, construct.out);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check equations on a grid");
  v->add_option("--spec", verify.spec, "Spec file or inline JSON")->required();
  v->add_option("--check", verify.checks, "kadd, add, bowtie, homogeneity:<l>, phi:<l>")->delimiter(',');
  v->add_option("--grid", verify.grid, "min:max:ppd");
  v->add_option("--tol", verify.tol, "Tolerance on the scaled residual");
  v->add_option("--csv", verify.csv, "Also write x, f(x), residual rows here");
  add_output_options(v, verify.out);

  FalsifyArgs falsify;
  auto* f = app.add_subcommand("falsify", "Log-periodic counterexample bundle");
  f->add_option("--n", falsify.n, "ln a = n gamma");
  f->add_option("--m", falsify.m, "ln(1-a) = m gamma");
  f->add_option("--spec", falsify.spec, "Substitute another spec");
  f->add_option("--grid", falsify.grid, "min:max:ppd");
  f->add_option("--tol", falsify.tol, "Tolerance on scaled residuals");
  add_output_options(f, falsify.out);

  DenseArgs dense;
  auto* d = app.add_subcommand("dense", "Find n ln a + m ln(1-a) within eps of u");
  d->add_option("--a", dense.a, "Slope in (0, 1)")->required();
  d->add_option("--u", dense.u, "Target(s)")->delimiter(',');
  d->add_option("--eps", dense.eps, "Tolerance(s), decreasing")->delimiter(',');
  d->add_option("--bound", dense.bound, "Search bound(s)")->delimiter(',');
  d->add_option("--method", dense.method, "direct | kronecker | kronecker-cf");
  d->add_flag("--positive-m", dense.positive_m, "Require m > 0");
  add_output_options(d, dense.out);

  ClassifyArgs classify;
  auto* k = app.add_subcommand("classify", "Is ln a / ln(1-a) a small-denominator rational?");
  k->add_option("--a", classify.a, "Slope in (0, 1)")->required();
  k->add_option("--bound", classify.bound, "Denominator bound");
  k->add_option("--tol", classify.tol, "Tolerance on |q r - p|");
  add_output_options(k, classify.out);

  MeanArgs mean;
  auto* mc = app.add_subcommand("mean-check", "Weak associativity, mean property and translativity of F(x,y)=f(x-y)+y");
  mc->add_option("--spec", mean.spec, "Spec file or inline JSON")->required();
  mc->add_option("--grid", mean.grid, "min:max:ppd of the 1-D factor grid");
  mc->add_option("--tol", mean.tol, "Tolerance on scaled residuals");
  mc->add_flag("--translativity,!--no-translativity", mean.translativity, "Include the 3-D translativity sweep");
  add_output_options(mc, mean.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "kaddlab: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (c->parsed()) return cmd_construct(construct, out);
    if (v->parsed()) return cmd_verify(verify, out);
    if (f->parsed()) return cmd_falsify(falsify, out);
    if (d->parsed()) return cmd_dense(dense, out);
    if (k->parsed()) return cmd_classify(classify, out);
    if (mc->parsed()) return cmd_mean_check(mean, out);
  } catch (const InvalidArgument& e) {
    err << "kaddlab: invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "kaddlab: invalid input: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace kaddlab::cli
