#include "kaddlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "kaddlab/error.hpp"

namespace kaddlab::io {
namespace {

void dump_into(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const auto& e : j) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        dump_into(e, indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "]";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw InvalidArgument(std::string("expected a JSON object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw InvalidArgument(std::string("missing field '") + name + "'");
  return *it;
}

double number(const json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_number()) throw InvalidArgument(std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_number_integer()) throw InvalidArgument(std::string("field '") + name + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string kind_of(const json& j) {
  const auto& k = field(j, "kind");
  if (!k.is_string()) throw InvalidArgument("field 'kind' must be a string");
  return k.get<std::string>();
}

std::vector<std::pair<double, double>> pairs(const json& j, const char* name) {
  const auto& arr = field(j, name);
  if (!arr.is_array()) throw InvalidArgument(std::string("field '") + name + "' must be an array of pairs");
  std::vector<std::pair<double, double>> out;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw InvalidArgument(std::string("field '") + name + "' must hold [number, number] pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

json pairs_json(const std::vector<std::pair<double, double>>& v) {
  json arr = json::array();
  for (const auto& [a, b] : v) arr.push_back(json::array({a, b}));
  return arr;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

json to_json(const PeriodicProfile& p) {
  struct Visitor {
    json operator()(const PeriodicProfile::AbsSine& s) const { return {{"kind", "abs_sine"}, {"period", s.period}}; }
    json operator()(const PeriodicProfile::Constant& c) const { return {{"kind", "constant"}, {"value", c.value}}; }
    json operator()(const PeriodicProfile::Table& t) const {
      return {{"kind", "table"}, {"period", t.period}, {"samples", pairs_json(t.samples)}};
    }
  };
  return std::visit(Visitor{}, p.shape());
}

json to_json(const PositivePart& p) {
  struct Visitor {
    json operator()(const PositivePart::Linear& l) const { return {{"kind", "linear"}, {"b", l.b}}; }
    json operator()(const PositivePart::ScaledProfile& s) const {
      return {{"kind", "scaled_profile"}, {"profile", to_json(s.profile)}};
    }
    json operator()(const PositivePart::Table& t) const { return {{"kind", "table"}, {"samples", pairs_json(t.samples)}}; }
  };
  return std::visit(Visitor{}, p.shape());
}

json to_json(const FunctionSpec& s) {
  struct Visitor {
    json operator()(const FunctionSpec::TwoSlope& t) const { return {{"kind", "two_slope"}, {"a", t.a}, {"b", t.b}}; }
    json operator()(const FunctionSpec::PureLinear& p) const { return {{"kind", "pure_linear"}, {"c", p.c}}; }
    json operator()(const FunctionSpec::LogPeriodic& l) const {
      return {{"kind", "log_periodic"}, {"a", l.a}, {"n", l.n}, {"m", l.m}, {"gamma", l.gamma}, {"h", to_json(l.h)}};
    }
    json operator()(const FunctionSpec::Exceptional& e) const {
      return {{"kind", "exceptional"}, {"a", e.a}, {"positive_part", to_json(e.positive_part)}};
    }
    json operator()(const FunctionSpec::Dual& d) const { return {{"kind", "dual"}, {"inner", to_json(*d.inner)}}; }
  };
  return std::visit(Visitor{}, s.variant());
}

json to_json(const SolutionClaim& c) {
  return {{"solves_kadd", to_string(c.solves_kadd)},
          {"solves_add", to_string(c.solves_add)},
          {"satisfies_bowtie", to_string(c.satisfies_bowtie)},
          {"homogeneity_factors", c.homogeneity_factors},
          {"justification", c.justification}};
}

json to_json(const GridSpec& g) {
  return {{"min_magnitude", g.min_magnitude},
          {"max_magnitude", g.max_magnitude},
          {"points_per_decade", g.points_per_decade},
          {"include_zero", g.include_zero},
          {"signs", to_string(g.signs)}};
}

json to_json(const ResidualReport& r) {
  return {{"kind", r.check.name()},
          {"grid", to_json(r.grid)},
          {"scaling", scaling_name(r.check.kind)},
          {"max_abs_residual", r.max_abs_residual},
          {"max_raw_residual", r.max_raw_residual},
          {"argmax_x", r.argmax_x},
          {"point_count", r.point_count},
          {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

json to_json(const Residual2dReport& r) {
  json j = {{"kind", to_string(r.check)},
            {"grid", to_json(r.grid)},
            {"max_abs_residual", r.max_abs_residual},
            {"max_raw_residual", r.max_raw_residual},
            {"argmax_x", r.argmax_x},
            {"argmax_y", r.argmax_y},
            {"point_count", r.point_count},
            {"tolerance", r.tolerance},
            {"pass", r.pass}};
  if (r.check == MeanCheck::Translativity) j["argmax_z"] = r.argmax_z;
  return j;
}

json to_json(const NonlinearityCertificate& c) {
  return {{"ratio_min", c.ratio_min},
          {"ratio_max", c.ratio_max},
          {"spread", c.spread},
          {"argmin_x", c.argmin_x},
          {"argmax_x", c.argmax_x}};
}

json to_json(const DiophantineWitness& w) {
  return {{"found", true}, {"n", w.n}, {"m", w.m}, {"u", w.u}, {"achieved_error", w.achieved_error},
          {"epsilon", w.epsilon}, {"method", to_string(w.method)}};
}

json to_json(const KroneckerWitness& w) {
  return {{"found", true}, {"n0", w.n0}, {"m0", w.m0}, {"x0", w.x0}, {"y0", w.y0},
          {"error", w.error}, {"epsilon", w.epsilon}, {"method", to_string(w.method)}};
}

json to_json(const NotFound& nf) {
  return {{"found", false}, {"reason", nf.reason}, {"best_error", nf.best_error}, {"bound", nf.bound}};
}

json to_json(const RatioClass& rc) {
  if (const auto* r = std::get_if<RationalWithin>(&rc)) {
    return {{"class", "rational_within"}, {"p", r->p}, {"q", r->q}, {"error", r->error}};
  }
  const auto& n = std::get<NoSmallRational>(rc);
  return {{"class", "no_small_rational"}, {"denominator_bound", n.denominator_bound}, {"best_error", n.best_error}};
}

PeriodicProfile profile_from_json(const json& j) {
  const auto kind = kind_of(j);
  if (kind == "abs_sine") return PeriodicProfile::abs_sine(number(j, "period"));
  if (kind == "constant") return PeriodicProfile::constant(number(j, "value"));
  if (kind == "table") return PeriodicProfile::table(number(j, "period"), pairs(j, "samples"));
  throw InvalidArgument("unknown profile kind '" + kind + "'");
}

PositivePart positive_part_from_json(const json& j) {
  const auto kind = kind_of(j);
  if (kind == "linear") return PositivePart::linear(number(j, "b"));
  if (kind == "scaled_profile") return PositivePart::scaled_profile(profile_from_json(field(j, "profile")));
  if (kind == "table") return PositivePart::table(pairs(j, "samples"));
  throw InvalidArgument("unknown positive part kind '" + kind + "'");
}

FunctionSpec spec_from_json(const json& j) {
  const auto kind = kind_of(j);
  if (kind == "two_slope") return FunctionSpec::two_slope(number(j, "a"), number(j, "b"));
  if (kind == "pure_linear") return FunctionSpec::pure_linear(number(j, "c"));
  if (kind == "log_periodic") {
    return FunctionSpec::log_periodic(number(j, "a"), integer(j, "n"), integer(j, "m"), number(j, "gamma"),
                                      profile_from_json(field(j, "h")));
  }
  if (kind == "exceptional") {
    return FunctionSpec::exceptional(number(j, "a"), positive_part_from_json(field(j, "positive_part")));
  }
  if (kind == "dual") return FunctionSpec::dual_of(spec_from_json(field(j, "inner")));
  throw InvalidArgument("unknown spec kind '" + kind + "'");
}

FunctionSpec spec_from_document(const json& j) {
  if (!j.is_object()) throw InvalidArgument("spec document must be a JSON object");
  if (j.contains("kind")) return spec_from_json(j);
  if (j.contains("spec")) return spec_from_json(j["spec"]);
  if (j.contains("results") && j["results"].is_array() && !j["results"].empty() &&
      j["results"][0].is_object() && j["results"][0].contains("spec")) {
    return spec_from_json(j["results"][0]["spec"]);
  }
  throw InvalidArgument("document holds no spec (expected 'kind', 'spec', or results[0].spec)");
}

FunctionSpec spec_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed spec JSON: ") + e.what());
  }
  return spec_from_document(j);
}

void write_residual_csv(std::ostream& out,
                        const std::vector<std::pair<Check, std::vector<ResidualSample>>>& blocks) {
  out << kResidualCsvHeader << '\n';
  for (const auto& [check, samples] : blocks) {
    const auto name = check.name();
    for (const auto& s : samples) {
      out << name << ',' << format_number(s.x) << ',' << format_number(s.fx) << ',' << format_number(s.residual)
          << '\n';
    }
  }
}

void write_witness_csv(std::ostream& out, const std::vector<DensityCell>& cells) {
  out << kWitnessCsvHeader << '\n';
  for (const auto& c : cells) {
    out << format_number(c.u) << ',' << format_number(c.eps) << ',';
    if (const auto* w = std::get_if<DiophantineWitness>(&c.outcome)) {
      out << w->n << ',' << w->m << ',' << format_number(w->achieved_error) << ',' << to_string(w->method);
    } else {
      const auto& nf = std::get<NotFound>(c.outcome);
      out << ",," << format_number(nf.best_error) << ",not-found";
    }
    out << '\n';
  }
}

}  // namespace kaddlab::io
