#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "kaddlab/diophantine.hpp"
#include "kaddlab/equations.hpp"
#include "kaddlab/funcspec.hpp"
#include "kaddlab/means.hpp"

namespace kaddlab::io {

using nlohmann::json;

// Serializes with every floating-point number printed at 17 significant
// digits ("%.17g"), so output is reproducible and parses back bit-exactly.
std::string dump(const json& j, int indent = 2);

// Spec schema: every object carries a "kind" tag.
//   {"kind":"two_slope","a":..,"b":..}
//   {"kind":"pure_linear","c":..}
//   {"kind":"log_periodic","a":..,"n":..,"m":..,"gamma":..,"h":<profile>}
//   {"kind":"exceptional","a":0|1,"positive_part":<positive part>}
//   {"kind":"dual","inner":<spec>}
// Profiles:
//   {"kind":"abs_sine","period":..} | {"kind":"constant","value":..}
//   {"kind":"table","period":..,"samples":[[phase,value],...]}
// Positive parts:
//   {"kind":"linear","b":..} | {"kind":"scaled_profile","profile":<profile>}
//   {"kind":"table","samples":[[x,y],...]}
json to_json(const PeriodicProfile& p);
json to_json(const PositivePart& p);
json to_json(const FunctionSpec& s);
json to_json(const SolutionClaim& c);
json to_json(const GridSpec& g);
json to_json(const ResidualReport& r);
json to_json(const Residual2dReport& r);
json to_json(const NonlinearityCertificate& c);
json to_json(const DiophantineWitness& w);
json to_json(const KroneckerWitness& w);
json to_json(const NotFound& nf);
json to_json(const RatioClass& rc);

// Parsing re-runs the validating factories; invalid input raises
// InvalidArgument naming the offending field.
PeriodicProfile profile_from_json(const json& j);
PositivePart positive_part_from_json(const json& j);
FunctionSpec spec_from_json(const json& j);

// Accepts a bare spec object, {"spec": ...}, or a report envelope whose first
// result carries a "spec".
FunctionSpec spec_from_document(const json& j);
FunctionSpec spec_from_text(const std::string& text);

// Frozen column orders.
inline constexpr const char* kResidualCsvHeader = "kind,x,f(x),residual";
inline constexpr const char* kWitnessCsvHeader = "u,eps,n,m,achieved_error,method";

void write_residual_csv(std::ostream& out, const std::vector<std::pair<Check, std::vector<ResidualSample>>>& blocks);
void write_witness_csv(std::ostream& out, const std::vector<DensityCell>& cells);

std::string format_number(double v);

}  // namespace kaddlab::io
