#pragma once

#include <json.hpp>

#include "summa/banach.hpp"
#include "summa/precauchy.hpp"

namespace summa {

using json = nlohmann::json;

// Config-file vocabulary (all shapes validated; unknown kinds are input errors):
//   matrix:  {"kind":"cesaro"} | {"kind":"identity"}
//          | {"kind":"triangular_csv","path":"..."}        n,k,value per line
//          | {"kind":"shift_of","base":{...},"i":int}
//   family:  {"family":"single","matrix":{...}}
//          | {"family":"shifts","base":{...},"i_max":int}
//   ideal:   {"kind":"finite"}
//          | {"kind":"derived","family":{...},"inner":{...}}
//   gauge:   {"kind":"identity"} | {"kind":"power","p":x}
//          | {"kind":"power_cycle","p_min":x,"p_max":x,"period":int}   p_k family
//          | {"kind":"table","points":[[t,v],...],"gauge_kind":"orlicz"|"modulus"}
//   space:   {"kind":"polytope","vertices":[[...],...]} | {"kind":"pnorm","p":x,"d":int}

SummabilityMatrix parse_matrix(const json& j);
MatrixFamily parse_family(const json& j, int default_imax = 64);
IdealHandle parse_ideal(const json& j, const Scale& scale);
GaugeFamily parse_gauge(const json& j);
FiniteDimSpace parse_space(const json& j);
Scale parse_scale(const json& j, const Scale& defaults);

struct AnalysisConfig {
  std::string mode;
  json raw;
  Scale scale;
};

AnalysisConfig parse_config(const json& j);

json verdict_to_json(const Verdict& v);

SequencePrefix read_sequence_file(const std::string& path);
VectorSequencePrefix read_vector_sequence_file(const std::string& path, int dim);

// Runs the configured analysis; returns the report and the Verdict-aligned
// exit status (0 holds, 1 fails, 2 inconclusive).
struct RunOutcome {
  json report;
  int exit_code = 2;
};

RunOutcome run_analysis(const AnalysisConfig& cfg, const std::string& input_path);

void write_report_atomically(const json& report, const std::string& path);
void write_series_csv(const json& report, const std::string& path);

}  // namespace summa
