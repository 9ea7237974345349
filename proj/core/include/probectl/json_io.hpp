#pragma once

#include <string>

#include <json.hpp>

#include "probectl/compiler.hpp"
#include "probectl/control_ir.hpp"
#include "probectl/dynamics.hpp"
#include "probectl/search.hpp"
#include "probectl/synthesis.hpp"

namespace probectl {

using json = nlohmann::json;

// {"q":[w,x,y,z]}, canonical sign; readers re-canonicalize.
json rotation_to_json(const Rotation& r);
Rotation rotation_from_json(const json& j);

json spectrum_to_json(const SpectrumSpec& s);
SpectrumSpec spectrum_from_json(const json& j);

// {"spectrum":{...},"words":[{"kind","axis":[x,y,z],"angle"},...]}
json program_to_json(const Program& p);
Program program_from_json(const json& j);

// {"n_qubits","couplings","table":{"0":0,...}} or
// {"builtin":"parity"|"indicator","i","k"} (+ n_qubits/couplings).
struct FunctionSpec {
  SpectrumSpec spectrum;
  BoolFunc f;
};
FunctionSpec function_spec_from_json(const json& j);
json boolfunc_to_json(const BoolFunc& f);

// {"n_qubits","amplitudes":[[re,im],...]}
json state_to_json(const Eigen::VectorXcd& v, int n_qubits);
Eigen::VectorXcd state_from_json(const json& j);

json synth_report_to_json(const SynthReport& r);
json search_result_to_json(const SearchResult& r, const std::string& group,
                           SearchMode mode);

// {"segments":[{"position","duration","sign_flip"},...],"target_coupling"}
json schedule_to_json(const PulseSchedule& s);
PulseSchedule schedule_from_json(const json& j);

// {"positions":["P1",...],"vectors":[[...],...]}
CouplingBasis basis_from_json(const json& j);
json basis_to_json(const CouplingBasis& b);

// Parse error -> std::invalid_argument with the file path in the message.
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace probectl
