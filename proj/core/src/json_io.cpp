#include "probectl/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace probectl {

json rotation_to_json(const Rotation& r) {
  const auto& q = r.q();
  return json{{"q", {q[0], q[1], q[2], q[3]}}};
}

Rotation rotation_from_json(const json& j) {
  const auto& q = j.at("q");
  if (q.size() != 4) throw std::invalid_argument("rotation: q must have 4 entries");
  return Rotation::from_quaternion(q[0].get<double>(), q[1].get<double>(),
                                   q[2].get<double>(), q[3].get<double>());
}

json spectrum_to_json(const SpectrumSpec& s) {
  return json{{"eigenvalues", s.eigenvalues},
              {"n_qubits", s.n_qubits},
              {"couplings", s.couplings}};
}

SpectrumSpec spectrum_from_json(const json& j) {
  SpectrumSpec s;
  s.eigenvalues = j.at("eigenvalues").get<std::vector<long>>();
  s.n_qubits = j.at("n_qubits").get<int>();
  if (j.contains("couplings"))
    s.couplings = j.at("couplings").get<std::vector<double>>();
  if (!std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()))
    throw std::invalid_argument("spectrum: eigenvalues must be sorted");
  return s;
}

json program_to_json(const Program& p) {
  json words = json::array();
  for (const ControlWord& w : p.words) {
    AxisAngle aa = w.base.to_axis_angle();
    words.push_back(
        {{"kind",
          w.kind == WordKind::Conditional ? "conditional" : "unconditional"},
         {"axis", {aa.axis.x(), aa.axis.y(), aa.axis.z()}},
         {"angle", aa.angle}});
  }
  return json{{"spectrum", spectrum_to_json(p.spectrum)}, {"words", words}};
}

Program program_from_json(const json& j) {
  Program p;
  p.spectrum = spectrum_from_json(j.at("spectrum"));
  for (const json& wj : j.at("words")) {
    ControlWord w;
    std::string kind = wj.at("kind").get<std::string>();
    if (kind == "conditional")
      w.kind = WordKind::Conditional;
    else if (kind == "unconditional")
      w.kind = WordKind::Unconditional;
    else
      throw std::invalid_argument("program: unknown word kind " + kind);
    const auto& ax = wj.at("axis");
    w.base = Rotation::from_axis_angle(
        {ax[0].get<double>(), ax[1].get<double>(), ax[2].get<double>()},
        wj.at("angle").get<double>());
    p.words.push_back(w);
  }
  return p;
}

json boolfunc_to_json(const BoolFunc& f) {
  json table = json::object();
  for (const auto& [j, v] : f.table) table[std::to_string(j)] = v;
  return table;
}

FunctionSpec function_spec_from_json(const json& j) {
  FunctionSpec out;
  if (j.contains("couplings")) {
    out.spectrum = SpectrumSpec::from_couplings(
        j.at("couplings").get<std::vector<double>>());
  } else if (j.contains("n_qubits")) {
    out.spectrum = SpectrumSpec::consecutive(1L << j.at("n_qubits").get<int>());
  } else {
    throw std::invalid_argument("function spec: need couplings or n_qubits");
  }
  if (j.contains("builtin")) {
    std::string b = j.at("builtin").get<std::string>();
    if (b == "parity") {
      out.f = BoolFunc::parity(out.spectrum);
    } else if (b == "indicator") {
      out.f = BoolFunc::indicator(out.spectrum, j.at("i").get<long>(),
                                  j.at("k").get<int>());
    } else {
      throw std::invalid_argument("function spec: unknown builtin " + b);
    }
    return out;
  }
  if (!j.contains("table"))
    throw std::invalid_argument("function spec: need builtin or table");
  for (const auto& [key, val] : j.at("table").items()) {
    long eig = std::stol(key);
    if (!out.spectrum.contains(eig))
      throw std::invalid_argument("function spec: table key " + key +
                                  " outside the spectrum");
    out.f.table[eig] = val.get<int>() ? 1 : 0;
  }
  for (long eig : out.spectrum.distinct()) {
    if (!out.f.table.count(eig))
      throw std::invalid_argument("function spec: table misses eigenvalue " +
                                  std::to_string(eig));
  }
  return out;
}

json state_to_json(const Eigen::VectorXcd& v, int n_qubits) {
  json amps = json::array();
  for (long i = 0; i < v.size(); ++i)
    amps.push_back({v(i).real(), v(i).imag()});
  return json{{"n_qubits", n_qubits}, {"amplitudes", amps}};
}

Eigen::VectorXcd state_from_json(const json& j) {
  const auto& amps = j.at("amplitudes");
  int n = j.at("n_qubits").get<int>();
  if (static_cast<long>(amps.size()) != (1L << n))
    throw std::invalid_argument("state: amplitude count != 2^n_qubits");
  Eigen::VectorXcd v(amps.size());
  for (size_t i = 0; i < amps.size(); ++i)
    v(static_cast<long>(i)) =
        Complex(amps[i][0].get<double>(), amps[i][1].get<double>());
  return v;
}

json synth_report_to_json(const SynthReport& r) {
  json out;
  out["program"] = program_to_json(r.program);
  out["target"] = boolfunc_to_json(r.target);
  out["witness"] =
      r.witness.any ? json{{"any", true}}
                    : json{{"any", false}, {"u", rotation_to_json(r.witness.u)}};
  out["conditional_steps"] = r.conditional_steps;
  out["recursion_depth"] = r.recursion_depth;
  return out;
}

json search_result_to_json(const SearchResult& r, const std::string& group,
                           SearchMode mode) {
  json out;
  out["group"] = group;
  out["mode"] = mode == SearchMode::Strict ? "strict" : "state_level";
  out["length"] = r.length;
  out["explored"] = r.explored;
  out["program"] = program_to_json(r.program);
  if (mode == SearchMode::Strict) {
    out["witness"] = r.witness.any
                         ? json{{"any", true}}
                         : json{{"any", false},
                                {"u", rotation_to_json(r.witness.u)}};
  } else if (r.outcome_axis) {
    out["outcome_axis"] = {r.outcome_axis->x(), r.outcome_axis->y(),
                           r.outcome_axis->z()};
  }
  return out;
}

json schedule_to_json(const PulseSchedule& s) {
  json segs = json::array();
  for (const ScheduleSegment& seg : s.segments)
    segs.push_back({{"position", seg.position},
                    {"duration", seg.duration},
                    {"sign_flip", seg.sign_flip}});
  return json{{"segments", segs}, {"target_coupling", s.target_coupling}};
}

PulseSchedule schedule_from_json(const json& j) {
  PulseSchedule s;
  s.target_coupling = j.at("target_coupling").get<std::vector<double>>();
  for (const json& seg : j.at("segments")) {
    s.segments.push_back({seg.at("position").get<std::string>(),
                          seg.at("duration").get<double>(),
                          seg.at("sign_flip").get<bool>()});
  }
  return s;
}

CouplingBasis basis_from_json(const json& j) {
  CouplingBasis b;
  b.position_labels = j.at("positions").get<std::vector<std::string>>();
  const auto& rows = j.at("vectors");
  if (rows.size() != b.position_labels.size())
    throw std::invalid_argument("basis: positions/vectors length mismatch");
  if (rows.empty()) throw std::invalid_argument("basis: empty");
  long n = static_cast<long>(rows[0].size());
  b.vectors.resize(static_cast<long>(rows.size()), n);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<long>(rows[i].size()) != n)
      throw std::invalid_argument("basis: ragged vector rows");
    for (long q = 0; q < n; ++q)
      b.vectors(static_cast<long>(i), q) = rows[i][q].get<double>();
  }
  return b;
}

json basis_to_json(const CouplingBasis& b) {
  json rows = json::array();
  for (long i = 0; i < b.vectors.rows(); ++i) {
    json row = json::array();
    for (long q = 0; q < b.vectors.cols(); ++q) row.push_back(b.vectors(i, q));
    rows.push_back(row);
  }
  return json{{"positions", b.position_labels}, {"vectors", rows}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace probectl
