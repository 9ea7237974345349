// Command-line front end: compile function specs to control programs, simulate
// them, search for short measurement words, solve coupling schedules, and emit
// verification reports. All outputs embed a run manifest; identical manifest
// and inputs produce byte-identical files.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "probectl/claims.hpp"
#include "probectl/compiler.hpp"
#include "probectl/dynamics.hpp"
#include "probectl/group.hpp"
#include "probectl/json_io.hpp"
#include "probectl/search.hpp"
#include "probectl/synthesis.hpp"

namespace {

using namespace probectl;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitSpecError = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitVerification = 4;

// All emitted numbers carry 12 significant digits.
double round_sig(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  std::ostringstream os;
  os.precision(12);
  os << v;
  return std::stod(os.str());
}

json round_doubles(const json& j) {
  if (j.is_number_float()) return round_sig(j.get<double>());
  if (j.is_array()) {
    json out = json::array();
    for (const auto& e : j) out.push_back(round_doubles(e));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = round_doubles(v);
    return out;
  }
  return j;
}

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Manifest {
  std::string command;
  std::vector<std::string> inputs;
  long seed = 0;
  std::string timestamp;

  json to_json() const {
    return json{{"command", command},
                {"inputs", inputs},
                {"seed", seed},
                {"tolerances", {{"default", 1e-9}, {"schedule", 1e-12}}},
                {"tool_version", kVersion},
                {"timestamp", timestamp}};
  }
};

void emit(const json& payload, const std::string& out_path) {
  json rounded = round_doubles(payload);
  if (out_path.empty()) {
    std::cout << rounded.dump(2) << "\n";
  } else {
    save_json_file(out_path, rounded);
  }
}

Eigen::Vector3d parse_axis(const std::string& s) {
  if (s == "x") return Eigen::Vector3d::UnitX();
  if (s == "y") return Eigen::Vector3d::UnitY();
  if (s == "z") return Eigen::Vector3d::UnitZ();
  if (s == "-x") return -Eigen::Vector3d::UnitX();
  if (s == "-y") return -Eigen::Vector3d::UnitY();
  if (s == "-z") return -Eigen::Vector3d::UnitZ();
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
  if (v.size() != 3) throw std::invalid_argument("axis: expected x|y|z or a,b,c");
  Eigen::Vector3d a(v[0], v[1], v[2]);
  if (a.norm() < 1e-12) throw std::invalid_argument("axis: zero vector");
  return a.normalized();
}

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
  return v;
}

json witness_json(const Witness& w) {
  return w.any ? json{{"any", true}}
               : json{{"any", false}, {"u", rotation_to_json(w.u)}};
}

// ---------------------------------------------------------------- compile --

int cmd_compile(const std::string& spec_path, const std::string& method,
                const std::string& group, const std::string& out,
                const std::string& probe, int max_len, Manifest manifest) {
  FunctionSpec fs = function_spec_from_json(load_json_file(spec_path));

  Program program;
  json report;
  if (method == "recursive") {
    SynthReport r = synth_function(fs.spectrum, fs.f);
    if (!realizes(r.program, fs.f)) {
      std::cerr << "compiled program failed the realization check\n";
      return kExitVerification;
    }
    program = r.program;
    report = {{"mode", "realized"},
              {"conditional_steps", r.conditional_steps},
              {"unconditional_steps", step_count(r.program).unconditional},
              {"recursion_depth", r.recursion_depth},
              {"witness", witness_json(r.witness)}};
  } else if (method == "search") {
    FiniteGroup g = build_group(group_name_from_string(group));
    Eigen::Vector3d s0 = parse_axis(probe);
    auto found =
        bfs_search(g, fs.spectrum, fs.f, SearchMode::StateLevel, max_len, s0);
    if (!found) {
      std::cerr << "no program of length <= " << max_len << " found over "
                << group << "\n";
      return kExitNotFound;
    }
    if (!measures(found->program, fs.f, s0)) {
      std::cerr << "search result failed the measurement check\n";
      return kExitVerification;
    }
    program = found->program;
    report = {{"mode", "measured"},
              {"conditional_steps", found->length},
              {"explored", found->explored},
              {"group", group}};
    if (found->outcome_axis)
      report["outcome_axis"] = {found->outcome_axis->x(),
                                found->outcome_axis->y(),
                                found->outcome_axis->z()};
  } else {
    std::cerr << "unknown method " << method << "\n";
    return kExitSpecError;
  }

  json payload{{"manifest", manifest.to_json()},
               {"program", program_to_json(program)},
               {"report", report}};
  emit(payload, out);
  if (!out.empty()) std::cout << round_doubles(report).dump(2) << "\n";
  return 0;
}

// --------------------------------------------------------------- simulate --

int cmd_simulate(const std::string& program_path, const std::string& register_spec,
                 const std::string& probe, long seed, int shots,
                 const std::string& trajectory_path, const std::string& out,
                 Manifest manifest) {
  json pj = load_json_file(program_path);
  Program program =
      program_from_json(pj.contains("program") ? pj.at("program") : pj);

  long dim = 1L << program.spectrum.n_qubits;
  Eigen::VectorXcd reg;
  if (register_spec == "uniform") {
    reg = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt((double)dim));
  } else {
    reg = state_from_json(load_json_file(register_spec));
    manifest.inputs.push_back(register_spec);
  }
  if (reg.size() != dim) {
    std::cerr << "register dimension " << reg.size()
              << " does not match program spectrum (expected " << dim << ")\n";
    return kExitSpecError;
  }
  Eigen::Vector3d axis = parse_axis(probe);

  JointState post = run_program(program, reg, axis);
  auto probs = probe_probabilities(post, axis);

  json payload{{"manifest", manifest.to_json()},
               {"probabilities", {{"plus", probs[0]}, {"minus", probs[1]}}}};

  for (int b = 0; b < 2; ++b) {
    if (probs[b] < 1e-12) continue;
    MeasureOutcome o = probe_collapse(post, axis, b == 0 ? +1 : -1);
    payload["collapsed"][b == 0 ? "plus" : "minus"] =
        state_to_json(o.register_state, program.spectrum.n_qubits);
  }

  if (shots > 0) {
    std::mt19937_64 rng(static_cast<uint64_t>(seed));
    int plus = 0;
    for (int i = 0; i < shots; ++i)
      if (probe_measure(post, axis, rng).sign == +1) ++plus;
    payload["shots"] = {{"count", shots},
                        {"plus", plus},
                        {"minus", shots - plus},
                        {"frequency_plus", static_cast<double>(plus) / shots}};
  }

  if (!trajectory_path.empty()) {
    std::ofstream csv(trajectory_path);
    if (!csv) {
      std::cerr << "cannot write " << trajectory_path << "\n";
      return kExitSpecError;
    }
    csv << "# manifest: " << round_doubles(manifest.to_json()).dump() << "\n";
    csv << "eigenvalue,step,bloch_x,bloch_y,bloch_z\n";
    csv.precision(12);
    for (long j : program.spectrum.distinct()) {
      auto traj = probe_trajectory(program, j, axis);
      for (size_t step = 0; step < traj.size(); ++step) {
        csv << j << "," << step << "," << round_sig(traj[step].x()) << ","
            << round_sig(traj[step].y()) << "," << round_sig(traj[step].z())
            << "\n";
      }
    }
  }

  emit(payload, out);
  return 0;
}

// ----------------------------------------------------------------- search --

BoolFunc parse_target(const std::string& target, const SpectrumSpec& spec) {
  if (target == "parity") return BoolFunc::parity(spec);
  auto split = target.find(':');
  std::string kind = target.substr(0, split);
  std::string args = split == std::string::npos ? "" : target.substr(split + 1);
  if (kind == "indicator") {
    auto v = parse_csv_doubles(args);
    if (v.size() != 2) throw std::invalid_argument("indicator:i,k expected");
    return BoolFunc::indicator(spec, static_cast<long>(v[0]),
                               static_cast<int>(v[1]));
  }
  if (kind == "point")
    return BoolFunc::point(spec, static_cast<long>(std::stol(args)));
  if (kind == "mask") {
    unsigned long mask = std::stoul(args);
    return BoolFunc::from_predicate(
        spec, [&](long j) { return (mask >> j) & 1UL; });
  }
  throw std::invalid_argument("unknown target " + target);
}

int cmd_search(const std::string& group, const std::string& target,
               const std::string& mode, int max_len, long n_values,
               const std::string& probe, const std::string& verify_generation,
               const std::string& out, Manifest manifest) {
  FiniteGroup g = build_group(group_name_from_string(group));

  if (!verify_generation.empty()) {
    auto dots = verify_generation.find("..");
    if (dots == std::string::npos)
      throw std::invalid_argument("--verify-generation expects LO..HI");
    long lo = std::stol(verify_generation.substr(0, dots));
    long hi = std::stol(verify_generation.substr(dots + 2));
    std::vector<long> exps;
    for (long e = lo; e <= hi; ++e) exps.push_back(e);
    GenerationReport rep = verify_generation_pairwise(g, exps);
    json pairs = json::array();
    for (const PairReport& p : rep.pairs)
      pairs.push_back({{"i", p.i},
                       {"j", p.j},
                       {"surjective", p.surjective},
                       {"reached", p.reached}});
    emit(json{{"manifest", manifest.to_json()},
              {"group", group},
              {"exponents", {lo, hi}},
              {"ok", rep.ok},
              {"pairs", pairs}},
         out);
    std::cout << (rep.ok ? "PASS" : "FAIL") << "\n";
    return rep.ok ? 0 : kExitVerification;
  }

  SpectrumSpec spec = SpectrumSpec::consecutive(n_values);
  SearchMode m = mode == "strict" ? SearchMode::Strict : SearchMode::StateLevel;
  Eigen::Vector3d s0 = parse_axis(probe);

  if (target == "period4:all") {
    json table = json::array();
    bool all_found = true;
    for (unsigned long mask4 = 0; mask4 < 16; ++mask4) {
      BoolFunc f = BoolFunc::from_predicate(
          spec, [&](long j) { return (mask4 >> (j % 4)) & 1UL; });
      auto found = bfs_search(g, spec, f, m, max_len, s0);
      json row{{"pattern", mask4}};
      if (found) {
        row["length"] = found->length;
      } else {
        row["length"] = nullptr;
        all_found = false;
      }
      table.push_back(row);
    }
    emit(json{{"manifest", manifest.to_json()},
              {"group", group},
              {"mode", mode},
              {"table", table}},
         out);
    return all_found ? 0 : kExitNotFound;
  }

  BoolFunc f = parse_target(target, spec);
  auto found = bfs_search(g, spec, f, m, max_len, s0);
  if (!found) {
    std::cerr << "no solution within max length " << max_len << "\n";
    return kExitNotFound;
  }
  json payload = search_result_to_json(*found, group, m);
  payload["manifest"] = manifest.to_json();
  payload["target"] = boolfunc_to_json(f);
  emit(payload, out);
  return 0;
}

// --------------------------------------------------------------- schedule --

int cmd_schedule(const std::string& target_coupling, const std::string& basis_path,
                 const std::string& out, Manifest manifest) {
  std::vector<double> target = parse_csv_doubles(target_coupling);
  CouplingBasis basis = basis_from_json(load_json_file(basis_path));

  PulseSchedule sched;
  try {
    sched = solve_schedule(target, basis);
  } catch (const std::runtime_error& e) {
    std::cerr << "degenerate coupling geometry: " << e.what() << "\n";
    return kExitSpecError;
  }
  double err = schedule_to_operator_error(sched, basis);

  json payload = schedule_to_json(sched);
  payload["manifest"] = manifest.to_json();
  payload["operator_error"] = err;
  emit(payload, out);
  if (err > 1e-12) {
    std::cerr << "schedule verification failed: operator error " << err << "\n";
    return kExitVerification;
  }
  return 0;
}

// ----------------------------------------------------------------- report --

int cmd_report(const std::string& suite, const std::string& out,
               Manifest manifest) {
  if (suite == "paper-claims") {
    auto results = run_all_claims();
    bool all = true;
    std::ostringstream md;
    md << "# Verification suite\n\n";
    for (const ClaimResult& r : results) {
      md << (r.passed ? "PASS" : "FAIL") << " " << r.id << ": " << r.name;
      if (!r.passed) md << " — " << r.detail;
      md << "\n";
      all = all && r.passed;
    }
    if (out.empty()) {
      std::cout << md.str();
    } else {
      std::ofstream f(out);
      f << "<!-- manifest: " << manifest.to_json().dump() << " -->\n"
        << md.str();
      std::cout << (all ? "PASS" : "FAIL") << "\n";
    }
    return all ? 0 : kExitVerification;
  }
  if (suite == "costs") {
    std::ostringstream csv;
    csv << "n,fixed_conditional_steps,movable_conditional_steps,"
           "movable_positions\n";
    for (int n : {3, 4, 5}) {
      CostComparison c = two_qubit_gate_cost(n, 0, 1);
      csv << n << "," << c.fixed_conditional_steps << ","
          << c.movable_conditional_steps << "," << c.movable_positions << "\n";
    }
    if (out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream f(out);
      f << "# manifest: " << manifest.to_json().dump() << "\n" << csv.str();
    }
    return 0;
  }
  std::cerr << "unknown suite '" << suite << "' (expected paper-claims or costs)\n";
  return kExitSpecError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probe-qubit control compiler and simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string timestamp;
  app.add_option("--timestamp", timestamp,
                 "Override the manifest timestamp (for reproducible outputs)");

  // compile
  auto* compile = app.add_subcommand("compile", "Compile a function spec");
  std::string spec_path, method = "recursive", group = "D8", out, probe = "x";
  int max_len = 6;
  compile->add_option("spec", spec_path, "Function spec JSON")->required();
  compile->add_option("--method", method)
      ->check(CLI::IsMember({"recursive", "search"}));
  compile->add_option("--group", group);
  compile->add_option("--out", out);
  compile->add_option("--probe", probe);
  compile->add_option("--max-len", max_len);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a program");
  std::string program_path, register_spec = "uniform", sim_probe = "x",
              trajectory, sim_out;
  long seed = 0;
  int shots = 0;
  simulate->add_option("program", program_path)->required();
  simulate->add_option("--register", register_spec);
  simulate->add_option("--probe", sim_probe);
  simulate->add_option("--seed", seed);
  simulate->add_option("--shots", shots);
  simulate->add_option("--trajectory", trajectory);
  simulate->add_option("--out", sim_out);

  // search
  auto* search = app.add_subcommand("search", "Shortest-word search");
  std::string s_group = "D8", target, s_mode = "state", s_probe = "x",
              verify_gen, s_out;
  int s_max_len = 4;
  long n_values = 8;
  search->add_option("--group", s_group);
  search->add_option("--target", target);
  search->add_option("--mode", s_mode)->check(CLI::IsMember({"strict", "state"}));
  search->add_option("--max-len", s_max_len);
  search->add_option("--nvalues", n_values);
  search->add_option("--probe", s_probe);
  search->add_option("--verify-generation", verify_gen);
  search->add_option("--out", s_out);

  // schedule
  auto* schedule = app.add_subcommand("schedule", "Coupling-vector schedule");
  std::string target_coupling, basis_path, sch_out;
  schedule->add_option("--target-coupling", target_coupling)->required();
  schedule->add_option("--basis", basis_path)->required();
  schedule->add_option("--out", sch_out);

  // report
  auto* report = app.add_subcommand("report", "Verification reports");
  std::string suite, rep_out;
  report->add_option("--suite", suite)->required();
  report->add_option("--out", rep_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitSpecError;
  }

  Manifest manifest;
  manifest.timestamp = timestamp.empty() ? utc_now() : timestamp;
  manifest.seed = seed;
  for (int i = 0; i < argc; ++i) {
    // Output destinations are not part of the computation's identity; skip
    // them so reruns writing to different paths stay byte-identical.
    std::string arg = argv[i];
    if (arg == "--out" || arg == "-o" || arg == "--trajectory") {
      if (i + 1 < argc) ++i;
      continue;
    }
    manifest.command += std::string(manifest.command.empty() ? "" : " ") + arg;
  }

  try {
    if (compile->parsed()) {
      manifest.inputs = {spec_path};
      return cmd_compile(spec_path, method, group, out, probe, max_len,
                         manifest);
    }
    if (simulate->parsed()) {
      manifest.inputs = {program_path};
      return cmd_simulate(program_path, register_spec, sim_probe, seed, shots,
                          trajectory, sim_out, manifest);
    }
    if (search->parsed())
      return cmd_search(s_group, target, s_mode, s_max_len, n_values, s_probe,
                        verify_gen, s_out, manifest);
    if (schedule->parsed()) {
      manifest.inputs = {basis_path};
      return cmd_schedule(target_coupling, basis_path, sch_out, manifest);
    }
    if (report->parsed()) return cmd_report(suite, rep_out, manifest);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpecError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpecError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitSpecError;
}
