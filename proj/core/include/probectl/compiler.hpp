#pragma once

#include <functional>
#include <string>
#include <vector>

#include "probectl/control_ir.hpp"
#include "probectl/dynamics.hpp"
#include "probectl/synthesis.hpp"

namespace probectl {

// A measurement-sandwiched probe-phase protocol implementing a register
// unitary diagonal in the chosen interaction basis: measure f, rotate the
// probe about z by the compiled phase, measure f again (measurements are
// their own inverse).
struct GateProtocol {
  Program measurement;  // witness conjugated onto the x axis
  double probe_phase = 0.0;
  char interaction_axis = 'z';
  BoolFunc f;
};

// Simulated register unitary of a protocol, expressed in the interaction-axis
// frame. If probe_residual is given it receives the worst-case norm left on
// the probe |1> branch (probe disentanglement check).
Eigen::MatrixXcd simulate_protocol(const GateProtocol& protocol,
                                   double* probe_residual = nullptr);

// Compile the diagonal unitary with two eigenphases split by f, hitting the
// requested relative phase (f=1 class relative to f=0 class). The achieved
// phase as a function of the probe phase is determined empirically from two
// simulations and inverted, so SU(2) double-cover signs never leak into the
// result. Throws std::runtime_error if the probe fails to disentangle.
GateProtocol compile_diagonal(const BoolFunc& f, double relative_phase,
                              const SpectrumSpec& spec);

// Controlled phase on >= 2 target qubits: the all-ones indicator on their
// joint value, delegated to compile_diagonal. relative_phase = pi gives CZ up
// to global phase.
GateProtocol compile_controlled_phase(const std::vector<int>& targets,
                                      double relative_phase,
                                      const SpectrumSpec& spec);

// Single-qubit rotation exp(-i theta sigma_alpha^{(j)} / 2) up to global
// phase, via the bit-j value function and interaction-axis selection.
GateProtocol compile_local_rotation(int qubit, char axis, double theta,
                                    const SpectrumSpec& spec);

// BoolFunc on the (nondegenerate) eigenvalue labels from a predicate over
// register basis-state bits.
BoolFunc boolfunc_from_bits(const SpectrumSpec& spec,
                            const std::function<bool(long bits)>& pred);

struct RescaleResult {
  std::vector<long long> integers;
  long long time_scale = 1;
};

// Continued-fraction rational approximation of each eigenvalue within tol;
// time_scale is the lcm of the denominators. Throws std::runtime_error if tol
// is unreachable within the denominator bound.
RescaleResult rescale_spectrum(const std::vector<double>& raw, double tol,
                               long long max_denominator = 1000000);

// c_j = d_j^{-p} from nucleus-electron distances (default dipolar-like p=3).
std::vector<double> coupling_from_geometry(
    const std::vector<Eigen::Vector3d>& nuclei,
    const Eigen::Vector3d& electron, double law_exponent = 3.0);

// Row i = coupling vector C_i at electron position P_i.
struct CouplingBasis {
  std::vector<std::string> position_labels;
  Eigen::MatrixXd vectors;
};

struct ScheduleSegment {
  std::string position;
  double duration = 0.0;  // >= 0
  bool sign_flip = false;  // i*sigma_x conjugation around the segment
};

struct PulseSchedule {
  std::vector<ScheduleSegment> segments;
  std::vector<double> target_coupling;
};

// Solve C = sum_j d_j C_j; segment durations |d_j|, sign flips for d_j < 0,
// zero coefficients omitted. Throws std::runtime_error on an
// ill-conditioned basis (condition number above 1e10).
PulseSchedule solve_schedule(const std::vector<double>& target,
                             const CouplingBasis& basis);

// Operator-norm deviation between the scheduled unit-time conditional
// evolution and the direct exp(-i sigma_z x S_z(C_target) / 2); exact up to
// machine precision because all segments commute.
double schedule_to_operator_error(const PulseSchedule& schedule,
                                  const CouplingBasis& basis);

struct CostComparison {
  int n_qubits = 0;
  long fixed_conditional_steps = 0;
  long movable_conditional_steps = 0;
  int movable_positions = 0;
};

// Two-qubit controlled-phase cost: movable-electron route (constant in n)
// versus the fixed dyadic-coupling route (grows with 2^{k0}).
CostComparison two_qubit_gate_cost(int n, int qubit_a, int qubit_b);

}  // namespace probectl
