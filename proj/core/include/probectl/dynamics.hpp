#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "probectl/control_ir.hpp"

namespace probectl {

using Complex = std::complex<double>;

// Register qubit count caps: dense exponentials up to kDenseCap register
// qubits, diagonal/Trotter paths up to kRegisterCap.
inline constexpr int kDenseCap = 6;
inline constexpr int kRegisterCap = 12;

// S_alpha = sum_j c_j sigma_alpha^{(j)} on the register. Qubit j maps to bit
// j of the basis index (bit value 1 = spin down); sigma_z|0> = +|0>.
struct RegisterOperator {
  char axis = 'z';
  std::vector<double> couplings;
  int n_qubits = 0;
  bool is_diagonal = false;
  Eigen::VectorXd diagonal;  // axis z
  Eigen::MatrixXcd matrix;   // axes x, y
};

RegisterOperator register_operator(char axis,
                                   const std::vector<double>& couplings);

// Affine map of the raw S_z spectrum onto non-negative integers:
// raw = offset + scale * integer. The offset corresponds to a probe-local
// sigma_z x 1 term and is recorded as probe_compensation (rotation rate
// about z), never silently dropped.
struct NormalizedSpectrum {
  double scale = 1.0;
  double offset = 0.0;
  std::vector<long> eigenvalues;  // per basis state, index order
  double probe_compensation = 0.0;
  int n_qubits = 0;
  std::vector<double> couplings;

  SpectrumSpec to_spectrum_spec() const;
};

NormalizedSpectrum normalize_spectrum(const RegisterOperator& zop,
                                      double tol = 1e-9);

// Probe x register state vector, probe most significant qubit.
struct JointState {
  Eigen::VectorXcd amplitudes;

  int n_register() const;
  double norm() const { return amplitudes.norm(); }
  // |probe(bloch)> x |register>
  static JointState product(const Eigen::Vector3d& probe_bloch,
                            const Eigen::VectorXcd& register_state);
};

// SU(2) lift with non-negative scalar part.
Eigen::Matrix2cd su2_lift(const Rotation& r);
// Shortest-arc rotation mapping one unit vector onto another (deterministic
// orthogonal axis in the antipodal case).
Rotation rotation_between(const Eigen::Vector3d& from,
                          const Eigen::Vector3d& to);
// Probe Bloch vector -> SU(2) spinor.
Eigen::Vector2cd bloch_to_spinor(const Eigen::Vector3d& a);

JointState apply_probe(const JointState& s, const Eigen::Matrix2cd& u);

// Diagonal-phase conditional evolution: integer eigenvalue j acts as the
// Bloch rotation Rz(j*t) on the probe. (The factor 2 between exp(-i j t
// sigma_z) and the Bloch angle is absorbed into the coupling normalization;
// the stated t = pi parity recipe then holds literally.)
JointState evolve_conditional(const JointState& s,
                              const NormalizedSpectrum& spec, double t);

// Full Heisenberg-type evolution under H = 1/2 sum_alpha sigma_alpha x
// S_alpha: dense exponential for n <= kDenseCap, first-order Trotter with
// `steps` slices above that.
JointState evolve_full(const JointState& s, const std::vector<double>& couplings,
                       double t, int steps = 64);

// Per-axis coupling vectors, for experiments where transverse terms are
// switched off independently.
struct AxisCouplings {
  std::vector<double> cx, cy, cz;
  static AxisCouplings isotropic(const std::vector<double>& c) {
    return {c, c, c};
  }
};

Eigen::MatrixXcd build_hamiltonian(const AxisCouplings& c);

struct DecoupleResult {
  JointState state;
  double leakage = 0.0;  // infidelity vs the ideal kept-axis evolution
};

// Bang-bang decoupling: m free-evolution intervals alternated with
// instantaneous probe i*sigma_alpha pulses; leakage -> 0 as m -> infinity.
DecoupleResult decouple_bangbang(const JointState& s, const AxisCouplings& c,
                                 char keep_axis, double total_t, int m);

// Strong-field decoupling: evolve under H + B/2 sigma_z x 1 and compare with
// the pure sigma_z x S_z prediction (including the B precession).
DecoupleResult decouple_strong_field(const JointState& s,
                                     const AxisCouplings& c, double B,
                                     double total_t);

// Execute a program: conditional words as conjugated conditional evolutions,
// unconditional words as probe-local SU(2) lifts. The per-eigenvalue probe
// Bloch action equals eval_program exactly; SU(2) phases are tracked.
JointState run_program(const Program& p, const Eigen::VectorXcd& register_state,
                       const Eigen::Vector3d& probe_init);

// Probe Bloch action of the program on a register eigenstate, recorded after
// each word (step 0 is the initial state).
std::vector<Eigen::Vector3d> probe_trajectory(const Program& p, long eigenvalue,
                                              const Eigen::Vector3d& probe_init);

struct MeasureOutcome {
  int sign = +1;  // +1 along +a, -1 along -a
  double probability = 0.0;
  Eigen::VectorXcd register_state;  // collapsed, normalized
  JointState post;                  // collapsed joint state
};

// Born probabilities for probe projectors onto +-a.
std::array<double, 2> probe_probabilities(const JointState& s,
                                          const Eigen::Vector3d& axis);

// Projective probe measurement with register collapse; sampling is
// deterministic given the generator state. Throws std::runtime_error when a
// zero-probability branch is forced.
MeasureOutcome probe_measure(const JointState& s, const Eigen::Vector3d& axis,
                             std::mt19937_64& rng);
MeasureOutcome probe_collapse(const JointState& s, const Eigen::Vector3d& axis,
                              int sign);

// Register eigenstate basis vector with the given integer eigenvalue (first
// basis index in index order). Throws if absent.
Eigen::VectorXcd register_eigenstate(const NormalizedSpectrum& spec, long j);

}  // namespace probectl
