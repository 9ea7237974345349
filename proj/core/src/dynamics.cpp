#include "probectl/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace probectl {

namespace {

const Complex kI(0.0, 1.0);

void check_axis(char axis) {
  if (axis != 'x' && axis != 'y' && axis != 'z')
    throw std::invalid_argument("axis must be x, y or z");
}

}  // namespace

Rotation rotation_between(const Eigen::Vector3d& from,
                          const Eigen::Vector3d& to) {
  Eigen::Vector3d cr = from.cross(to);
  double s = cr.norm();
  double c = std::clamp(from.dot(to), -1.0, 1.0);
  if (s < 1e-12) {
    if (c > 0.0) return Rotation();
    // Antipodal: pick a deterministic orthogonal axis.
    Eigen::Vector3d any = std::abs(from.x()) < 0.9
                              ? Eigen::Vector3d::UnitX()
                              : Eigen::Vector3d::UnitY();
    return Rotation::from_axis_angle(from.cross(any).normalized(), M_PI);
  }
  return Rotation::from_axis_angle(cr / s, std::atan2(s, c));
}

namespace {

Eigen::MatrixXcd pauli(char axis) {
  Eigen::MatrixXcd m(2, 2);
  switch (axis) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -kI, kI, 0; break;
    default:  m << 1, 0, 0, -1; break;
  }
  return m;
}

Eigen::MatrixXcd dense_register_operator(char axis,
                                         const std::vector<double>& c) {
  int n = static_cast<int>(c.size());
  long dim = 1L << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd p = pauli(axis);
  for (int q = 0; q < n; ++q) {
    for (long i = 0; i < dim; ++i) {
      int b = (i >> q) & 1;
      for (int bp = 0; bp < 2; ++bp) {
        Complex entry = p(bp, b);
        if (entry == Complex(0.0, 0.0)) continue;
        long ip = (i & ~(1L << q)) | (static_cast<long>(bp) << q);
        m(ip, i) += c[q] * entry;
      }
    }
  }
  return m;
}

JointState exact_evolve(const JointState& s, const Eigen::MatrixXcd& h,
                        double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases =
      (es.eigenvalues().array().cast<Complex>() * (-kI * t)).exp().matrix();
  JointState out;
  out.amplitudes = es.eigenvectors() *
                   (phases.asDiagonal() *
                    (es.eigenvectors().adjoint() * s.amplitudes));
  return out;
}

double state_infidelity(const JointState& a, const JointState& b) {
  Complex ov = a.amplitudes.dot(b.amplitudes);
  return 1.0 - std::min(1.0, std::abs(ov));
}

}  // namespace

RegisterOperator register_operator(char axis,
                                   const std::vector<double>& couplings) {
  check_axis(axis);
  int n = static_cast<int>(couplings.size());
  if (n < 1 || n > kRegisterCap)
    throw std::invalid_argument("register_operator: qubit cap exceeded");
  RegisterOperator op;
  op.axis = axis;
  op.couplings = couplings;
  op.n_qubits = n;
  long dim = 1L << n;
  if (axis == 'z') {
    op.is_diagonal = true;
    op.diagonal.resize(dim);
    for (long i = 0; i < dim; ++i) {
      double v = 0.0;
      for (int q = 0; q < n; ++q)
        v += couplings[q] * ((i >> q) & 1 ? -1.0 : 1.0);
      op.diagonal(i) = v;
    }
  } else {
    op.matrix = dense_register_operator(axis, couplings);
  }
  return op;
}

SpectrumSpec NormalizedSpectrum::to_spectrum_spec() const {
  SpectrumSpec s;
  s.n_qubits = n_qubits;
  s.couplings = couplings;
  s.eigenvalues = eigenvalues;
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

NormalizedSpectrum normalize_spectrum(const RegisterOperator& zop, double tol) {
  if (!zop.is_diagonal)
    throw std::invalid_argument("normalize_spectrum: needs a diagonal operator");
  std::vector<double> raw(zop.diagonal.data(),
                          zop.diagonal.data() + zop.diagonal.size());
  LatticeFit fit = integer_lattice_fit(raw, tol);
  NormalizedSpectrum ns;
  ns.scale = fit.gap;
  ns.offset = fit.offset;
  ns.eigenvalues = fit.integers;
  ns.probe_compensation = fit.offset;
  ns.n_qubits = zop.n_qubits;
  ns.couplings = zop.couplings;
  return ns;
}

int JointState::n_register() const {
  long dim = amplitudes.size();
  int n = -1;
  while (dim > 1) {
    dim >>= 1;
    ++n;
  }
  return n;
}

Eigen::Matrix2cd su2_lift(const Rotation& r) {
  Eigen::Matrix2cd u;
  u << Complex(r.w(), -r.z()), Complex(-r.y(), -r.x()),
       Complex(r.y(), -r.x()), Complex(r.w(), r.z());
  if (r.w() < 0.0) u = -u;
  return u;
}

Eigen::Vector2cd bloch_to_spinor(const Eigen::Vector3d& a) {
  if (std::abs(a.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("bloch_to_spinor: not a unit vector");
  double theta = std::acos(std::clamp(a.z(), -1.0, 1.0));
  double phi = std::atan2(a.y(), a.x());
  Eigen::Vector2cd s;
  s << std::cos(theta / 2.0),
      std::exp(kI * phi) * std::sin(theta / 2.0);
  return s;
}

JointState JointState::product(const Eigen::Vector3d& probe_bloch,
                               const Eigen::VectorXcd& register_state) {
  Eigen::Vector2cd p = bloch_to_spinor(probe_bloch);
  long dim = register_state.size();
  JointState s;
  s.amplitudes.resize(2 * dim);
  s.amplitudes.head(dim) = p(0) * register_state;
  s.amplitudes.tail(dim) = p(1) * register_state;
  return s;
}

JointState apply_probe(const JointState& s, const Eigen::Matrix2cd& u) {
  long dim = s.amplitudes.size() / 2;
  JointState out;
  out.amplitudes.resize(2 * dim);
  out.amplitudes.head(dim) =
      u(0, 0) * s.amplitudes.head(dim) + u(0, 1) * s.amplitudes.tail(dim);
  out.amplitudes.tail(dim) =
      u(1, 0) * s.amplitudes.head(dim) + u(1, 1) * s.amplitudes.tail(dim);
  return out;
}

JointState evolve_conditional(const JointState& s,
                              const NormalizedSpectrum& spec, double t) {
  long dim = 1L << spec.n_qubits;
  if (s.amplitudes.size() != 2 * dim)
    throw std::invalid_argument("evolve_conditional: dimension mismatch");
  JointState out = s;
  for (long i = 0; i < dim; ++i) {
    double half = 0.5 * t * static_cast<double>(spec.eigenvalues[i]);
    out.amplitudes(i) *= std::exp(-kI * half);
    out.amplitudes(dim + i) *= std::exp(kI * half);
  }
  return out;
}

Eigen::MatrixXcd build_hamiltonian(const AxisCouplings& c) {
  size_t n = c.cz.size();
  if (c.cx.size() != n || c.cy.size() != n)
    throw std::invalid_argument("build_hamiltonian: coupling size mismatch");
  long dim = 1L << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
  const char axes[3] = {'x', 'y', 'z'};
  const std::vector<double>* cs[3] = {&c.cx, &c.cy, &c.cz};
  for (int a = 0; a < 3; ++a) {
    Eigen::MatrixXcd sa = dense_register_operator(axes[a], *cs[a]);
    Eigen::MatrixXcd pa = pauli(axes[a]);
    for (int p = 0; p < 2; ++p) {
      for (int pp = 0; pp < 2; ++pp) {
        if (pa(pp, p) == Complex(0.0, 0.0)) continue;
        h.block(pp * dim, p * dim, dim, dim) += 0.5 * pa(pp, p) * sa;
      }
    }
  }
  return h;
}

JointState evolve_full(const JointState& s, const std::vector<double>& couplings,
                       double t, int steps) {
  int n = static_cast<int>(couplings.size());
  if (n > kRegisterCap)
    throw std::invalid_argument("evolve_full: qubit cap exceeded");
  if (s.amplitudes.size() != 2L << n)
    throw std::invalid_argument("evolve_full: dimension mismatch");
  if (n <= kDenseCap) {
    return exact_evolve(s, build_hamiltonian(AxisCouplings::isotropic(couplings)),
                        t);
  }
  // First-order Trotter; per-axis terms commute internally and factor into
  // probe-qubit_j two-body exponentials.
  if (steps < 1) throw std::invalid_argument("evolve_full: steps must be >= 1");
  long dim = 1L << n;
  JointState out = s;
  double tau = t / steps;
  for (int step = 0; step < steps; ++step) {
    for (char axis : {'x', 'y', 'z'}) {
      for (int q = 0; q < n; ++q) {
        double theta = 0.5 * couplings[q] * tau;
        double ct = std::cos(theta), st = std::sin(theta);
        if (axis == 'z') {
          for (long i = 0; i < 2 * dim; ++i) {
            int p = i >= dim ? 1 : 0;
            int b = (i >> q) & 1;
            double sign = (p == b) ? 1.0 : -1.0;
            out.amplitudes(i) *= Complex(ct, -sign * st);
          }
        } else {
          Eigen::VectorXcd next(2 * dim);
          long flip = dim | (1L << q);  // probe bit and register bit q
          for (long i = 0; i < 2 * dim; ++i) {
            long ip = i ^ flip;
            double sgn = 1.0;
            if (axis == 'y') {
              int p = ip >= dim ? 1 : 0;
              int b = (ip >> q) & 1;
              sgn = (p == b) ? -1.0 : 1.0;
            }
            next(i) = ct * out.amplitudes(i) -
                      kI * st * sgn * out.amplitudes(ip);
          }
          out.amplitudes = next;
        }
      }
    }
  }
  return out;
}

DecoupleResult decouple_bangbang(const JointState& s, const AxisCouplings& c,
                                 char keep_axis, double total_t, int m) {
  check_axis(keep_axis);
  if (m < 1) throw std::invalid_argument("decouple_bangbang: m must be >= 1");

  // Conjugating the probe by sigma_alpha flips the sign of the other two
  // probe Paulis, so the toggled slice evolves under the reflected H.
  AxisCouplings flipped = c;
  auto negate = [](std::vector<double>& v) {
    for (double& x : v) x = -x;
  };
  if (keep_axis != 'x') negate(flipped.cx);
  if (keep_axis != 'y') negate(flipped.cy);
  if (keep_axis != 'z') negate(flipped.cz);

  Eigen::MatrixXcd h = build_hamiltonian(c);
  Eigen::MatrixXcd h_tog = build_hamiltonian(flipped);
  double tau = total_t / m;
  JointState out = s;
  for (int k = 0; k < m; ++k) {
    out = exact_evolve(out, k % 2 == 1 ? h_tog : h, tau);
  }

  AxisCouplings kept{{}, {}, {}};
  std::vector<double> zeros(c.cz.size(), 0.0);
  kept.cx = keep_axis == 'x' ? c.cx : zeros;
  kept.cy = keep_axis == 'y' ? c.cy : zeros;
  kept.cz = keep_axis == 'z' ? c.cz : zeros;
  JointState ideal = exact_evolve(s, build_hamiltonian(kept), total_t);
  return {out, state_infidelity(ideal, out)};
}

DecoupleResult decouple_strong_field(const JointState& s,
                                     const AxisCouplings& c, double B,
                                     double total_t) {
  if (B < 0.0)
    throw std::invalid_argument("decouple_strong_field: B must be >= 0");
  long dim = s.amplitudes.size() / 2;
  Eigen::MatrixXcd h = build_hamiltonian(c);
  for (long i = 0; i < dim; ++i) {
    h(i, i) += 0.5 * B;
    h(dim + i, dim + i) -= 0.5 * B;
  }
  JointState out = exact_evolve(s, h, total_t);

  std::vector<double> zeros(c.cz.size(), 0.0);
  Eigen::MatrixXcd h_ideal =
      build_hamiltonian(AxisCouplings{zeros, zeros, c.cz});
  for (long i = 0; i < dim; ++i) {
    h_ideal(i, i) += 0.5 * B;
    h_ideal(dim + i, dim + i) -= 0.5 * B;
  }
  JointState ideal = exact_evolve(s, h_ideal, total_t);
  return {out, state_infidelity(ideal, out)};
}

JointState run_program(const Program& p, const Eigen::VectorXcd& register_state,
                       const Eigen::Vector3d& probe_init) {
  auto zop = register_operator('z', p.spectrum.couplings);
  NormalizedSpectrum ns = normalize_spectrum(zop);
  long dim = 1L << ns.n_qubits;
  if (register_state.size() != dim)
    throw std::invalid_argument("run_program: register dimension mismatch");
  {
    SpectrumSpec derived = ns.to_spectrum_spec();
    if (!(derived == p.spectrum))
      throw std::invalid_argument(
          "run_program: program spectrum inconsistent with couplings");
  }

  JointState s = JointState::product(probe_init, register_state);
  for (const ControlWord& w : p.words) {
    if (w.kind == WordKind::Unconditional) {
      s = apply_probe(s, su2_lift(w.base));
      continue;
    }
    AxisAngle aa = w.base.to_axis_angle();
    Rotation frame = rotation_between(Eigen::Vector3d::UnitZ(), aa.axis);
    Eigen::Matrix2cd f = su2_lift(frame);
    s = apply_probe(s, f.adjoint());
    s = evolve_conditional(s, ns, aa.angle);
    s = apply_probe(s, f);
  }
  return s;
}

std::vector<Eigen::Vector3d> probe_trajectory(
    const Program& p, long eigenvalue, const Eigen::Vector3d& probe_init) {
  std::vector<Eigen::Vector3d> traj{probe_init};
  Rotation acc;
  for (const ControlWord& w : p.words) {
    acc = compose(eval_word(w, eigenvalue), acc);
    traj.push_back(acc.apply(probe_init));
  }
  return traj;
}

std::array<double, 2> probe_probabilities(const JointState& s,
                                          const Eigen::Vector3d& axis) {
  long dim = s.amplitudes.size() / 2;
  Eigen::Vector2cd up = bloch_to_spinor(axis.normalized());
  double p_plus = 0.0;
  for (long i = 0; i < dim; ++i) {
    Complex amp = std::conj(up(0)) * s.amplitudes(i) +
                  std::conj(up(1)) * s.amplitudes(dim + i);
    p_plus += std::norm(amp);
  }
  double total = s.amplitudes.squaredNorm();
  return {p_plus, total - p_plus};
}

MeasureOutcome probe_collapse(const JointState& s, const Eigen::Vector3d& axis,
                              int sign) {
  long dim = s.amplitudes.size() / 2;
  Eigen::Vector3d a = axis.normalized() * (sign >= 0 ? 1.0 : -1.0);
  Eigen::Vector2cd up = bloch_to_spinor(a);
  Eigen::VectorXcd reg(dim);
  for (long i = 0; i < dim; ++i) {
    reg(i) = std::conj(up(0)) * s.amplitudes(i) +
             std::conj(up(1)) * s.amplitudes(dim + i);
  }
  double prob = reg.squaredNorm();
  if (prob < 1e-15)
    throw std::runtime_error("probe_collapse: zero-probability branch");
  MeasureOutcome out;
  out.sign = sign >= 0 ? +1 : -1;
  out.probability = prob;
  out.register_state = reg / std::sqrt(prob);
  out.post.amplitudes.resize(2 * dim);
  out.post.amplitudes.head(dim) = up(0) * out.register_state;
  out.post.amplitudes.tail(dim) = up(1) * out.register_state;
  return out;
}

MeasureOutcome probe_measure(const JointState& s, const Eigen::Vector3d& axis,
                             std::mt19937_64& rng) {
  auto probs = probe_probabilities(s, axis);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  int sign = dist(rng) < probs[0] ? +1 : -1;
  return probe_collapse(s, axis, sign);
}

Eigen::VectorXcd register_eigenstate(const NormalizedSpectrum& spec, long j) {
  long dim = 1L << spec.n_qubits;
  for (long i = 0; i < dim; ++i) {
    if (spec.eigenvalues[i] == j) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
      v(i) = 1.0;
      return v;
    }
  }
  throw std::out_of_range("register_eigenstate: eigenvalue not present");
}

}  // namespace probectl
