#include "probectl/control_ir.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace probectl {

std::vector<long> SpectrumSpec::distinct() const {
  std::vector<long> out = eigenvalues;
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool SpectrumSpec::contains(long j) const {
  return std::binary_search(eigenvalues.begin(), eigenvalues.end(), j);
}

SpectrumSpec SpectrumSpec::consecutive(long n_values) {
  if (n_values < 1) throw std::invalid_argument("spectrum: empty");
  SpectrumSpec s;
  s.n_qubits = 0;
  while ((1L << s.n_qubits) < n_values) ++s.n_qubits;
  for (long j = 0; j < n_values; ++j) s.eigenvalues.push_back(j);
  for (int q = 0; q < s.n_qubits; ++q)
    s.couplings.push_back(static_cast<double>(1L << q));
  return s;
}

SpectrumSpec SpectrumSpec::from_couplings(const std::vector<double>& c) {
  SpectrumSpec s;
  s.n_qubits = static_cast<int>(c.size());
  s.couplings = c;
  long dim = 1L << s.n_qubits;
  std::vector<double> raw(dim);
  for (long i = 0; i < dim; ++i) {
    double v = 0.0;
    for (int q = 0; q < s.n_qubits; ++q)
      v += c[q] * ((i >> q) & 1 ? -1.0 : 1.0);
    raw[i] = v;
  }
  LatticeFit fit = integer_lattice_fit(raw);
  s.eigenvalues = fit.integers;
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

LatticeFit integer_lattice_fit(const std::vector<double>& values, double tol) {
  if (values.empty())
    throw std::invalid_argument("integer_lattice_fit: empty input");
  LatticeFit fit;
  fit.offset = *std::min_element(values.begin(), values.end());

  // Real-valued gcd of the offsets from the minimum.
  auto real_gcd = [tol](double a, double b) {
    while (b > tol) {
      double t = std::fmod(a, b);
      if (b - t < tol) t = 0.0;  // snap float noise at the wrap-around
      a = b;
      b = t;
    }
    return a;
  };
  double g = 0.0;
  for (double v : values) {
    double d = v - fit.offset;
    if (d <= tol) continue;
    g = g <= tol ? d : real_gcd(std::max(g, d), std::min(g, d));
  }
  if (g <= tol) g = 1.0;
  fit.gap = g;
  for (double v : values) {
    double q = (v - fit.offset) / g;
    long n = std::lround(q);
    if (std::abs(q - n) > 1e-6)
      throw std::invalid_argument(
          "integer_lattice_fit: values not commensurate; rescale first");
    fit.integers.push_back(n);
  }
  return fit;
}

int BoolFunc::operator()(long j) const {
  auto it = table.find(j);
  if (it == table.end())
    throw std::out_of_range("BoolFunc: value outside domain");
  return it->second;
}

bool BoolFunc::is_constant(int value) const {
  return std::all_of(table.begin(), table.end(),
                     [&](const auto& kv) { return kv.second == value; });
}

BoolFunc BoolFunc::constant(const SpectrumSpec& spec, int value) {
  return from_predicate(spec, [&](long) { return value != 0; });
}

BoolFunc BoolFunc::parity(const SpectrumSpec& spec) {
  return from_predicate(spec, [](long j) { return (j & 1L) != 0; });
}

BoolFunc BoolFunc::indicator(const SpectrumSpec& spec, long i, int k) {
  long m = 1L << k;
  return from_predicate(spec,
                        [&](long j) { return ((j - i) % m + m) % m == 0; });
}

BoolFunc BoolFunc::point(const SpectrumSpec& spec, long i) {
  return from_predicate(spec, [&](long j) { return j == i; });
}

BoolFunc BoolFunc::xored(const BoolFunc& other) const {
  if (table.size() != other.table.size())
    throw std::invalid_argument("BoolFunc: domain mismatch");
  BoolFunc out;
  for (const auto& [j, v] : table) out.table[j] = v ^ other(j);
  return out;
}

BoolFunc BoolFunc::anded(const BoolFunc& other) const {
  if (table.size() != other.table.size())
    throw std::invalid_argument("BoolFunc: domain mismatch");
  BoolFunc out;
  for (const auto& [j, v] : table) out.table[j] = v & other(j);
  return out;
}

Rotation eval_word(const ControlWord& w, long j) {
  return w.kind == WordKind::Unconditional ? w.base : power(w.base, j);
}

Rotation eval_program(const Program& p, long j) {
  if (!p.spectrum.contains(j))
    throw std::out_of_range("eval_program: eigenvalue not in spectrum");
  Rotation acc;
  for (const ControlWord& w : p.words) acc = compose(eval_word(w, j), acc);
  return acc;
}

Program concat(const Program& p1, const Program& p2) {
  if (!(p1.spectrum == p2.spectrum))
    throw std::invalid_argument("concat: spectrum mismatch");
  Program out = p1;
  out.words.insert(out.words.end(), p2.words.begin(), p2.words.end());
  return out;
}

Program conjugate_program(const Program& p, const Rotation& t) {
  Program out = p;
  Rotation ti = t.inverse();
  for (ControlWord& w : out.words) w.base = compose(t, w.base, ti);
  return out;
}

std::optional<Witness> realizes(const Program& p, const BoolFunc& f,
                                double tol) {
  std::vector<long> js = p.spectrum.distinct();
  for (long j : js) f(j);  // domain check up front

  // Witness taken from the first eigenvalue with f(j)=1.
  std::optional<Rotation> u;
  for (long j : js) {
    if (f(j) == 1) {
      Rotation cand = eval_program(p, j);
      if (!is_order_two(cand, tol)) return std::nullopt;
      u = cand;
      break;
    }
  }
  for (long j : js) {
    Rotation got = eval_program(p, j);
    Rotation want = f(j) == 1 ? *u : Rotation();
    if (!approx_equal(got, want, tol)) return std::nullopt;
  }
  if (!u) return Witness{true, Rotation::about_x(M_PI)};
  return Witness{false, *u};
}

std::optional<Eigen::Vector3d> measures(const Program& p, const BoolFunc& f,
                                        const Eigen::Vector3d& s0, double tol) {
  if (std::abs(s0.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("measures: s0 must be a unit vector");
  std::vector<long> js = p.spectrum.distinct();
  std::optional<Eigen::Vector3d> a;
  for (long j : js) {
    Eigen::Vector3d pj = eval_program(p, j).apply(s0);
    Eigen::Vector3d target = f(j) == 1 ? Eigen::Vector3d(-pj) : pj;
    if (!a) {
      a = f(j) == 1 ? Eigen::Vector3d(-pj) : pj;
      continue;
    }
    // Chord distance approximates the angle to full precision near zero,
    // where acos of the dot product cannot resolve below ~1e-8.
    if ((*a - target).norm() > tol) return std::nullopt;
  }
  return a;
}

StepCount step_count(const Program& p) {
  StepCount c;
  for (const ControlWord& w : p.words) {
    if (w.kind == WordKind::Conditional)
      ++c.conditional;
    else
      ++c.unconditional;
  }
  return c;
}

}  // namespace probectl
