#include "probectl/synthesis.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace probectl {

namespace {

// Witness axis alternates between two fixed orthogonal axes: x for odd
// recursion levels, z for even ones.
Eigen::Vector3d level_axis(int level) {
  return level % 2 == 1 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitZ();
}

Witness checked_witness(const Program& p, const BoolFunc& f,
                        const char* where) {
  auto w = realizes(p, f);
  if (!w) throw std::logic_error(std::string(where) + ": realizes check failed");
  return *w;
}

}  // namespace

Rotation align_witness(const Rotation& src, const Rotation& dst) {
  Eigen::Vector3d a = src.axis();
  Eigen::Vector3d b = dst.axis();
  if (a.dot(b) < 0.0) a = -a;  // 180-degree rotations have unsigned axes
  Eigen::Vector3d cr = a.cross(b);
  double s = cr.norm();
  double c = std::clamp(a.dot(b), -1.0, 1.0);
  if (s < 1e-12) return Rotation();
  return Rotation::from_axis_angle(cr / s, std::atan2(s, c));
}

SynthReport synth_parity(const SpectrumSpec& spec) {
  SynthReport r;
  r.program.spectrum = spec;
  r.program.words.push_back(
      {WordKind::Conditional, Rotation::about_x(M_PI)});
  r.target = BoolFunc::parity(spec);
  r.witness = checked_witness(r.program, r.target, "synth_parity");
  r.conditional_steps = 1;
  r.recursion_depth = 0;
  return r;
}

SynthReport synth_indicator(const SpectrumSpec& spec,
                            const IndicatorSpec& ind) {
  if (ind.k < 1 || ind.k > 20)
    throw std::invalid_argument("synth_indicator: k out of range");
  if (ind.i < 0 || ind.i >= (1L << ind.k))
    throw std::invalid_argument("synth_indicator: i out of range");

  // Recursive construction; each level is validated by a realizes check.
  std::function<std::vector<ControlWord>(long, int)> build =
      [&](long i, int k) -> std::vector<ControlWord> {
    std::vector<ControlWord> words;
    if (k == 1) {
      Rotation flip = Rotation::from_axis_angle(level_axis(1), M_PI);
      words.push_back({WordKind::Conditional, flip});
      if (i % 2 == 0) words.push_back({WordKind::Unconditional, flip});
    } else {
      std::vector<ControlWord> sub = build(i % (1L << (k - 1)), k - 1);
      double step = 2.0 * M_PI / static_cast<double>(1L << (k + 1));
      Rotation d = Rotation::from_axis_angle(level_axis(k), step);
      long offset = i + (1L << (k - 1));
      words.push_back({WordKind::Conditional, d});
      words.push_back({WordKind::Unconditional, power(d, -offset)});
      words.insert(words.end(), sub.begin(), sub.end());
      words.push_back({WordKind::Conditional, d.inverse()});
      words.push_back({WordKind::Unconditional, power(d, offset)});
      words.insert(words.end(), sub.begin(), sub.end());
    }
    Program level_program{spec, words};
    checked_witness(level_program, BoolFunc::indicator(spec, i, k),
                    "synth_indicator");
    return words;
  };

  SynthReport r;
  r.program.spectrum = spec;
  r.program.words = build(ind.i, ind.k);
  r.target = BoolFunc::indicator(spec, ind.i, ind.k);
  r.witness = checked_witness(r.program, r.target, "synth_indicator");
  r.conditional_steps = step_count(r.program).conditional;
  r.recursion_depth = ind.k;
  return r;
}

SynthReport synth_xor(const SynthReport& r1, const SynthReport& r2) {
  if (!(r1.program.spectrum == r2.program.spectrum))
    throw std::invalid_argument("synth_xor: spectrum mismatch");
  SynthReport out;
  out.target = r1.target.xored(r2.target);
  out.recursion_depth = std::max(r1.recursion_depth, r2.recursion_depth);
  if (r1.witness.any) {
    out.program = r2.program;
  } else if (r2.witness.any) {
    out.program = r1.program;
  } else {
    Rotation t = align_witness(r2.witness.u, r1.witness.u);
    out.program = concat(r1.program, conjugate_program(r2.program, t));
  }
  out.witness = checked_witness(out.program, out.target, "synth_xor");
  out.conditional_steps = step_count(out.program).conditional;
  return out;
}

SynthReport synth_and(const SynthReport& r1, const SynthReport& r2) {
  if (!(r1.program.spectrum == r2.program.spectrum))
    throw std::invalid_argument("synth_and: spectrum mismatch");
  SynthReport out;
  out.target = r1.target.anded(r2.target);
  out.recursion_depth = std::max(r1.recursion_depth, r2.recursion_depth);
  if (r1.witness.any || r2.witness.any || out.target.is_constant(0)) {
    out.program.spectrum = r1.program.spectrum;
    if (!out.target.is_constant(0))
      throw std::logic_error("synth_and: constant-0 operand, nonzero target");
    out.witness = checked_witness(out.program, out.target, "synth_and");
    return out;
  }
  // Fixed S4 pair: two involutions whose axes are 45 degrees apart, so the
  // commutator u* v* u* v* is a 180-degree rotation about z.
  Rotation u_star = Rotation::about_x(M_PI);
  Rotation v_star = Rotation::from_axis_angle(
      Eigen::Vector3d(1.0, 1.0, 0.0).normalized(), M_PI);
  Program f_prog = conjugate_program(
      r1.program, align_witness(r1.witness.u, u_star));
  Program g_prog = conjugate_program(
      r2.program, align_witness(r2.witness.u, v_star));
  // g, f, g, f: evaluates to u^f v^g u^f v^g = w^{f and g}.
  out.program = concat(concat(g_prog, f_prog), concat(g_prog, f_prog));
  out.witness = checked_witness(out.program, out.target, "synth_and");
  out.conditional_steps = step_count(out.program).conditional;
  return out;
}

SynthReport synth_function(const SpectrumSpec& spec, const BoolFunc& f) {
  std::vector<long> js = spec.distinct();
  if (js.empty() || js.front() < 0)
    throw std::invalid_argument("synth_function: spectrum must be 0-based");
  for (long j : js) f(j);  // domain check

  if (f.is_constant(0)) {
    SynthReport r;
    r.program.spectrum = spec;
    r.target = f;
    r.witness = checked_witness(r.program, r.target, "synth_function");
    return r;
  }

  long n_values = js.back() + 1;
  int k0 = 1;
  while ((1L << k0) < n_values) ++k0;

  std::optional<SynthReport> acc;
  for (long i : js) {
    if (f(i) != 1) continue;
    SynthReport ri = synth_indicator(spec, IndicatorSpec{i, k0});
    acc = acc ? synth_xor(*acc, ri) : ri;
  }
  acc->witness = checked_witness(acc->program, f, "synth_function");
  acc->target = f;
  return *acc;
}

Eigen::Vector3d octagon_vertex(int v) {
  double a = v * M_PI / 4.0;
  return {std::cos(a), std::sin(a), 0.0};
}

Program synth_f32_d8(const SpectrumSpec& spec) {
  Rotation u = Rotation::about_z(M_PI / 4.0);
  // Mirror axis through octagon vertices 1 and 5.
  Rotation v = Rotation::from_axis_angle(octagon_vertex(1), M_PI);
  Program p;
  p.spectrum = spec;
  p.words.push_back({WordKind::Conditional, u});
  p.words.push_back({WordKind::Conditional, v});
  p.words.push_back({WordKind::Conditional, u.inverse()});
  return p;
}

}  // namespace probectl
