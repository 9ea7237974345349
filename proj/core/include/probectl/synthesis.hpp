#pragma once

#include "probectl/control_ir.hpp"

namespace probectl {

// f_{i;k}(j) = 1 iff j = i (mod 2^k).
struct IndicatorSpec {
  long i = 0;
  int k = 1;
};

struct SynthReport {
  Program program;
  BoolFunc target;
  Witness witness;
  int conditional_steps = 0;
  int recursion_depth = 0;
};

// Single conditional 180-degree word; realizes j -> j mod 2.
SynthReport synth_parity(const SpectrumSpec& spec);

// Recursive indicator construction. k = 1 is the even/odd base case; level
// k+1 wraps two copies of level k between conditional d-words, where d is a
// rotation by 2*pi/2^{k+2} about an axis orthogonal to the current witness
// axis. Throws std::invalid_argument on (i, k) out of range (k in [1, 20],
// 0 <= i < 2^k).
SynthReport synth_indicator(const SpectrumSpec& spec, const IndicatorSpec& ind);

// Concatenation after witness alignment; realizes f1 xor f2.
SynthReport synth_xor(const SynthReport& r1, const SynthReport& r2);

// Four-block u,v,u,v commutator construction over the octahedral group;
// realizes f1 and f2 with the order-2 witness w = u* v* u* v*.
SynthReport synth_and(const SynthReport& r1, const SynthReport& r2);

// XOR of indicators f_{i;k0} over all i with f(i) = 1, with 2^{k0} >= N.
SynthReport synth_function(const SpectrumSpec& spec, const BoolFunc& f);

// The explicit 3-word octagon procedure for f_{3;2} (valid mod 8): state-level
// measurement only, strict realization fails by design.
Program synth_f32_d8(const SpectrumSpec& spec);

// Octagon vertex positions used by the procedure above: vertex v at angle
// v * 45 degrees in the (x, y) plane.
Eigen::Vector3d octagon_vertex(int v);

// Deterministic shortest-angle conjugator t with t o src o t^-1 = dst for
// order-2 rotations src, dst (maps the src axis onto the dst axis).
Rotation align_witness(const Rotation& src, const Rotation& dst);

}  // namespace probectl
