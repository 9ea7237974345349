#pragma once

#include <map>
#include <optional>
#include <vector>

#include "probectl/rotation.hpp"

namespace probectl {

// Integer eigenvalue list of S_z (after normalization) together with the
// physical coupling vector that produced it. Duplicates are permitted for
// degenerate couplings (e.g. all-equal couplings give the Hamming-weight
// spectrum with multiplicity).
struct SpectrumSpec {
  std::vector<long> eigenvalues;  // sorted ascending
  int n_qubits = 0;
  std::vector<double> couplings;

  // Sorted list with duplicates removed.
  std::vector<long> distinct() const;
  bool contains(long j) const;
  // Eigenvalues 0..N-1 for an N-point spectrum (couplings 2^j by default).
  static SpectrumSpec consecutive(long n_values);
  static SpectrumSpec from_couplings(const std::vector<double>& couplings);

  bool operator==(const SpectrumSpec& o) const {
    return eigenvalues == o.eigenvalues;
  }
};

// Affine fit of real values onto a non-negative integer lattice:
// value = offset + gap * integer, offset = min(values). Throws
// std::invalid_argument if the values are not commensurate within tol.
struct LatticeFit {
  double offset = 0.0;
  double gap = 1.0;
  std::vector<long> integers;  // in input order
};
LatticeFit integer_lattice_fit(const std::vector<double>& values,
                               double tol = 1e-9);

enum class WordKind { Unconditional, Conditional };

// One step of a control program. Unconditional words act as (g, g, ..., g);
// conditional words act as (v^0, v^1, ..., v^{N-1}) indexed by the register
// eigenvalue.
struct ControlWord {
  WordKind kind = WordKind::Unconditional;
  Rotation base;
};

// Ordered word list, applied first-to-last (index 0 first).
struct Program {
  SpectrumSpec spectrum;
  std::vector<ControlWord> words;
};

// Two-valued function on the spectrum.
struct BoolFunc {
  std::map<long, int> table;

  int operator()(long j) const;
  bool is_constant(int value) const;

  static BoolFunc constant(const SpectrumSpec& spec, int value);
  static BoolFunc parity(const SpectrumSpec& spec);
  // 1 iff j = i (mod 2^k).
  static BoolFunc indicator(const SpectrumSpec& spec, long i, int k);
  static BoolFunc point(const SpectrumSpec& spec, long i);
  template <typename Fn>
  static BoolFunc from_predicate(const SpectrumSpec& spec, Fn&& fn) {
    BoolFunc f;
    for (long j : spec.distinct()) f.table[j] = fn(j) ? 1 : 0;
    return f;
  }

  BoolFunc xored(const BoolFunc& other) const;
  BoolFunc anded(const BoolFunc& other) const;
  bool operator==(const BoolFunc& o) const { return table == o.table; }
  bool operator<(const BoolFunc& o) const { return table < o.table; }
};

// Witness of a strict realization: the common order-2 rotation u such that the
// program evaluates to u^{f(j)}. A constant-0 function is realized by any
// order-2 rotation; that case is flagged with `any`.
struct Witness {
  bool any = false;
  Rotation u;
};

Rotation eval_word(const ControlWord& w, long j);
// Right-to-left product over words (last word outermost). Throws
// std::out_of_range if j is not in the spectrum.
Rotation eval_program(const Program& p, long j);

// Words of p1 followed by words of p2. Throws std::invalid_argument on a
// spectrum mismatch.
Program concat(const Program& p1, const Program& p2);

// Replace every word base b by t o b o t^-1; a realized witness u moves to
// t o u o t^-1.
Program conjugate_program(const Program& p, const Rotation& t);

// Strict realization predicate of a measurement program.
std::optional<Witness> realizes(const Program& p, const BoolFunc& f,
                                double tol = kDefaultTol);

// State-level predicate: returns the outcome axis a iff the program maps s0 to
// a common point a on every f=0 eigenvalue and to -a on every f=1 eigenvalue.
std::optional<Eigen::Vector3d> measures(const Program& p, const BoolFunc& f,
                                        const Eigen::Vector3d& s0,
                                        double tol = kDefaultTol);

struct StepCount {
  int conditional = 0;
  int unconditional = 0;
};
StepCount step_count(const Program& p);

}  // namespace probectl
