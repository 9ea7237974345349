#pragma once

#include <optional>

#include "probectl/control_ir.hpp"
#include "probectl/group.hpp"

namespace probectl {

enum class SearchMode { Strict, StateLevel };

struct SearchResult {
  Program program;  // words restricted to group elements
  int length = 0;   // conditional words only; unconditional moves are free
  long explored = 0;
  Witness witness;                           // Strict mode
  std::optional<Eigen::Vector3d> outcome_axis;  // StateLevel mode
};

// Shortest word over {Unconditional(g)} u {Conditional(g)} for g in G whose
// tuple evaluation satisfies the mode's predicate. Only conditional words
// count toward `length`. Deterministic tie-break by generator index order.
// StateLevel mode requires s0.
std::optional<SearchResult> bfs_search(
    const FiniteGroup& g, const SpectrumSpec& spec, const BoolFunc& target,
    SearchMode mode, int max_len,
    std::optional<Eigen::Vector3d> s0 = std::nullopt);

struct OneStepEnumeration {
  std::vector<BoolFunc> nonconstant;
  bool constant_zero = false;  // realizable with the empty-witness convention
};

// Every BoolFunc realizable by a single conditional word with an order-2
// witness; for a spectrum of consecutive integers this is exactly {parity}.
OneStepEnumeration enumerate_onestep(const FiniteGroup& g,
                                     const SpectrumSpec& spec);

struct AndPair {
  Rotation u, v, w;  // w = u v u v, order 2
  int u_index = 0, v_index = 0;
};

// Brute-force over involution pairs of S4; first found by table index.
// Throws std::logic_error if no pair exists (broken table).
AndPair find_and_pair(const FiniteGroup& s4);

struct PairReport {
  int i = 0, j = 0;
  bool surjective = false;
  long reached = 0;
};

struct GenerationReport {
  bool ok = false;
  std::vector<PairReport> pairs;
  std::vector<bool> single_ok;
};

// Pairwise-projection generation test: for every coordinate pair (i, j), the
// subgroup of G x G generated by {(g, g)} u {(g^{e_i}, g^{e_j})} must be all
// of G x G. For subdirect products of a nonabelian simple group this is
// equivalent to full generation of G^m, which is why only A5 is accepted.
GenerationReport verify_generation_pairwise(const FiniteGroup& g,
                                            const std::vector<long>& exponents);

// Direct closure in G^m (m <= 3) as a cross-check of the pairwise criterion.
bool verify_generation_direct(const FiniteGroup& g,
                              const std::vector<long>& exponents);

}  // namespace probectl
