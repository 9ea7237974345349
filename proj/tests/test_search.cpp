#include <doctest.h>

#include <cmath>

#include "probectl/search.hpp"
#include "probectl/synthesis.hpp"

using namespace probectl;

TEST_CASE("parity found strictly at length 1") {
  FiniteGroup d8 = build_group(GroupName::D8);
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  auto r = bfs_search(d8, s, BoolFunc::parity(s), SearchMode::Strict, 1);
  REQUIRE(r.has_value());
  CHECK(r->length == 1);
  CHECK(realizes(r->program, BoolFunc::parity(s)).has_value());
}

TEST_CASE("mod-4 indicator found at state level in 3 steps") {
  FiniteGroup d8 = build_group(GroupName::D8);
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  BoolFunc f = BoolFunc::indicator(s, 3, 2);
  auto state = bfs_search(d8, s, f, SearchMode::StateLevel, 3,
                          octagon_vertex(0));
  REQUIRE(state.has_value());
  CHECK(state->length == 3);
  CHECK(measures(state->program, f, octagon_vertex(0)).has_value());

  // Strict realization needs more steps than the state-level word.
  auto strict = bfs_search(d8, s, f, SearchMode::Strict, 4);
  REQUIRE(strict.has_value());
  CHECK(strict->length >= state->length);
  CHECK(realizes(strict->program, f).has_value());
}

TEST_CASE("search miss returns none") {
  FiniteGroup d8 = build_group(GroupName::D8);
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  CHECK(!bfs_search(d8, s, BoolFunc::parity(s), SearchMode::Strict, 0)
             .has_value());
}

TEST_CASE("all period-4 functions are measurable over D8") {
  FiniteGroup d8 = build_group(GroupName::D8);
  SpectrumSpec s = SpectrumSpec::consecutive(8);
  bool some_length_2 = false;
  for (unsigned long mask = 0; mask < 16; ++mask) {
    BoolFunc f = BoolFunc::from_predicate(
        s, [&](long j) { return (mask >> (j % 4)) & 1UL; });
    auto r = bfs_search(d8, s, f, SearchMode::StateLevel, 4,
                        octagon_vertex(0));
    REQUIRE(r.has_value());
    if (r->length == 2) some_length_2 = true;
  }
  CHECK(some_length_2);
}

TEST_CASE("one-step enumeration on consecutive spectra") {
  FiniteGroup d8 = build_group(GroupName::D8);
  OneStepEnumeration e8 = enumerate_onestep(d8, SpectrumSpec::consecutive(8));
  REQUIRE(e8.nonconstant.size() == 1);
  CHECK(e8.nonconstant[0] == BoolFunc::parity(SpectrumSpec::consecutive(8)));
  CHECK(e8.constant_zero);

  OneStepEnumeration e2 = enumerate_onestep(d8, SpectrumSpec::consecutive(2));
  REQUIRE(e2.nonconstant.size() == 1);
  CHECK(e2.nonconstant[0] == BoolFunc::parity(SpectrumSpec::consecutive(2)));
}

TEST_CASE("one-step enumeration on the all-even spectrum") {
  // Eigenvalues {0,2,4,6}: every conditional power is even, so a single word
  // with base v acts as (v^2)^(j/2). Elements whose square has order 2
  // (the 90-degree z-rotations in D8) realize the alternating pattern
  // 0,1,0,1; nothing else is realizable.
  FiniteGroup d8 = build_group(GroupName::D8);
  SpectrumSpec s;
  s.eigenvalues = {0, 2, 4, 6};
  s.n_qubits = 2;
  s.couplings = {2.0, 4.0};
  OneStepEnumeration e = enumerate_onestep(d8, s);
  BoolFunc alternating;
  alternating.table = {{0, 0}, {2, 1}, {4, 0}, {6, 1}};
  REQUIRE(e.nonconstant.size() == 1);
  CHECK(e.nonconstant[0] == alternating);
  CHECK(e.constant_zero);
}

TEST_CASE("octahedral involution pair") {
  FiniteGroup s4 = build_group(GroupName::S4);
  AndPair p = find_and_pair(s4);
  CHECK(is_order_two(p.u));
  CHECK(is_order_two(p.v));
  CHECK(is_order_two(p.w));
  CHECK(approx_equal(p.w, compose(p.u, p.v, p.u, p.v)));

  // The canonical pair from the construction qualifies too.
  Rotation u = Rotation::about_x(M_PI);
  Rotation v =
      Rotation::from_axis_angle(Eigen::Vector3d(1, 1, 0).normalized(), M_PI);
  CHECK(is_order_two(compose(u, v, u, v)));
}

TEST_CASE("generation tests on A5") {
  FiniteGroup a5 = build_group(GroupName::A5);

  GenerationReport diag = verify_generation_pairwise(a5, {0, 0});
  CHECK(!diag.ok);

  GenerationReport two = verify_generation_pairwise(a5, {0, 1});
  CHECK(two.ok);
  CHECK(verify_generation_direct(a5, {0, 1}) == two.ok);

  FiniteGroup s4 = build_group(GroupName::S4);
  CHECK_THROWS_AS(verify_generation_pairwise(s4, {0, 1}),
                  std::invalid_argument);
}
