#include <doctest.h>

#include <cmath>
#include <random>

#include "probectl/json_io.hpp"
#include "probectl/synthesis.hpp"

using namespace probectl;

TEST_CASE("rotation round trip with canonical sign") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 25; ++trial) {
    Rotation r = Rotation::from_quaternion(g(rng), g(rng), g(rng), g(rng));
    Rotation back = rotation_from_json(rotation_to_json(r));
    CHECK(distance(r, back) < 1e-12);
  }
  // Readers re-canonicalize a flipped representative.
  json j = {{"q", {-0.5, -0.5, -0.5, -0.5}}};
  CHECK(rotation_from_json(j).w() == doctest::Approx(0.5));
  CHECK_THROWS_AS(rotation_from_json(json{{"q", {1.0, 0.0}}}),
                  std::invalid_argument);
}

TEST_CASE("program round trip") {
  SpectrumSpec spec = SpectrumSpec::consecutive(8);
  Program p = synth_indicator(spec, {3, 2}).program;
  Program back = program_from_json(program_to_json(p));
  CHECK(back.spectrum == p.spectrum);
  REQUIRE(back.words.size() == p.words.size());
  for (size_t i = 0; i < p.words.size(); ++i) {
    CHECK(back.words[i].kind == p.words[i].kind);
    CHECK(distance(back.words[i].base, p.words[i].base) < 1e-12);
  }
  // The reloaded program still realizes the target.
  CHECK(realizes(back, BoolFunc::indicator(spec, 3, 2)).has_value());
}

TEST_CASE("function specs") {
  FunctionSpec par = function_spec_from_json(
      json{{"builtin", "parity"}, {"n_qubits", 3}});
  CHECK(par.f == BoolFunc::parity(par.spectrum));

  FunctionSpec ind = function_spec_from_json(
      json{{"builtin", "indicator"}, {"i", 3}, {"k", 2}, {"n_qubits", 3}});
  CHECK(ind.f == BoolFunc::indicator(ind.spectrum, 3, 2));

  FunctionSpec tab = function_spec_from_json(
      json{{"couplings", {1.0, 2.0}},
           {"table", {{"0", 0}, {"1", 1}, {"2", 1}, {"3", 0}}}});
  CHECK(tab.f(1) == 1);
  CHECK(tab.f(3) == 0);

  CHECK_THROWS_AS(function_spec_from_json(
                      json{{"couplings", {1.0}}, {"table", {{"7", 1}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(function_spec_from_json(json{{"builtin", "mystery"},
                                               {"n_qubits", 2}}),
                  std::invalid_argument);
}

TEST_CASE("state round trip") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(8);
  for (int i = 0; i < 8; ++i) v(i) = Complex(g(rng), g(rng));
  v.normalize();
  Eigen::VectorXcd back = state_from_json(state_to_json(v, 3));
  CHECK((back - v).norm() < 1e-15);
  json bad = state_to_json(v, 2);
  CHECK_THROWS_AS(state_from_json(bad), std::invalid_argument);
}

TEST_CASE("schedule and basis round trip") {
  PulseSchedule s;
  s.target_coupling = {1.0, -0.5};
  s.segments = {{"P1", 0.25, false}, {"P2", 1.5, true}};
  PulseSchedule back = schedule_from_json(schedule_to_json(s));
  CHECK(back.target_coupling == s.target_coupling);
  REQUIRE(back.segments.size() == 2);
  CHECK(back.segments[1].position == "P2");
  CHECK(back.segments[1].sign_flip);

  CouplingBasis b;
  b.position_labels = {"P1", "P2"};
  b.vectors.resize(2, 2);
  b.vectors << 1, 2, 3, 4;
  CouplingBasis bb = basis_from_json(basis_to_json(b));
  CHECK(bb.position_labels == b.position_labels);
  CHECK((bb.vectors - b.vectors).norm() < 1e-15);

  CHECK_THROWS_AS(
      basis_from_json(json{{"positions", {"P1"}}, {"vectors", json::array()}}),
      std::invalid_argument);
}

TEST_CASE("file errors carry the path") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"),
                  std::invalid_argument);
}
