#include <doctest.h>

#include <cmath>

#include "probectl/compiler.hpp"

using namespace probectl;

namespace {

double fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

}  // namespace

TEST_CASE("diagonal gate with zero relative phase is the identity") {
  SpectrumSpec spec = SpectrumSpec::from_couplings({1.0, 2.0});
  BoolFunc f = boolfunc_from_bits(
      spec, [](long bits) { return (bits & 3L) == 3L; });
  GateProtocol p = compile_diagonal(f, 0.0, spec);
  double res = 0.0;
  Eigen::MatrixXcd u = simulate_protocol(p, &res);
  CHECK(res < 1e-9);
  CHECK(fidelity(Eigen::MatrixXcd::Identity(4, 4), u) >= 1.0 - 1e-9);
}

TEST_CASE("controlled phase hits the requested relative phase") {
  SpectrumSpec spec = SpectrumSpec::from_couplings({1.0, 2.0});
  for (double phi : {M_PI, M_PI / 3, -M_PI / 2}) {
    GateProtocol p = compile_controlled_phase({0, 1}, phi, spec);
    Eigen::MatrixXcd u = simulate_protocol(p);
    Complex rel = u(3, 3) / u(0, 0);
    // Compare on the circle: arg() returns -pi where phi may be +pi.
    CHECK(std::abs(rel - std::exp(Complex(0.0, 1.0) * phi)) < 1e-9);
    CHECK(std::abs(u(1, 1) / u(0, 0) - 1.0) < 1e-9);
    CHECK(std::abs(u(2, 2) / u(0, 0) - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(compile_controlled_phase({0}, M_PI, spec),
                  std::invalid_argument);
  CHECK_THROWS_AS(compile_controlled_phase({0, 5}, M_PI, spec),
                  std::invalid_argument);
}

TEST_CASE("all-qubit controlled phase on three qubits") {
  SpectrumSpec spec = SpectrumSpec::from_couplings({1.0, 2.0, 4.0});
  GateProtocol p = compile_controlled_phase({0, 1, 2}, M_PI, spec);
  Eigen::MatrixXcd u = simulate_protocol(p);
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Identity(8, 8);
  want(7, 7) = -1.0;
  CHECK(fidelity(want, u) >= 1.0 - 1e-9);
}

TEST_CASE("local rotations") {
  SpectrumSpec spec = SpectrumSpec::from_couplings({1.0, 2.0});
  GateProtocol pz = compile_local_rotation(0, 'z', 1.1, spec);
  Eigen::MatrixXcd uz = simulate_protocol(pz);
  // exp(-i theta sigma_z/2) on qubit 0, up to global phase.
  Complex rel = uz(1, 1) / uz(0, 0);
  CHECK(std::abs(std::arg(rel) - 1.1) < 1e-9);

  GateProtocol p0 = compile_local_rotation(1, 'x', 0.0, spec);
  CHECK(fidelity(Eigen::MatrixXcd::Identity(4, 4), simulate_protocol(p0)) >=
        1.0 - 1e-9);

  GateProtocol px = compile_local_rotation(1, 'x', 0.8, spec);
  Eigen::MatrixXcd ux = simulate_protocol(px);
  Eigen::Matrix2cd rx;
  rx << std::cos(0.4), Complex(0, -std::sin(0.4)), Complex(0, -std::sin(0.4)),
      std::cos(0.4);
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
  for (int b0 = 0; b0 < 2; ++b0)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) want(2 * i + b0, 2 * j + b0) = rx(i, j);
  CHECK(fidelity(want, ux) >= 1.0 - 1e-9);
}

TEST_CASE("spectrum rescaling") {
  RescaleResult r = rescale_spectrum({0.0, 1.0 / 3.0, 0.5}, 1e-9);
  CHECK(r.time_scale == 6);
  CHECK(r.integers == std::vector<long long>{0, 2, 3});

  RescaleResult ints = rescale_spectrum({0.0, 2.0, 5.0}, 1e-9);
  CHECK(ints.time_scale == 1);
  CHECK(ints.integers == std::vector<long long>{0, 2, 5});

  RescaleResult approx = rescale_spectrum({0.0, 0.3333333, 0.5}, 1e-6);
  CHECK(approx.time_scale == 6);
  CHECK(approx.integers == std::vector<long long>{0, 2, 3});

  CHECK_THROWS_AS(rescale_spectrum({M_PI}, 1e-15, 10), std::runtime_error);
}

TEST_CASE("couplings from geometry") {
  std::vector<Eigen::Vector3d> nuclei = {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}};
  Eigen::Vector3d e(0, 0, 0);
  std::vector<double> c = coupling_from_geometry(nuclei, e);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(1.0 / 8.0));
  CHECK(c[2] == doctest::Approx(1.0 / 27.0));

  std::vector<Eigen::Vector3d> doubled;
  for (const auto& p : nuclei) doubled.push_back(2 * p);
  std::vector<double> c2 = coupling_from_geometry(doubled, e);
  for (size_t i = 0; i < c.size(); ++i)
    CHECK(c2[i] == doctest::Approx(c[i] / 8.0));

  std::vector<Eigen::Vector3d> equi = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<double> ce = coupling_from_geometry(equi, e);
  CHECK(ce[0] == doctest::Approx(ce[1]));
  CHECK(ce[1] == doctest::Approx(ce[2]));

  CHECK_THROWS_AS(coupling_from_geometry({{0, 0, 0}}, e),
                  std::invalid_argument);
}

TEST_CASE("schedule solving") {
  CouplingBasis basis;
  basis.position_labels = {"P1", "P2"};
  basis.vectors.resize(2, 2);
  basis.vectors << 1, 0, 0, 1;

  PulseSchedule s = solve_schedule({1.0, 2.0}, basis);
  REQUIRE(s.segments.size() == 2);
  CHECK(s.segments[0].position == "P1");
  CHECK(s.segments[0].duration == doctest::Approx(1.0));
  CHECK(!s.segments[0].sign_flip);
  CHECK(s.segments[1].duration == doctest::Approx(2.0));

  PulseSchedule neg = solve_schedule({1.0, -1.0}, basis);
  CHECK(!neg.segments[0].sign_flip);
  CHECK(neg.segments[1].sign_flip);

  CHECK(schedule_to_operator_error(s, basis) < 1e-12);
  CHECK(schedule_to_operator_error(neg, basis) < 1e-12);

  PulseSchedule empty;
  empty.target_coupling = {0.0, 0.0};
  CHECK(schedule_to_operator_error(empty, basis) < 1e-12);

  CouplingBasis singular;
  singular.position_labels = {"P1", "P2"};
  singular.vectors.resize(2, 2);
  singular.vectors << 1, 1, 1, 1;
  CHECK_THROWS_AS(solve_schedule({1.0, 2.0}, singular), std::runtime_error);
}

TEST_CASE("two-qubit effective coupling schedule") {
  // Target (...,1,...,2,...) from generic position rows.
  CouplingBasis basis;
  basis.position_labels = {"P1", "P2", "P3"};
  basis.vectors.resize(3, 3);
  basis.vectors << 1.0, 0.5, 0.25, 0.3, 1.1, 0.2, 0.1, 0.4, 0.9;
  std::vector<double> target = {0.0, 1.0, 2.0};
  PulseSchedule s = solve_schedule(target, basis);
  CHECK(schedule_to_operator_error(s, basis) < 1e-12);
}

TEST_CASE("cost comparison") {
  CostComparison c3 = two_qubit_gate_cost(3, 0, 1);
  CHECK(c3.movable_positions == 2);
  CHECK(c3.movable_conditional_steps == 4);
  CostComparison c4 = two_qubit_gate_cost(4, 0, 1);
  CHECK(c4.movable_conditional_steps == 4);
  CHECK(c4.fixed_conditional_steps > c3.fixed_conditional_steps);
  CHECK_THROWS_AS(two_qubit_gate_cost(3, 1, 1), std::invalid_argument);
}

TEST_CASE("bit predicate lifting") {
  SpectrumSpec spec = SpectrumSpec::from_couplings({1.0, 2.0});
  BoolFunc f = boolfunc_from_bits(spec, [](long bits) { return bits == 0; });
  // Basis state 0 carries the largest eigenvalue for positive couplings.
  CHECK(f(3) == 1);
  CHECK(f(0) == 0);

  SpectrumSpec deg = SpectrumSpec::from_couplings({1.0, 1.0});
  CHECK_THROWS_AS(
      boolfunc_from_bits(deg, [](long bits) { return bits == 0; }),
      std::invalid_argument);
}
